//! Clifford algebras and spin representations for the orthogonal
//! factors.
//!
//! Euclidean generators Γ₁,…,Γ_m are built by the Pauli recursion on a
//! module of dimension 2^⌊m/2⌋; they are Hermitian, square to +1 and
//! anticommute.  For signature (p, 2) the two timelike directions take
//! the first two recursion slots (γ = iΓ), so that the compact
//! rotation generator in the timelike plane — whose image is the spin
//! H-element — is diagonal.

use crate::linalg::{Mat, Scalar};

fn pauli<S: Scalar>() -> [Mat<S>; 3] {
    let one = S::one();
    let i = S::i();
    let mut s1 = Mat::zeros(2, 2);
    s1.set(0, 1, one.clone());
    s1.set(1, 0, one.clone());
    let mut s2 = Mat::zeros(2, 2);
    s2.set(0, 1, i.clone().neg());
    s2.set(1, 0, i.clone());
    let mut s3 = Mat::zeros(2, 2);
    s3.set(0, 0, one.clone());
    s3.set(1, 1, one.neg());
    [s1, s2, s3]
}

/// Hermitian anticommuting generators with Γ² = +1 on ℂ^{2^⌊m/2⌋}.
pub fn euclidean_gammas<S: Scalar>(m: usize) -> Vec<Mat<S>> {
    assert!(m >= 1);
    let [s1, s2, s3] = pauli::<S>();
    if m == 1 {
        let mut g = Mat::zeros(1, 1);
        g.set(0, 0, S::one());
        return vec![g];
    }
    if m == 2 {
        return vec![s1, s2];
    }
    let inner = euclidean_gammas::<S>(m - 2);
    let half = inner[0].rows();
    let id = Mat::identity(half);
    let mut out = vec![s1.kron(&id), s2.kron(&id)];
    for g in &inner {
        out.push(s3.kron(g));
    }
    out
}

/// Generators for signature (p, 2): vector index order is spacelike
/// 0..p, then the two timelike indices p, p+1.  Timelike generators
/// square to −1.
pub fn lorentz_gammas<S: Scalar>(p: usize) -> Vec<Mat<S>> {
    let m = p + 2;
    let eu = euclidean_gammas::<S>(m);
    let i = S::i();
    let mut out = Vec::with_capacity(m);
    for a in 0..p {
        out.push(eu[a + 2].clone());
    }
    out.push(eu[0].map(|v| v.clone().mul(i.clone())));
    out.push(eu[1].map(|v| v.clone().mul(i.clone())));
    out
}

/// ω_ab = ½ γ_a γ_b for a < b, listed in the order matching the
/// vector-representation basis of the orthogonal algebra.
pub fn spin_generators<S: Scalar>(gammas: &[Mat<S>]) -> Vec<Mat<S>> {
    let half = S::from_ratio(1, 2);
    let mut out = Vec::new();
    for a in 0..gammas.len() {
        for b in a + 1..gammas.len() {
            out.push((&gammas[a] * &gammas[b]).scale(&half));
        }
    }
    out
}

/// The normalized chirality element: the product of all generators,
/// scaled so it is diagonal ±1 with entry +1 at index 0.  Defined for
/// even m (the product is automatically diagonal in the Pauli basis).
pub fn chirality<S: Scalar>(gammas: &[Mat<S>]) -> Mat<S> {
    let n = gammas[0].rows();
    let mut prod = Mat::identity(n);
    for g in gammas {
        prod = &prod * g;
    }
    for r in 0..n {
        for c in 0..n {
            if r != c {
                assert!(
                    prod.at(r, c).is_zero(),
                    "chirality element is not diagonal"
                );
            }
        }
    }
    let lead = prod.at(0, 0).clone();
    assert!(!lead.is_zero());
    // Normalize: divide by the leading entry.  All diagonal entries
    // are ±lead with lead ∈ {±1, ±i}, so conj(lead) is the inverse and
    // the result is diagonal ±1 with +1 first.
    let lead_conj = lead.conj();
    let mut out = Mat::zeros(n, n);
    for r in 0..n {
        out.set(r, r, prod.at(r, r).clone().mul(lead_conj.clone()));
    }
    out
}

/// Diagonal entries of a diagonal ±1 matrix as signs.
pub fn diagonal_signs<S: Scalar>(m: &Mat<S>) -> Vec<i8> {
    let one = S::one();
    (0..m.rows())
        .map(|r| {
            let v = m.at(r, r).clone();
            if v.clone().sub(one.clone()).is_negligible(1e-9) {
                1
            } else if v.add(one.clone()).is_negligible(1e-9) {
                -1
            } else {
                panic!("entry is not ±1");
            }
        })
        .collect()
}

//! Realification of a complex module with an invariant Hermitian form
//! of signature (d₊, d₋) into a symplectic module of real dimension 2d.
//!
//! Coordinates are "complexified real" coordinates: the real module V
//! with complex structure J₀ is described inside V ⊗ ℂ, ordered as the
//! +i eigenspace of J₀ followed by the −i eigenspace.  For an operator
//! X on W = W₊ ⊕ W₋ (form-positive part first) with blocks
//! X = [[X₁₁, X₁₂], [X₂₁, X₂₂]], the realified operator acts on
//! (conj W₋, W₊ | W₋, conj W₊) as
//!
//! ```text
//! ⎡ conj X₂₂     0        0     conj X₂₁ ⎤
//! ⎢    0       X₁₁      X₁₂        0     ⎥
//! ⎢    0       X₂₁      X₂₂        0     ⎥
//! ⎣ conj X₁₂     0        0     conj X₁₁ ⎦
//! ```
//!
//! and preserves E₀ = [[0, iI], [−iI, 0]] iff X is in the unitary
//! algebra of diag(I₊, −I₋).  The change to real coordinates is
//! x = T v with T = [[I, iI], [I, −iI]].

use crate::linalg::{Mat, Scalar};

/// Symplectic target data for one realified leg.
#[derive(Clone, Debug)]
pub struct SymplecticTarget<S: Scalar> {
    /// Real dimension 2d.
    pub dim: usize,
    /// Alternating form in the stored coordinates.
    pub e0: Mat<S>,
    /// Complex structure in the stored coordinates.
    pub j0: Mat<S>,
    /// Coordinate change x = T v to real coordinates, with its inverse;
    /// `None` when the stored coordinates are already real.
    pub change: Option<(Mat<S>, Mat<S>)>,
}

impl<S: Scalar> SymplecticTarget<S> {
    /// The H-element of the Siegel domain point J₀.
    pub fn h_prime(&self) -> Mat<S> {
        self.j0.scale(&S::from_ratio(1, 2))
    }

    /// Transport an operator to real coordinates: T⁻¹ X T.
    pub fn operator_in_real_coords(&self, x: &Mat<S>) -> Mat<S> {
        match &self.change {
            Some((t, t_inv)) => &(t_inv * x) * t,
            None => x.clone(),
        }
    }

    /// The alternating form in real coordinates: E(v, w) = ᵗ(Tv) E₀ (Tw).
    pub fn e_in_real_coords(&self) -> Mat<S> {
        match &self.change {
            Some((t, _)) => &(&t.transpose() * &self.e0) * t,
            None => self.e0.clone(),
        }
    }

    pub fn j_in_real_coords(&self) -> Mat<S> {
        self.operator_in_real_coords(&self.j0)
    }
}

/// Target in complexified coordinates for a realified d-dimensional
/// complex module.
pub fn complex_coordinate_target<S: Scalar>(d: usize) -> SymplecticTarget<S> {
    let one = S::one();
    let i = S::i();
    let mi = i.clone().neg();
    let n = 2 * d;
    let mut e0 = Mat::zeros(n, n);
    let mut j0 = Mat::zeros(n, n);
    let mut t = Mat::zeros(n, n);
    let mut t_inv = Mat::zeros(n, n);
    let half = S::from_ratio(1, 2);
    let half_i = half.clone().mul(i.clone());
    for k in 0..d {
        e0.set(k, d + k, i.clone());
        e0.set(d + k, k, mi.clone());
        j0.set(k, k, i.clone());
        j0.set(d + k, d + k, mi.clone());
        t.set(k, k, one.clone());
        t.set(k, d + k, i.clone());
        t.set(d + k, k, one.clone());
        t.set(d + k, d + k, mi.clone());
        t_inv.set(k, k, half.clone());
        t_inv.set(k, d + k, half.clone());
        t_inv.set(d + k, k, half_i.clone().neg());
        t_inv.set(d + k, d + k, half_i.clone());
    }
    SymplecticTarget {
        dim: n,
        e0,
        j0,
        change: Some((t, t_inv)),
    }
}

/// Target in native real coordinates (used by the type III standard
/// module, which is already a real symplectic module).
pub fn real_coordinate_target<S: Scalar>(n_half: usize) -> SymplecticTarget<S> {
    let one = S::one();
    let n = 2 * n_half;
    let mut e0 = Mat::zeros(n, n);
    let mut j0 = Mat::zeros(n, n);
    for k in 0..n_half {
        e0.set(k, n_half + k, one.clone());
        e0.set(n_half + k, k, one.clone().neg());
        j0.set(k, n_half + k, one.clone().neg());
        j0.set(n_half + k, k, one.clone());
    }
    SymplecticTarget {
        dim: n,
        e0,
        j0,
        change: None,
    }
}

/// Realify one operator: `x` acts on a d-dimensional complex module
/// whose invariant Hermitian form is diag(I_{d₊}, −I_{d−}).
pub fn realify_operator<S: Scalar>(x: &Mat<S>, d_plus: usize) -> Mat<S> {
    assert!(x.is_square());
    let d = x.rows();
    assert!(d_plus <= d);
    let dp = d_plus;
    let dm = d - dp;
    let x11 = x.block(0, 0, dp, dp);
    let x12 = x.block(0, dp, dp, dm);
    let x21 = x.block(dp, 0, dm, dp);
    let x22 = x.block(dp, dp, dm, dm);
    let mut out = Mat::zeros(2 * d, 2 * d);
    // Row/column blocks: conj W₋ at 0, W₊ at dm, W₋ at d, conj W₊ at d+dm.
    out.set_block(0, 0, &x22.conj());
    out.set_block(0, d + dm, &x21.conj());
    out.set_block(dm, dm, &x11);
    out.set_block(dm, d, &x12);
    out.set_block(d, dm, &x21);
    out.set_block(d, d, &x22);
    out.set_block(d + dm, 0, &x12.conj());
    out.set_block(d + dm, d + dm, &x11.conj());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    fn su21_element() -> Mat<C64> {
        // An element of su(2,1) w.r.t. diag(1,1,−1): blocks X₁₁ 2×2
        // anti-Hermitian, X₂₂ 1×1 imaginary, X₂₁ = conj ᵗX₁₂.
        let i = C64::new(0.0, 1.0);
        Mat::from_rows(vec![
            vec![i * 2.0, C64::new(1.0, 3.0), C64::new(0.5, -0.25)],
            vec![C64::new(-1.0, 3.0), -i, C64::new(2.0, 1.0)],
            vec![C64::new(0.5, 0.25), C64::new(2.0, -1.0), -i],
        ])
    }

    #[test]
    fn realified_operator_preserves_the_alternating_form() {
        let x = su21_element();
        let r = realify_operator(&x, 2);
        let t: SymplecticTarget<C64> = complex_coordinate_target(3);
        let resid = &(&r.transpose() * &t.e0) + &(&t.e0 * &r);
        assert!(resid.max_abs() < 1e-12, "residual {}", resid.max_abs());
    }

    #[test]
    fn realification_is_a_homomorphism_on_the_unitary_algebra() {
        let x = su21_element();
        let i = C64::new(0.0, 1.0);
        let y = Mat::from_rows(vec![
            vec![-i, C64::new(0.0, 2.0), C64::new(1.0, 1.0)],
            vec![C64::new(0.0, 2.0), i * 3.0, C64::new(-1.0, 2.0)],
            vec![C64::new(1.0, -1.0), C64::new(-1.0, -2.0), -i * 2.0],
        ]);
        let lhs = realify_operator(&x.commutator(&y), 2);
        let rhs = realify_operator(&x, 2).commutator(&realify_operator(&y, 2));
        assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn real_coordinates_are_real_and_match_forms() {
        let x = su21_element();
        let r = realify_operator(&x, 2);
        let t: SymplecticTarget<C64> = complex_coordinate_target(3);
        let real = t.operator_in_real_coords(&r);
        let max_im = real
            .as_slice()
            .iter()
            .map(|c| c.im.abs())
            .fold(0.0f64, f64::max);
        assert!(max_im < 1e-12);
        // E in real coordinates: [[0, 2I], [−2I, 0]].
        let er = t.e_in_real_coords();
        for a in 0..3 {
            assert_eq!(er.at(a, 3 + a).re, 2.0);
            assert_eq!(er.at(3 + a, a).re, -2.0);
        }
        // J in real coordinates: [[0, −I], [I, 0]].
        let jr = t.j_in_real_coords();
        assert!((jr.at(0, 3).re + 1.0).abs() < 1e-14);
        assert!((jr.at(3, 0).re - 1.0).abs() < 1e-14);
        // J² = −I in the stored coordinates.
        let j2 = &t.j0 * &t.j0;
        assert!(j2.approx_eq(&Mat::identity(6).scale(&C64::new(-1.0, 0.0)), 1e-14));
    }

    #[test]
    fn positive_definiteness_of_e_j_pairing() {
        // E₀(x, J₀ x) for real vectors x = (a, conj a) equals 2Σ|aⱼ|².
        let t: SymplecticTarget<C64> = complex_coordinate_target(2);
        let s = &t.e0 * &t.j0;
        // Should be [[0, I], [I, 0]] (symmetric, positive on real vectors).
        assert_eq!(s.at(0, 2).re, 1.0);
        assert_eq!(s.at(2, 0).re, 1.0);
        assert_eq!(s.at(0, 0).re, 0.0);
    }
}

//! Concrete bases for the real simple Lie algebras underlying each
//! admissible factor, together with their H-elements.
//!
//! Every algebra is presented by matrices acting on its defining
//! module, with a basis split into compact part 𝔨 and noncompact part
//! 𝔭.  Noncompact algebras carry the distinguished central element
//! H₀ ∈ Z(𝔨) whose adjoint action on 𝔭 is the invariant complex
//! structure of the symmetric domain.

use crate::linalg::{Mat, Scalar};

/// A real Lie algebra of matrices with a chosen basis.
#[derive(Clone, Debug)]
pub struct LieAlgebra<S: Scalar> {
    /// Human-readable name for diagnostics, e.g. "su(2,1)".
    pub name: String,
    /// Dimension of the module the basis matrices act on.
    pub module_dim: usize,
    /// Basis of the real form (complex matrix entries allowed).
    pub basis: Vec<Mat<S>>,
    /// `true` for basis elements lying in the maximal compact subalgebra.
    pub compact: Vec<bool>,
    /// H-element, present iff the algebra is noncompact.
    pub h0: Option<Mat<S>>,
    /// Diagonal ±1 entries of the invariant Hermitian form on the
    /// defining module, positives first (all +1 for compact forms).
    pub form_signature: (usize, usize),
}

impl<S: Scalar> LieAlgebra<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Indices of the compact basis elements.
    pub fn compact_indices(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&t| self.compact[t]).collect()
    }
}

fn e_mat<S: Scalar>(n: usize, r: usize, c: usize, v: S) -> Mat<S> {
    let mut m = Mat::zeros(n, n);
    m.set(r, c, v);
    m
}

/// su(p, q) preserving diag(I_p, −I_q): traceless anti-Hermitian w.r.t.
/// the form.  For q = 0 this is the compact su(n).
///
/// H₀ = diag((q/n) i I_p, −(p/n) i I_q) for q ≥ 1.
pub fn su_pq<S: Scalar>(p: usize, q: usize) -> LieAlgebra<S> {
    let n = p + q;
    assert!(n >= 2, "su(p,q) needs p+q >= 2");
    let i = S::i();
    let mut basis = Vec::new();
    let mut compact = Vec::new();
    // Diagonal: i(E_jj − E_{j+1,j+1}) for j = 0..n−2 (all compact).
    for j in 0..n - 1 {
        let mut m = Mat::zeros(n, n);
        m.set(j, j, i.clone());
        m.set(j + 1, j + 1, i.clone().neg());
        basis.push(m);
        compact.push(true);
    }
    let same_block = |a: usize, b: usize| (a < p) == (b < p);
    for j in 0..n {
        for k in j + 1..n {
            if same_block(j, k) {
                // A = E_jk − E_kj and B = i(E_jk + E_kj): compact.
                let mut a = e_mat(n, j, k, S::one());
                a.set(k, j, S::one().neg());
                basis.push(a);
                compact.push(true);
                let mut b = e_mat(n, j, k, i.clone());
                b.set(k, j, i.clone());
                basis.push(b);
                compact.push(true);
            } else {
                // P = E_jk + E_kj and Q = i(E_jk − E_kj): noncompact.
                let mut pm = e_mat(n, j, k, S::one());
                pm.set(k, j, S::one());
                basis.push(pm);
                compact.push(false);
                let mut qm = e_mat(n, j, k, i.clone());
                qm.set(k, j, i.clone().neg());
                basis.push(qm);
                compact.push(false);
            }
        }
    }
    debug_assert_eq!(basis.len(), n * n - 1);
    let h0 = if q > 0 {
        let mut h = Mat::zeros(n, n);
        let pos = S::from_ratio(q as i64, n as i64).mul(i.clone());
        let negv = S::from_ratio(-(p as i64), n as i64).mul(i.clone());
        for j in 0..p {
            h.set(j, j, pos.clone());
        }
        for j in p..n {
            h.set(j, j, negv.clone());
        }
        Some(h)
    } else {
        None
    };
    LieAlgebra {
        name: if q == 0 {
            format!("su({n})")
        } else {
            format!("su({p},{q})")
        },
        module_dim: n,
        basis,
        compact,
        h0,
        form_signature: (p, q),
    }
}

/// so*(2n): quaternionic orthogonal algebra in the gauge where the
/// preserved symmetric form is S = [[0, I], [I, 0]] and the preserved
/// Hermitian form is K = diag(I_n, −I_n).  Elements have the shape
/// [[X₁, B], [−conj B, −ᵗX₁]] with X₁ ∈ u(n) and B antisymmetric.
///
/// H₀ = diag((i/2) I_n, −(i/2) I_n).
pub fn so_star<S: Scalar>(n: usize) -> LieAlgebra<S> {
    assert!(n >= 2, "so*(2n) needs n >= 2");
    let i = S::i();
    let d = 2 * n;
    let mut basis = Vec::new();
    let mut compact = Vec::new();
    // u(n) part (compact): X ↦ diag(X, −ᵗX).
    let embed_k = |x: &Mat<S>| -> Mat<S> {
        let mut m = Mat::zeros(d, d);
        m.set_block(0, 0, x);
        m.set_block(n, n, &x.transpose().neg_mat());
        m
    };
    for j in 0..n {
        basis.push(embed_k(&e_mat(n, j, j, i.clone())));
        compact.push(true);
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut a = e_mat(n, j, k, S::one());
            a.set(k, j, S::one().neg());
            basis.push(embed_k(&a));
            compact.push(true);
            let mut b = e_mat(n, j, k, i.clone());
            b.set(k, j, i.clone());
            basis.push(embed_k(&b));
            compact.push(true);
        }
    }
    // Antisymmetric part (noncompact): B ↦ [[0, B], [−conj B, 0]].
    let embed_p = |b: &Mat<S>| -> Mat<S> {
        let mut m = Mat::zeros(d, d);
        m.set_block(0, n, b);
        m.set_block(n, 0, &b.conj().neg_mat());
        m
    };
    for j in 0..n {
        for k in j + 1..n {
            let mut c = e_mat(n, j, k, S::one());
            c.set(k, j, S::one().neg());
            basis.push(embed_p(&c));
            compact.push(false);
            let mut ci = e_mat(n, j, k, i.clone());
            ci.set(k, j, i.clone().neg());
            basis.push(embed_p(&ci));
            compact.push(false);
        }
    }
    debug_assert_eq!(basis.len(), 2 * n * n - n);
    let half_i = S::from_ratio(1, 2).mul(i.clone());
    let mut h = Mat::zeros(d, d);
    for j in 0..n {
        h.set(j, j, half_i.clone());
        h.set(n + j, n + j, half_i.clone().neg());
    }
    LieAlgebra {
        name: format!("so*({})", 2 * n),
        module_dim: d,
        basis,
        compact,
        h0: Some(h),
        form_signature: (n, n),
    }
}

/// sp(2n, ℝ) preserving E = [[0, I], [−I, 0]], in a basis adapted to
/// the maximal compact u(n):
///
/// 𝔨: [[A, S], [−S, A]] with A antisymmetric, S symmetric;
/// 𝔭: [[S, 0], [0, −S]] and [[0, S], [S, 0]] with S symmetric.
///
/// H₀ = (1/2)[[0, −I], [I, 0]], which is J₀/2 for the standard complex
/// structure of the Siegel upper half space.
pub fn sp_2n_real<S: Scalar>(n: usize) -> LieAlgebra<S> {
    assert!(n >= 1);
    let d = 2 * n;
    let sym = |j: usize, k: usize| -> Mat<S> {
        let mut s = e_mat(n, j, k, S::one());
        if j != k {
            s.set(k, j, S::one());
        }
        s
    };
    let mut basis = Vec::new();
    let mut compact = Vec::new();
    // Compact: A-type.
    for j in 0..n {
        for k in j + 1..n {
            let mut a = e_mat(n, j, k, S::one());
            a.set(k, j, S::one().neg());
            let mut m = Mat::zeros(d, d);
            m.set_block(0, 0, &a);
            m.set_block(n, n, &a);
            basis.push(m);
            compact.push(true);
        }
    }
    // Compact: S-type rotation blocks.
    for j in 0..n {
        for k in j..n {
            let s = sym(j, k);
            let mut m = Mat::zeros(d, d);
            m.set_block(0, n, &s);
            m.set_block(n, 0, &s.neg_mat());
            basis.push(m);
            compact.push(true);
        }
    }
    // Noncompact.
    for j in 0..n {
        for k in j..n {
            let s = sym(j, k);
            let mut m = Mat::zeros(d, d);
            m.set_block(0, 0, &s);
            m.set_block(n, n, &s.neg_mat());
            basis.push(m);
            compact.push(false);
            let mut m2 = Mat::zeros(d, d);
            m2.set_block(0, n, &s);
            m2.set_block(n, 0, &s);
            basis.push(m2);
            compact.push(false);
        }
    }
    debug_assert_eq!(basis.len(), n * (2 * n + 1));
    let half = S::from_ratio(1, 2);
    let mut h = Mat::zeros(d, d);
    for j in 0..n {
        h.set(j, n + j, half.clone().neg());
        h.set(n + j, j, half.clone());
    }
    LieAlgebra {
        name: format!("sp({},R)", 2 * n),
        module_dim: d,
        basis,
        compact,
        h0: Some(h),
        form_signature: (d, 0),
    }
}

/// Compact symplectic algebra sp(n) ⊂ u(2n): matrices
/// [[A, B], [−conj B, conj A]] with A anti-Hermitian and B symmetric.
pub fn sp_n_compact<S: Scalar>(n: usize) -> LieAlgebra<S> {
    assert!(n >= 1);
    let i = S::i();
    let d = 2 * n;
    let mut basis = Vec::new();
    let embed = |a: &Mat<S>, b: &Mat<S>| -> Mat<S> {
        let mut m = Mat::zeros(d, d);
        m.set_block(0, 0, a);
        m.set_block(0, n, b);
        m.set_block(n, 0, &b.conj().neg_mat());
        m.set_block(n, n, &a.conj());
        m
    };
    let zero = Mat::zeros(n, n);
    // A-part: u(n) basis.
    for j in 0..n {
        basis.push(embed(&e_mat(n, j, j, i.clone()), &zero));
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut a = e_mat(n, j, k, S::one());
            a.set(k, j, S::one().neg());
            basis.push(embed(&a, &zero));
            let mut b = e_mat(n, j, k, i.clone());
            b.set(k, j, i.clone());
            basis.push(embed(&b, &zero));
        }
    }
    // B-part: complex symmetric basis.
    for j in 0..n {
        for k in j..n {
            let mut s = e_mat(n, j, k, S::one());
            if j != k {
                s.set(k, j, S::one());
            }
            basis.push(embed(&zero, &s));
            let mut si = e_mat(n, j, k, i.clone());
            if j != k {
                si.set(k, j, i.clone());
            }
            basis.push(embed(&zero, &si));
        }
    }
    debug_assert_eq!(basis.len(), n * (2 * n + 1));
    let len = basis.len();
    LieAlgebra {
        name: format!("sp({n})"),
        module_dim: d,
        basis,
        compact: vec![true; len],
        h0: None,
        form_signature: (d, 0),
    }
}

/// Compact orthogonal algebra so(m): real antisymmetric matrices,
/// basis E_ab − E_ba for a < b.
pub fn so_m_compact<S: Scalar>(m: usize) -> LieAlgebra<S> {
    assert!(m >= 2);
    let mut basis = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let mut x = e_mat(m, a, b, S::one());
            x.set(b, a, S::one().neg());
            basis.push(x);
        }
    }
    let len = basis.len();
    LieAlgebra {
        name: format!("so({m})"),
        module_dim: m,
        basis,
        compact: vec![true; len],
        h0: None,
        form_signature: (m, 0),
    }
}

/// so(p, 2) in its vector representation, preserving
/// η = diag(I_p, −I₂) (spacelike indices first).  Basis
/// M_ab = η_bb E_ab − η_aa E_ba for a < b; M_ab is compact iff a and b
/// are both spacelike or both timelike.
///
/// H₀ = M_{p,p+1} (the timelike rotation), zero-indexed.
pub fn so_p2_vector<S: Scalar>(p: usize) -> LieAlgebra<S> {
    assert!(p >= 1);
    let m = p + 2;
    let eta = |a: usize| -> i64 {
        if a < p {
            1
        } else {
            -1
        }
    };
    let mut basis = Vec::new();
    let mut compact = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let mut x = Mat::zeros(m, m);
            x.set(a, b, S::from_i64(eta(b)));
            x.set(b, a, S::from_i64(-eta(a)));
            basis.push(x);
            compact.push((a < p) == (b < p));
        }
    }
    let mut h = Mat::zeros(m, m);
    h.set(p, p + 1, S::one().neg());
    h.set(p + 1, p, S::one());
    LieAlgebra {
        name: format!("so({p},2)"),
        module_dim: m,
        basis,
        compact,
        h0: Some(h),
        form_signature: (p, 2),
    }
}

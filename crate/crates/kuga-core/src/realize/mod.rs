//! Realization of one leg of a candidate as explicit symplectic
//! matrices: the Lie algebra of the slot's real form together with the
//! differential of the representation, mapped into a symplectic module
//! with its alternating form, complex structure and H-element.

pub mod algebra;
pub mod clifford;
pub mod realify;
pub mod wedge;

use thiserror::Error;

use crate::linalg::{expm, FloatScalar, Mat, Scalar};
use crate::satake::{Chirality, LocalKind, SpinShape};
use crate::spec::{FactorSpec, SatakeType, Signature};

pub use algebra::LieAlgebra;
pub use realify::{
    complex_coordinate_target, real_coordinate_target, realify_operator, SymplecticTarget,
};

/// Hard cap on the realized dimension of a single leg.
pub const MAX_LEG_DIM: usize = 4096;

/// Largest Lorentz parameter the spin builders accept.
pub const MAX_SPIN_P: u32 = 10;

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("kind {kind} cannot be realized on this slot: {reason}")]
    Mismatch { kind: String, reason: String },
    #[error("realized dimension {dim} exceeds the builder cap {cap}")]
    TooLarge { dim: usize, cap: usize },
}

fn mismatch(kind: LocalKind, reason: impl Into<String>) -> RealizeError {
    RealizeError::Mismatch {
        kind: kind.token(),
        reason: reason.into(),
    }
}

/// A fully realized leg.
#[derive(Clone, Debug)]
pub struct RepRealization<S: Scalar> {
    pub kind: LocalKind,
    /// The real form acting on this leg.
    pub algebra: LieAlgebra<S>,
    /// Realified images of the algebra basis, aligned with it.
    pub images: Vec<Mat<S>>,
    /// The symplectic target the images act on.
    pub target: SymplecticTarget<S>,
    /// Realified image of the H-element (noncompact legs only).
    pub h_image: Option<Mat<S>>,
}

impl<S: Scalar> RepRealization<S> {
    pub fn dim(&self) -> usize {
        self.target.dim
    }

    /// Images of the compact sub-basis only.
    pub fn compact_images(&self) -> Vec<&Mat<S>> {
        self.images
            .iter()
            .zip(&self.algebra.compact)
            .filter(|(_, &c)| c)
            .map(|(m, _)| m)
            .collect()
    }
}

/// Build the realization of `kind` on a slot of `factor` with
/// signature `sig`.
pub fn build_leg<S: Scalar>(
    factor: &FactorSpec,
    sig: Signature,
    kind: LocalKind,
) -> Result<RepRealization<S>, RealizeError> {
    let announced = kind.real_dim(factor);
    if announced > MAX_LEG_DIM as u64 {
        return Err(RealizeError::TooLarge {
            dim: announced as usize,
            cap: MAX_LEG_DIM,
        });
    }
    match kind {
        LocalKind::StdPlusContra => {
            let (p, q) = unitary_params(factor, sig, kind, false)?;
            let alg = algebra::su_pq::<S>(p, q);
            let pre = alg.basis.clone();
            let pre_h = alg.h0.clone();
            finish_complex(kind, alg, pre, pre_h, p)
        }
        LocalKind::WedgePair(k) | LocalKind::WedgeMiddleSingle(k) | LocalKind::WedgeMiddleDouble(k) => {
            let (p, q) = unitary_params(factor, sig, kind, false)?;
            if q != 1 {
                return Err(mismatch(kind, "wedge kinds require signature (p, 1)"));
            }
            let n = p + 1;
            let subsets = wedge::wedge_subsets(n, k as usize, true);
            let index = wedge::subset_index(&subsets);
            let alg = algebra::su_pq::<S>(p, 1);
            let pre: Vec<Mat<S>> = alg
                .basis
                .iter()
                .map(|x| wedge::wedge_derivation(x, &subsets, &index))
                .collect();
            let pre_h = alg
                .h0
                .as_ref()
                .map(|h| wedge::wedge_derivation(h, &subsets, &index));
            let d_plus = wedge::wedge_positives(n, k as usize);
            finish_complex(kind, alg, pre, pre_h, d_plus)
        }
        LocalKind::TwoCopiesStd => {
            if factor.satake_type != SatakeType::II || sig != Signature::Split {
                return Err(mismatch(kind, "requires the noncompact quaternionic form"));
            }
            let n = factor.n as usize;
            let alg = algebra::so_star::<S>(n);
            let pre = alg.basis.clone();
            let pre_h = alg.h0.clone();
            finish_complex(kind, alg, pre, pre_h, n)
        }
        LocalKind::Std => {
            if factor.satake_type != SatakeType::III || sig != Signature::Split {
                return Err(mismatch(kind, "requires the noncompact symplectic form"));
            }
            let n = factor.n as usize;
            let alg = algebra::sp_2n_real::<S>(n);
            let images = alg.basis.clone();
            let h_image = alg.h0.clone();
            let target = real_coordinate_target(n);
            Ok(RepRealization {
                kind,
                algebra: alg,
                images,
                target,
                h_image,
            })
        }
        LocalKind::SpinSingle | LocalKind::SpinDouble => {
            let p = lorentz_param(factor, sig, kind)?;
            if p % 2 == 0 {
                return Err(mismatch(kind, "full spin kinds require odd p"));
            }
            build_lorentz_spin::<S>(kind, p, None)
        }
        LocalKind::HalfSpin(ch) | LocalKind::HalfSpinDouble(ch) => {
            let p = lorentz_param(factor, sig, kind)?;
            if p % 2 != 0 {
                return Err(mismatch(kind, "half spin kinds require even p"));
            }
            build_lorentz_spin::<S>(kind, p, Some(ch))
        }
        LocalKind::BothHalfSpins => {
            let p = lorentz_param(factor, sig, kind)?;
            if p % 2 != 0 {
                return Err(mismatch(kind, "half spin kinds require even p"));
            }
            // Both halves occur; the certified block is built on the
            // positive-chirality half.
            build_lorentz_spin::<S>(kind, p, Some(Chirality::Plus))
        }
        LocalKind::CompactWedge(k) => {
            let alg = compact_form::<S>(factor, sig, kind)?;
            let m = alg.module_dim;
            if (k as usize) > m {
                return Err(mismatch(kind, "wedge degree exceeds the module dimension"));
            }
            let subsets = wedge::wedge_subsets(m, k as usize, false);
            let index = wedge::subset_index(&subsets);
            let pre: Vec<Mat<S>> = alg
                .basis
                .iter()
                .map(|x| wedge::wedge_derivation(x, &subsets, &index))
                .collect();
            let d_plus = subsets.len();
            finish_complex(kind, alg, pre, None, d_plus)
        }
        LocalKind::CompactSpin(shape) => {
            if factor.satake_type != SatakeType::IV || sig != Signature::Compact {
                return Err(mismatch(kind, "compact spin kinds live on compact orthogonal slots"));
            }
            let m = factor.std_dim() as usize;
            if m > (MAX_SPIN_P as usize) + 2 {
                return Err(mismatch(kind, "spin module too large for the builder"));
            }
            let alg = algebra::so_m_compact::<S>(m);
            let gammas = clifford::euclidean_gammas::<S>(m);
            let omegas = clifford::spin_generators(&gammas);
            match (shape, m % 2) {
                (SpinShape::Full, 1) => {
                    let d_plus = omegas[0].rows();
                    finish_complex(kind, alg, omegas, None, d_plus)
                }
                (SpinShape::Half(_), 0) | (SpinShape::Both, 0) => {
                    let want = match shape {
                        SpinShape::Half(c) => c,
                        _ => Chirality::Plus,
                    };
                    let chir = clifford::chirality(&gammas);
                    let signs = clifford::diagonal_signs(&chir);
                    let keep = keep_indices(&signs, want);
                    let pre: Vec<Mat<S>> = omegas.iter().map(|w| submatrix(w, &keep)).collect();
                    let d_plus = keep.len();
                    finish_complex(kind, alg, pre, None, d_plus)
                }
                (SpinShape::Full, _) => Err(mismatch(kind, "full compact spin requires odd module dimension")),
                _ => Err(mismatch(kind, "half compact spin requires even module dimension")),
            }
        }
        LocalKind::Trivial => Err(mismatch(kind, "trivial legs are not realized")),
    }
}

fn unitary_params(
    factor: &FactorSpec,
    sig: Signature,
    kind: LocalKind,
    allow_compact: bool,
) -> Result<(usize, usize), RealizeError> {
    if factor.satake_type != SatakeType::I {
        return Err(mismatch(kind, "requires a unitary factor"));
    }
    match sig {
        Signature::Unitary { p, q } => {
            if q == 0 && !allow_compact {
                return Err(mismatch(kind, "requires a noncompact unitary slot"));
            }
            Ok((p as usize, q as usize))
        }
        _ => Err(mismatch(kind, "requires a unitary signature")),
    }
}

fn lorentz_param(
    factor: &FactorSpec,
    sig: Signature,
    kind: LocalKind,
) -> Result<u32, RealizeError> {
    if factor.satake_type != SatakeType::IV {
        return Err(mismatch(kind, "requires an orthogonal factor"));
    }
    let p = match sig {
        Signature::Lorentz { p } => p,
        _ => return Err(mismatch(kind, "requires a Lorentz signature")),
    };
    if p > MAX_SPIN_P {
        return Err(mismatch(kind, "spin module too large for the builder"));
    }
    Ok(p)
}

fn compact_form<S: Scalar>(
    factor: &FactorSpec,
    sig: Signature,
    kind: LocalKind,
) -> Result<LieAlgebra<S>, RealizeError> {
    match (factor.satake_type, sig) {
        (SatakeType::I, Signature::Unitary { p, q: 0 }) => Ok(algebra::su_pq::<S>(p as usize, 0)),
        (SatakeType::II, Signature::Compact) => Ok(algebra::so_m_compact::<S>(2 * factor.n as usize)),
        (SatakeType::III, Signature::Compact) => Ok(algebra::sp_n_compact::<S>(factor.n as usize)),
        (SatakeType::IV, Signature::Compact) => Ok(algebra::so_m_compact::<S>(factor.n as usize + 2)),
        _ => Err(mismatch(kind, "requires a compact slot")),
    }
}

fn build_lorentz_spin<S: Scalar>(
    kind: LocalKind,
    p: u32,
    half: Option<Chirality>,
) -> Result<RepRealization<S>, RealizeError> {
    let p = p as usize;
    let alg = algebra::so_p2_vector::<S>(p);
    let gammas = clifford::lorentz_gammas::<S>(p);
    let omegas = clifford::spin_generators(&gammas);
    // The invariant Hermitian form on spinors is the image of the
    // timelike rotation, scaled: Ĥ = −2i ω_{p,p+1}, diagonal ±1.
    let last = omegas.len() - 1;
    let minus_two_i = S::from_i64(-2).mul(S::i());
    let h_herm = omegas[last].scale(&minus_two_i);
    let (omegas, h_diag) = match half {
        None => (omegas, clifford::diagonal_signs(&h_herm)),
        Some(ch) => {
            let chir = clifford::chirality(&gammas);
            let signs = clifford::diagonal_signs(&chir);
            let keep = keep_indices(&signs, ch);
            let sub: Vec<Mat<S>> = omegas.iter().map(|w| submatrix(w, &keep)).collect();
            let h_sub = submatrix(&h_herm, &keep);
            let d = clifford::diagonal_signs(&h_sub);
            (sub, d)
        }
    };
    let plus = h_diag.iter().filter(|&&s| s == 1).count();
    if 2 * plus != h_diag.len() {
        return Err(mismatch(kind, "internal: spinor form is unbalanced"));
    }
    // Relabel so the form-positive spinor directions come first.
    let order: Vec<usize> = (0..h_diag.len())
        .filter(|&i| h_diag[i] == 1)
        .chain((0..h_diag.len()).filter(|&i| h_diag[i] == -1))
        .collect();
    let pre: Vec<Mat<S>> = omegas.iter().map(|w| submatrix(w, &order)).collect();
    let pre_h = pre[last].clone();
    finish_complex(kind, alg, pre, Some(pre_h), plus)
}

/// Select `keep`-indexed rows and columns (also used to relabel with a
/// permutation when `keep` has full length).
fn submatrix<S: Scalar>(m: &Mat<S>, keep: &[usize]) -> Mat<S> {
    let k = keep.len();
    let mut out = Mat::zeros(k, k);
    for (r, &i) in keep.iter().enumerate() {
        for (c, &j) in keep.iter().enumerate() {
            out.set(r, c, m.at(i, j).clone());
        }
    }
    out
}

fn keep_indices(signs: &[i8], ch: Chirality) -> Vec<usize> {
    let want: i8 = match ch {
        Chirality::Plus => 1,
        Chirality::Minus => -1,
    };
    (0..signs.len()).filter(|&i| signs[i] == want).collect()
}

fn finish_complex<S: Scalar>(
    kind: LocalKind,
    alg: LieAlgebra<S>,
    pre_images: Vec<Mat<S>>,
    pre_h: Option<Mat<S>>,
    d_plus: usize,
) -> Result<RepRealization<S>, RealizeError> {
    let module_dim = pre_images
        .first()
        .map(|m| m.rows())
        .unwrap_or(alg.module_dim);
    let realized = 2 * module_dim;
    if realized > MAX_LEG_DIM {
        return Err(RealizeError::TooLarge {
            dim: realized,
            cap: MAX_LEG_DIM,
        });
    }
    let images = pre_images
        .iter()
        .map(|m| realify_operator(m, d_plus))
        .collect();
    let h_image = pre_h.as_ref().map(|h| realify_operator(h, d_plus));
    let target = complex_coordinate_target(module_dim);
    Ok(RepRealization {
        kind,
        algebra: alg,
        images,
        target,
        h_image,
    })
}

/// The enlarged H-elements available once the slot's group is extended
/// by its center (unitary slots only).  For the paired standard kind
/// the balanced element diag((i/2)I_p, −(i/2)I_q) applies; for the
/// non-middle wedge kinds on (p, 1) the rescaled element
/// diag((i/2k)I_p, ((1−2k)/2k) i) does.  Both realify to exactly J₀/2.
#[derive(Clone, Debug)]
pub struct UnitaryExtension<S: Scalar> {
    pub route: ExtensionRoute,
    /// Realified image of the extension H-element.
    pub h_image: Mat<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionRoute {
    /// Balanced central rescaling of the standard module.
    Balanced,
    /// Wedge of the rescaled diagonal element on (p, 1).
    WedgeTilde,
}

/// Build the extension H-element for a leg that needs one (returns
/// `None` for kinds whose own H-element already satisfies the stronger
/// commutation condition, and for compact legs).
pub fn unitary_extension<S: Scalar>(
    factor: &FactorSpec,
    sig: Signature,
    kind: LocalKind,
) -> Result<Option<UnitaryExtension<S>>, RealizeError> {
    match kind {
        LocalKind::StdPlusContra => {
            let (p, q) = unitary_params(factor, sig, kind, false)?;
            let i = S::i();
            let half_i = S::from_ratio(1, 2).mul(i);
            let n = p + q;
            let mut h = Mat::zeros(n, n);
            for j in 0..p {
                h.set(j, j, half_i.clone());
            }
            for j in p..n {
                h.set(j, j, half_i.clone().neg());
            }
            Ok(Some(UnitaryExtension {
                route: ExtensionRoute::Balanced,
                h_image: realify_operator(&h, p),
            }))
        }
        LocalKind::WedgePair(k) => {
            let (p, q) = unitary_params(factor, sig, kind, false)?;
            if q != 1 {
                return Err(mismatch(kind, "wedge kinds require signature (p, 1)"));
            }
            let h = wedge_tilde_element::<S>(p, k as usize);
            let n = p + 1;
            let subsets = wedge::wedge_subsets(n, k as usize, true);
            let index = wedge::subset_index(&subsets);
            let hw = wedge::wedge_derivation(&h, &subsets, &index);
            let d_plus = wedge::wedge_positives(n, k as usize);
            Ok(Some(UnitaryExtension {
                route: ExtensionRoute::WedgeTilde,
                h_image: realify_operator(&hw, d_plus),
            }))
        }
        _ => Ok(None),
    }
}

/// diag((i/2k) I_p, ((1−2k)/2k) i) on ℂ^{p+1}: its k-th wedge is
/// exactly diag((i/2) I₊, −(i/2) I₋) in the split-last basis order.
pub fn wedge_tilde_element<S: Scalar>(p: usize, k: usize) -> Mat<S> {
    let i = S::i();
    let n = p + 1;
    let mut h = Mat::zeros(n, n);
    let top = S::from_ratio(1, 2 * k as i64).mul(i.clone());
    let last = S::from_ratio(1 - 2 * k as i64, 2 * k as i64).mul(i);
    for j in 0..p {
        h.set(j, j, top.clone());
    }
    h.set(p, p, last);
    h
}

/// Image of the group point `exp(Σ cᵢ Xᵢ)` over the realized basis.
pub fn group_image<S: FloatScalar>(rep: &RepRealization<S>, coeffs: &[f64]) -> Mat<S> {
    assert_eq!(coeffs.len(), rep.images.len(), "one coefficient per basis image");
    let d = rep.dim();
    let mut x = Mat::zeros(d, d);
    for (c, img) in coeffs.iter().zip(&rep.images) {
        x = x.add_mat(&img.scale(&S::from_f64(*c)));
    }
    expm(&x)
}

/// Complex structure at a translated base point: `g·J₀·g⁻¹`.
pub fn tau_of<S: FloatScalar>(target: &SymplecticTarget<S>, g: &Mat<S>, g_inv: &Mat<S>) -> Mat<S> {
    g.matmul(&target.j0).matmul(g_inv)
}

/// Complex structure at the orbit point `exp(Σ cᵢ Xᵢ)` of the base
/// point, where the sum runs over the realized basis images.  The
/// result lies in the Siegel space of the target whenever the leg
/// satisfies the weaker commutation condition.
pub fn tau_at<S: FloatScalar>(rep: &RepRealization<S>, coeffs: &[f64]) -> Mat<S> {
    let neg: Vec<f64> = coeffs.iter().map(|c| -c).collect();
    let g = group_image(rep, coeffs);
    let g_inv = group_image(rep, &neg);
    tau_of(&rep.target, &g, &g_inv)
}

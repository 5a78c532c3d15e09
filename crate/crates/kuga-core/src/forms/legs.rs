//! Transport of a realized leg to real coordinates.
//!
//! Everything downstream of realization works with real matrices: the
//! invariant symmetric forms, the tensor pairing, and the assembled
//! alternating form.  The transport verifies that every matrix really
//! is real (up to the caller's tolerance; exactly, in exact mode) and
//! then scrubs the vanished imaginary parts so the scalar type's real
//! subfield carries the data from here on.

use super::gamma::{invariant_symmetric_form, GammaRoute};
use super::FormError;
use crate::hcond::LemmaRoute;
use crate::linalg::{Mat, Scalar};
use crate::realize::RepRealization;

/// One leg of a summand block in real coordinates.
#[derive(Clone, Debug)]
pub struct RealLeg<S: Scalar> {
    /// Embedding label; fixes the tensor order within a block.
    pub label: String,
    pub dim: usize,
    /// Real images of the leg algebra's basis, aligned with it.
    pub images: Vec<Mat<S>>,
    pub role: LegRole<S>,
}

/// What the leg contributes to the tensor pairing.
#[derive(Clone, Debug)]
pub enum LegRole<S: Scalar> {
    /// The distinguished leg: alternating form, complex structure, and
    /// the image of the leg's own H-element.
    Noncompact { e: Mat<S>, j: Mat<S>, h: Mat<S> },
    /// A compact leg: a positive-definite invariant symmetric form.
    Compact { gamma: Mat<S>, route: GammaRoute },
}

impl<S: Scalar> RealLeg<S> {
    pub fn is_noncompact(&self) -> bool {
        matches!(self.role, LegRole::Noncompact { .. })
    }

    /// The matrix the leg contributes to the tensor pairing: the
    /// alternating form at the distinguished leg, γ elsewhere.
    pub fn pairing(&self) -> &Mat<S> {
        match &self.role {
            LegRole::Noncompact { e, .. } => e,
            LegRole::Compact { gamma, .. } => gamma,
        }
    }

    /// Mechanical scalar-field conversion (used to drop from the
    /// complex workhorse field to plain reals once everything is real).
    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> RealLeg<T> {
        RealLeg {
            label: self.label.clone(),
            dim: self.dim,
            images: self.images.iter().map(|m| m.map(f)).collect(),
            role: match &self.role {
                LegRole::Noncompact { e, j, h } => LegRole::Noncompact {
                    e: e.map(f),
                    j: j.map(f),
                    h: h.map(f),
                },
                LegRole::Compact { gamma, route } => LegRole::Compact {
                    gamma: gamma.map(f),
                    route: *route,
                },
            },
        }
    }
}

/// Verify `m` is real to within `tol` and return its entrywise real
/// part.  With `tol = 0` the check is exact.
fn ensure_real<S: Scalar>(m: &Mat<S>, context: &str, tol: f64) -> Result<Mat<S>, FormError> {
    let re = m.map(|v| v.real_part());
    let defect = m.sub_mat(&re).max_abs();
    if defect > tol {
        return Err(FormError::NotReal {
            context: context.into(),
            defect,
        });
    }
    Ok(re)
}

/// Transport a realized leg to real coordinates.  Compact legs get
/// their invariant symmetric form solved here; the distinguished leg
/// carries its alternating form, complex structure and H-element
/// image instead.
pub fn real_leg<S: Scalar>(
    label: &str,
    rep: &RepRealization<S>,
    realness_tol: f64,
) -> Result<RealLeg<S>, FormError> {
    let target = &rep.target;
    let ctx = |part: &str| format!("leg {label} ({}): {part}", rep.kind.token());
    let images = rep
        .images
        .iter()
        .map(|x| ensure_real(&target.operator_in_real_coords(x), &ctx("image"), realness_tol))
        .collect::<Result<Vec<_>, _>>()?;

    let role = match &rep.h_image {
        Some(h) => LegRole::Noncompact {
            e: ensure_real(&target.e_in_real_coords(), &ctx("alternating form"), realness_tol)?,
            j: ensure_real(&target.j_in_real_coords(), &ctx("complex structure"), realness_tol)?,
            h: ensure_real(
                &target.operator_in_real_coords(h),
                &ctx("H-element"),
                realness_tol,
            )?,
        },
        None => {
            let (gamma, route) = invariant_symmetric_form(&images, target.dim)?;
            LegRole::Compact { gamma, route }
        }
    };
    Ok(RealLeg {
        label: label.to_string(),
        dim: target.dim,
        images,
        role,
    })
}

/// The canonical positive symmetric form on the distinguished leg:
/// the symmetrized pairing of the alternating form with the complex
/// structure.
pub fn noncompact_gamma<S: Scalar>(e: &Mat<S>, j: &Mat<S>) -> Mat<S> {
    let s = e.matmul(j);
    s.add_mat(&s.transpose()).scale(&S::from_ratio(1, 2))
}

/// Residuals of the two equivalent invariance identities tying the
/// distinguished leg's symmetric form to its complex structure, plus
/// the infinitesimal invariance under the element generating the
/// complex structure by exponentiation.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct JInvariance {
    /// Which one-parameter subgroup reaches the complex structure.
    pub route: LemmaRoute,
    /// ‖ᵗJ·γ·J − γ‖_F.
    pub coordinate_residual: f64,
    /// ‖γJ + ᵗ(γJ)‖_F.
    pub alternating_residual: f64,
    /// ‖ᵗX·γ + γ·X‖_F for the generating element X.
    pub generator_residual: f64,
}

/// Check invariance of `gamma` under the complex structure `j` and
/// under the generator `x` whose exponential reaches it.
pub fn check_j_invariance<S: Scalar>(
    gamma: &Mat<S>,
    j: &Mat<S>,
    x: &Mat<S>,
    route: LemmaRoute,
) -> JInvariance {
    let coord = j.transpose().matmul(gamma).matmul(j).sub_mat(gamma);
    let gj = gamma.matmul(j);
    let alt = gj.add_mat(&gj.transpose());
    let gen = x.transpose().matmul(gamma).add_mat(&gamma.matmul(x));
    JInvariance {
        route,
        coordinate_residual: coord.fro_norm(),
        alternating_residual: alt.fro_norm(),
        generator_residual: gen.fro_norm(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Qi, C64};
    use crate::realize::{build_leg, unitary_extension};
    use crate::satake::LocalKind;
    use crate::spec::{FactorSpec, SatakeType, Signature};

    fn factor(t: SatakeType, n: u32) -> FactorSpec {
        FactorSpec {
            name: "t".into(),
            satake_type: t,
            n,
            embeddings: vec![],
        }
    }

    #[test]
    fn paired_standard_leg_transports_to_real_coordinates() {
        let f = factor(SatakeType::I, 3);
        let rep = build_leg::<C64>(&f, Signature::Unitary { p: 2, q: 1 }, LocalKind::StdPlusContra)
            .unwrap();
        let leg = real_leg("a1", &rep, 1e-10).unwrap();
        assert_eq!(leg.dim, 6);
        assert!(leg.is_noncompact());
        let LegRole::Noncompact { e, j, h } = &leg.role else {
            panic!("expected the distinguished role");
        };
        // The form pairs the halves with weight 2, the complex
        // structure squares to −1, and their product is 2·identity.
        assert!(e.add_mat(&e.transpose()).max_abs() < 1e-12);
        assert!(j
            .matmul(j)
            .add_mat(&Mat::identity(6))
            .is_zero_within(1e-12));
        let gram = e.matmul(j);
        assert!(gram.approx_eq(&Mat::identity(6).scale(&C64::new(2.0, 0.0)), 1e-12));
        // Images stay form-preserving after the transport.
        for x in &leg.images {
            let resid = x.transpose().matmul(e).add_mat(&e.matmul(x));
            assert!(resid.max_abs() < 1e-10);
        }
        let _ = h;
    }

    #[test]
    fn compact_leg_gets_the_identity_form() {
        let f = factor(SatakeType::I, 3);
        let rep = build_leg::<C64>(&f, Signature::Unitary { p: 3, q: 0 }, LocalKind::CompactWedge(1))
            .unwrap();
        let leg = real_leg("b2", &rep, 1e-10).unwrap();
        assert!(!leg.is_noncompact());
        let LegRole::Compact { gamma, route } = &leg.role else {
            panic!("expected a compact role");
        };
        assert_eq!(*route, GammaRoute::Identity);
        assert!(gamma.eq_exact(&Mat::identity(leg.dim)));
    }

    #[test]
    fn exact_transport_has_zero_imaginary_defect() {
        let f = factor(SatakeType::I, 2);
        let rep = build_leg::<Qi>(&f, Signature::Unitary { p: 1, q: 1 }, LocalKind::StdPlusContra)
            .unwrap();
        // Tolerance zero: any nonzero imaginary part would error.
        let leg = real_leg("a1", &rep, 0.0).unwrap();
        assert_eq!(leg.dim, 4);
        assert!(leg.is_noncompact());
    }

    #[test]
    fn tampered_target_is_rejected_as_not_real(){
        let f = factor(SatakeType::I, 3);
        let mut rep =
            build_leg::<C64>(&f, Signature::Unitary { p: 2, q: 1 }, LocalKind::StdPlusContra)
                .unwrap();
        // Poison one image with an entry the transport cannot scrub.
        rep.images[0].set(0, 0, C64::new(0.0, 0.5));
        let err = real_leg("a1", &rep, 1e-10).unwrap_err();
        assert!(matches!(err, FormError::NotReal { .. }));
    }

    #[test]
    fn j_invariance_holds_on_the_standard_split_leg() {
        // Type III standard: the complex structure is reached from the
        // leg's own H-element.
        let f = factor(SatakeType::III, 2);
        let rep = build_leg::<C64>(&f, Signature::Split, LocalKind::Std).unwrap();
        let leg = real_leg("d1", &rep, 1e-10).unwrap();
        let LegRole::Noncompact { e, j, h } = &leg.role else {
            panic!();
        };
        let gamma = noncompact_gamma(e, j);
        let check = check_j_invariance(&gamma, j, h, LemmaRoute::Own);
        assert!(check.coordinate_residual < 1e-10);
        assert!(check.alternating_residual < 1e-10);
        assert!(check.generator_residual < 1e-10);
    }

    #[test]
    fn j_invariance_through_the_extension_route() {
        // The paired standard kind on signature (2, 1) misses the
        // stronger commutation condition; the balanced central
        // extension supplies the generator instead.
        let f = factor(SatakeType::I, 3);
        let sig = Signature::Unitary { p: 2, q: 1 };
        let rep = build_leg::<C64>(&f, sig, LocalKind::StdPlusContra).unwrap();
        let ext = unitary_extension::<C64>(&f, sig, LocalKind::StdPlusContra)
            .unwrap()
            .expect("extension");
        let leg = real_leg("a1", &rep, 1e-10).unwrap();
        let LegRole::Noncompact { e, j, .. } = &leg.role else {
            panic!();
        };
        let gamma = noncompact_gamma(e, j);
        let h_ext = rep
            .target
            .operator_in_real_coords(&ext.h_image)
            .map(|v| C64::new(v.re, 0.0));
        let check = check_j_invariance(&gamma, j, &h_ext, LemmaRoute::Balanced);
        assert!(check.coordinate_residual < 1e-10);
        assert!(check.alternating_residual < 1e-10);
        assert!(check.generator_residual < 1e-10);
    }
}

//! End-to-end certification: validate a candidate, reduce it to a
//! rigid one, realize and certify every leg of every Galois conjugate,
//! and assemble the certified invariant form.
//!
//! Two scalar routes share the same per-leg H-condition certificates
//! (always floating point — the conditions are residual checks): the
//! float route transports the complex realization to real `f64`
//! coordinates, while the exact route rebuilds each leg over the
//! Gaussian rationals and demands the structural identities with zero
//! defect.  Positivity is certified in floating point either way.

use serde::Serialize;
use thiserror::Error;

use crate::forms::{
    assemble, check_j_invariance, noncompact_gamma, real_leg, summand_block, AssemblyOptions,
    FormCertificate, FormError, GammaRoute, JInvariance, LegRole, RealLeg, SummandBlock,
    DENSE_CHECK_CAP, EXACT_DENSE_CAP,
};
use crate::hcond::{certify_leg, classify_residual, HCertificate, HcondError, Tolerances};
use crate::linalg::{Mat, Qi, Scalar, C64};
use crate::realize::{build_leg, unitary_extension, RealizeError, RepRealization};
use crate::rigidify::{
    erase_factors, rigidify, summand_multiset, uniform_multiple, AugmentationStep, RigidifyError,
};
use crate::satake::{enumerate_candidates, perm_cycles_string, Candidate, Leg, SatakeError};
use crate::spec::GroupSpec;

/// Knobs for a certification run.
#[derive(Clone, Copy, Debug)]
pub struct PipelineConfig {
    /// Residual classification thresholds.
    pub tolerances: Tolerances,
    /// Block-dimension cap for the dense invariance re-check.
    pub dense_cap: usize,
    /// Assemble the form over the Gaussian rationals and demand the
    /// structural identities exactly.
    pub exact: bool,
    /// Imaginary-part tolerance when transporting float realizations
    /// to real coordinates (the exact route always demands zero).
    pub realness_tol: f64,
    /// Keep the assembled matrices on the outcome for later dumping.
    pub keep_matrices: bool,
}

/// Carried verbatim on every certified candidate: rationality of the
/// full module needs some unspecified integer multiple.
pub const RATIONALITY_NOTE: &str =
    "unresolved multiplicity >= 1: some integer multiple of the certified module carries a \
     rational structure; the multiple is not computed";

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            tolerances: Tolerances::default(),
            dense_cap: DENSE_CHECK_CAP,
            exact: false,
            realness_tol: 1e-12,
            keep_matrices: false,
        }
    }
}

#[derive(Error, Debug)]
pub enum PipelineError {
    #[error("candidate rejected: {0}")]
    Candidate(#[from] SatakeError),
    #[error("realization failed on an admissible leg: {0}")]
    Realize(#[from] RealizeError),
    #[error(transparent)]
    Hcond(#[from] HcondError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Rigidify(#[from] RigidifyError),
    #[error("internal inconsistency: {reason}")]
    Inconsistent { reason: String },
}

impl PipelineError {
    /// Process exit code for the failure class: 3 when the candidate
    /// genuinely fails a condition it was asked to satisfy, 4 when the
    /// toolchain contradicts itself (dead zones, table disagreements,
    /// realizations failing on admissible data).
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Candidate(_) => 3,
            PipelineError::Form(FormError::GammaUnsolvable { .. })
            | PipelineError::Form(FormError::PositivityFailed) => 3,
            PipelineError::Rigidify(RigidifyError::Satake(_)) => 3,
            PipelineError::Realize(_)
            | PipelineError::Hcond(_)
            | PipelineError::Form(_)
            | PipelineError::Rigidify(_)
            | PipelineError::Inconsistent { .. } => 4,
        }
    }
}

/// Certification record for one leg of one block.
#[derive(Clone, Debug, Serialize)]
pub struct LegReport {
    /// Embedding label the leg acts at.
    pub label: String,
    /// Local descriptor token.
    pub kind: String,
    /// Real dimension of the leg.
    pub dim: usize,
    pub noncompact: bool,
    /// H-condition certificate (distinguished legs only).
    pub h: Option<HCertificate>,
    /// Invariance of the leg's canonical symmetric form under the
    /// complex structure and its generator (distinguished legs only).
    pub j_invariance: Option<JInvariance>,
    /// How the compact leg's positive form was found (compact legs
    /// only).
    pub gamma_route: Option<String>,
}

/// One Galois conjugate's certified block.
#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    /// Group element, as cycles on the embedding labels.
    pub element: String,
    /// Key of the conjugated summand.
    pub summand: String,
    /// Block dimension (product of the leg dimensions).
    pub dim: usize,
    pub legs: Vec<LegReport>,
}

/// Certified outcome for one candidate.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateOutcome {
    /// Canonical key in the input group.
    pub key: String,
    /// Family key (signatures erased).
    pub family: String,
    /// Total realized dimension of the input candidate.
    pub real_dim: u64,
    /// Uniform summand multiplicity; the certified matrices cover one
    /// copy, the full module is this many copies of them.
    pub multiplicity: u32,
    /// The further integer multiple needed for a rational structure is
    /// known to exist but is never computed.
    pub rationality_note: String,
    /// Galois group order of the input group.
    pub group_order: usize,
    /// Number of group elements whose conjugate of the base summand is
    /// rigid, measured on the input.
    pub rigidity_index: usize,
    /// Whether the input was already rigid (empty trail).
    pub rigid_input: bool,
    /// Augmentation rounds applied to reach a rigid candidate.
    pub trail: Vec<AugmentationStep>,
    /// Canonical key of the rigid candidate in the enlarged group.
    pub final_key: String,
    /// Galois group order of the enlarged group.
    pub final_group_order: usize,
    /// Total realized dimension of the rigid candidate.
    pub final_real_dim: u64,
    /// Multiple by which restricting the rigid candidate to the input
    /// group recovers the input (`null` when no augmentation ran).
    pub restriction_multiple: Option<u32>,
    /// One certified block per group element, in canonical order.
    pub blocks: Vec<BlockReport>,
    /// Certificate of the assembled form.
    pub form: FormCertificate,
    /// Conjunction of every classified check.
    pub pass: bool,
}

/// A certified candidate, with the assembled matrices when retention
/// was requested.
#[derive(Clone, Debug)]
pub struct Certified {
    pub outcome: CandidateOutcome,
    /// Assembled alternating form, complex structure and H-element
    /// (scaled, block-diagonal over the group), converted to complex
    /// floats for uniform dumping.
    pub matrices: Option<AssembledMatrices>,
}

#[derive(Clone, Debug)]
pub struct AssembledMatrices {
    pub e: Mat<C64>,
    pub j: Mat<C64>,
    pub h: Mat<C64>,
}

struct BuiltLeg {
    report: LegReport,
    pass: bool,
    float_leg: RealLeg<f64>,
    exact_leg: Option<RealLeg<Qi>>,
}

/// Realize one leg, certify its H-conditions and form invariances,
/// and transport it to real coordinates on both requested routes.
fn certify_one_leg(
    spec: &GroupSpec,
    leg: &Leg,
    config: &PipelineConfig,
) -> Result<BuiltLeg, PipelineError> {
    let factor = spec.factor_of(leg.emb);
    let sig = spec.sig(leg.emb);
    let label = spec.label(leg.emb);

    let rep: RepRealization<C64> = build_leg(factor, sig, leg.kind)?;
    let real: RealLeg<C64> = real_leg(label, &rep, config.realness_tol)?;
    let noncompact = rep.h_image.is_some();
    let mut pass = true;

    let (h_cert, j_inv) = if noncompact {
        let ext = unitary_extension::<C64>(factor, sig, leg.kind)?;
        let cert = certify_leg(
            &rep,
            ext.as_ref(),
            leg.kind.h2_expected(sig),
            config.tolerances,
        )?;
        pass &= cert.h1_pass && cert.lemma_pass;

        // The canonical symmetric form and the element whose
        // exponential reaches the complex structure, both in real
        // coordinates.
        let LegRole::Noncompact { e, j, h } = &real.role else {
            unreachable!("a leg with an H-element transports to a distinguished role")
        };
        let gamma = noncompact_gamma(e, j);
        let x = if cert.h2_pass {
            h.clone()
        } else {
            let ext = ext
                .as_ref()
                .expect("a leg failing the stronger condition was certified via its extension");
            let transported = rep.target.operator_in_real_coords(&ext.h_image);
            let re = transported.map(|v| v.real_part());
            let defect = transported.sub_mat(&re).max_abs();
            if defect > config.realness_tol {
                return Err(PipelineError::Inconsistent {
                    reason: format!(
                        "extension H-element of leg {label} is not real in real coordinates \
                         (defect {defect:.3e})"
                    ),
                });
            }
            re
        };
        let inv = check_j_invariance(&gamma, j, &x, cert.lemma_route);
        pass &= classify_residual(
            "symmetric form invariance under the complex structure",
            inv.coordinate_residual,
            config.tolerances,
        )?;
        pass &= classify_residual(
            "symmetric form pairing with the complex structure",
            inv.alternating_residual,
            config.tolerances,
        )?;
        pass &= classify_residual(
            "symmetric form invariance under the routed generator",
            inv.generator_residual,
            config.tolerances,
        )?;
        (Some(cert), Some(inv))
    } else {
        (None, None)
    };

    let gamma_route = match &real.role {
        LegRole::Compact { route, .. } => Some(match route {
            GammaRoute::Identity => "identity".to_string(),
            GammaRoute::Solved { space_dim } => format!("solved(space_dim={space_dim})"),
        }),
        LegRole::Noncompact { .. } => None,
    };

    let float_leg = real.convert(|v| v.re);
    let exact_leg = if config.exact {
        let rep_q: RepRealization<Qi> = build_leg(factor, sig, leg.kind)?;
        Some(real_leg(label, &rep_q, 0.0)?)
    } else {
        None
    };

    Ok(BuiltLeg {
        report: LegReport {
            label: label.to_string(),
            kind: leg.kind.token(),
            dim: real.dim,
            noncompact,
            h: h_cert,
            j_invariance: j_inv,
            gamma_route,
        },
        pass,
        float_leg,
        exact_leg,
    })
}

/// Certify one candidate end to end.
pub fn certify_candidate(
    spec: &GroupSpec,
    candidate: &Candidate,
    config: &PipelineConfig,
) -> Result<Certified, PipelineError> {
    candidate.validate(spec)?;
    candidate.check_stability(spec)?;
    candidate.check_galois_stable(spec)?;
    let rigidity_index = candidate.rigidity_index(spec)?;

    let (fspec, fcand, trail) = rigidify(candidate, spec)?;
    let rigid_input = trail.is_empty();

    // Conservativity: restricting the rigid candidate back to the
    // input group must recover a multiple of the input.
    let restriction_multiple = if trail.is_empty() {
        None
    } else {
        let added: Vec<String> = trail.iter().map(|s| s.new_factor.clone()).collect();
        let erased = erase_factors(&fcand, &fspec, &added);
        let original = summand_multiset(candidate, spec);
        match uniform_multiple(&erased, &original) {
            Some(m) => Some(m),
            None => {
                return Err(PipelineError::Inconsistent {
                    reason: format!(
                        "the rigid candidate `{}` does not restrict to a multiple of the input \
                         `{}`",
                        fcand.key(&fspec),
                        candidate.key(spec)
                    ),
                })
            }
        }
    };

    // The base summand; every block is one of its conjugates, one per
    // group element in canonical order.
    let (base, multiplicity) = {
        let parts = fcand.summands();
        (parts[0].0.clone(), parts[0].1)
    };

    let mut float_blocks: Vec<SummandBlock<f64>> = Vec::new();
    let mut exact_blocks: Vec<SummandBlock<Qi>> = Vec::new();
    let mut block_reports: Vec<BlockReport> = Vec::new();
    let mut all_pass = true;

    for sigma in fspec.galois().elements() {
        let conj = base.conjugate(&fspec, sigma)?;
        let mut legs_f: Vec<RealLeg<f64>> = Vec::new();
        let mut legs_q: Vec<RealLeg<Qi>> = Vec::new();
        let mut leg_reports: Vec<LegReport> = Vec::new();
        for leg in conj.legs() {
            let built = certify_one_leg(&fspec, leg, config)?;
            all_pass &= built.pass;
            leg_reports.push(built.report);
            legs_f.push(built.float_leg);
            if let Some(lq) = built.exact_leg {
                legs_q.push(lq);
            }
        }

        let block = summand_block(legs_f)?;
        block_reports.push(BlockReport {
            element: perm_cycles_string(&fspec, sigma),
            summand: conj.key(&fspec),
            dim: block.dim,
            legs: leg_reports,
        });
        float_blocks.push(block);
        if config.exact {
            exact_blocks.push(summand_block(legs_q)?);
        }
    }

    let opts = AssemblyOptions {
        dense_cap: if config.exact {
            config.dense_cap.min(EXACT_DENSE_CAP)
        } else {
            config.dense_cap
        },
        exact: config.exact,
    };
    let (form, matrices) = if config.exact {
        let assembled = assemble(exact_blocks, &opts)?;
        let m = config.keep_matrices.then(|| AssembledMatrices {
            e: assembled.e.to_c64(),
            j: assembled.j.to_c64(),
            h: assembled.h.to_c64(),
        });
        (assembled.certificate, m)
    } else {
        let assembled = assemble(float_blocks, &opts)?;
        let m = config.keep_matrices.then(|| AssembledMatrices {
            e: assembled.e.to_c64(),
            j: assembled.j.to_c64(),
            h: assembled.h.to_c64(),
        });
        (assembled.certificate, m)
    };

    // Classify the assembled residuals; positivity is the certified
    // minimum eigenvalue of the scaled Gram matrix.
    let tols = config.tolerances;
    all_pass &= classify_residual("assembled form alternating", form.alternating_residual, tols)?;
    all_pass &= classify_residual("assembled pairing symmetric", form.symmetry_residual, tols)?;
    all_pass &= classify_residual(
        "assembled complex structure squares to -1",
        form.j_square_residual,
        tols,
    )?;
    all_pass &= classify_residual("assembled form invariance", form.invariance_residual, tols)?;
    all_pass &= classify_residual(
        "assembled commutation of the H-element defect",
        form.full_h1_residual,
        tols,
    )?;
    all_pass &= form.min_eig > 0.0;

    Ok(Certified {
        outcome: CandidateOutcome {
            key: candidate.key(spec),
            family: candidate.family_key(spec),
            real_dim: candidate.real_dim(spec),
            multiplicity,
            rationality_note: RATIONALITY_NOTE.to_string(),
            group_order: spec.galois().order(),
            rigidity_index,
            rigid_input,
            trail,
            final_key: fcand.key(&fspec),
            final_group_order: fspec.galois().order(),
            final_real_dim: fcand.real_dim(&fspec),
            restriction_multiple,
            blocks: block_reports,
            form,
            pass: all_pass,
        },
        matrices,
    })
}

/// Enumerate every candidate up to `max_dim` and certify each one.
pub fn classify(
    spec: &GroupSpec,
    max_dim: u64,
    config: &PipelineConfig,
) -> Result<Vec<Certified>, PipelineError> {
    enumerate_candidates(spec, max_dim)
        .iter()
        .map(|c| certify_candidate(spec, c, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hcond::LemmaRoute;
    use crate::satake::{kind_for_slot, Content, Summand};
    use crate::spec::{RawFactor, RawSig, RawSpec, SatakeType};
    use std::collections::BTreeMap;

    fn siegel_spec() -> GroupSpec {
        RawSpec {
            factors: vec![RawFactor {
                name: "S".into(),
                satake_type: SatakeType::III,
                n: 1,
                embeddings: vec!["s1".into()],
                sigs: BTreeMap::new(),
            }],
            generators: vec![],
        }
        .build()
        .unwrap()
    }

    fn quadratic_spec() -> GroupSpec {
        let mut sigs = BTreeMap::new();
        sigs.insert("a1".to_string(), RawSig::Pair(2, 1));
        sigs.insert("a2".to_string(), RawSig::Pair(3, 0));
        RawSpec {
            factors: vec![RawFactor {
                name: "A".into(),
                satake_type: SatakeType::I,
                n: 3,
                embeddings: vec!["a1".into(), "a2".into()],
                sigs,
            }],
            generators: vec![vec![vec!["a1".into(), "a2".into()]]],
        }
        .build()
        .unwrap()
    }

    fn wedge_orbit(spec: &GroupSpec, label: &str) -> Candidate {
        let emb = spec.find_emb(label).unwrap();
        let kind = kind_for_slot(Content::Wedge(1), spec.factor_of(emb), spec.sig(emb)).unwrap();
        let base = Summand::new(vec![Leg { emb, kind }]);
        let parts = spec
            .galois()
            .elements()
            .iter()
            .map(|s| (base.conjugate(spec, s).unwrap(), 1))
            .collect();
        Candidate::new(spec, parts)
    }

    #[test]
    fn siegel_standard_candidate_certifies_end_to_end() {
        let spec = siegel_spec();
        let cand = wedge_orbit(&spec, "s1");
        let config = PipelineConfig::default();
        let cert = certify_candidate(&spec, &cand, &config).unwrap();
        let out = &cert.outcome;
        assert!(out.pass);
        assert!(out.rigid_input);
        assert!(out.trail.is_empty());
        assert_eq!(out.restriction_multiple, None);
        assert_eq!(out.key, "S:s1:std");
        assert_eq!(out.final_key, out.key);
        assert_eq!(out.multiplicity, 1);
        assert_eq!(out.form.dim, 2);
        assert_eq!(out.blocks.len(), 1);
        assert_eq!(out.blocks[0].element, "id");
        let leg = &out.blocks[0].legs[0];
        let h = leg.h.as_ref().unwrap();
        assert!(h.h2_pass);
        assert_eq!(h.lemma_route, LemmaRoute::Own);
        assert!(cert.matrices.is_none());
    }

    #[test]
    fn quadratic_candidate_rigidifies_then_certifies() {
        let spec = quadratic_spec();
        let cand = wedge_orbit(&spec, "a1");
        let config = PipelineConfig::default();
        let cert = certify_candidate(&spec, &cand, &config).unwrap();
        let out = &cert.outcome;
        assert!(out.pass);
        assert!(!out.rigid_input);
        assert_eq!(out.rigidity_index, 1);
        assert_eq!(out.trail.len(), 1);
        assert_eq!(out.trail[0].summand, "A:a2:cwedge(1)");
        assert_eq!(out.restriction_multiple, Some(1));
        assert_eq!(out.group_order, 2);
        assert_eq!(out.final_group_order, 2);
        assert_eq!(out.real_dim, 12);
        assert_eq!(out.final_real_dim, 48);
        assert_eq!(out.blocks.len(), 2);
        assert_eq!(out.form.block_dims, vec![24, 24]);

        // Every block has exactly one distinguished leg with a full
        // certificate; the wedge leg at the mixed slot needs the
        // rescaled diagonal route, the rank-one slot passes on its own.
        for block in &out.blocks {
            let nc: Vec<_> = block.legs.iter().filter(|l| l.noncompact).collect();
            assert_eq!(nc.len(), 1);
            let h = nc[0].h.as_ref().unwrap();
            assert!(h.h1_pass && h.lemma_pass);
            let inv = nc[0].j_invariance.as_ref().unwrap();
            assert_eq!(inv.route, h.lemma_route);
        }
        let routes: Vec<LemmaRoute> = out
            .blocks
            .iter()
            .flat_map(|b| b.legs.iter())
            .filter_map(|l| l.h.as_ref().map(|h| h.lemma_route))
            .collect();
        assert!(routes.contains(&LemmaRoute::WedgeTilde));
        assert!(routes.contains(&LemmaRoute::Own));
    }

    #[test]
    fn unstable_candidate_is_rejected_with_exit_three() {
        let mut sigs = BTreeMap::new();
        sigs.insert("a1".to_string(), RawSig::Pair(1, 1));
        sigs.insert("a2".to_string(), RawSig::Pair(1, 1));
        let spec = RawSpec {
            factors: vec![RawFactor {
                name: "A".into(),
                satake_type: SatakeType::I,
                n: 2,
                embeddings: vec!["a1".into(), "a2".into()],
                sigs,
            }],
            generators: vec![vec![vec!["a1".into(), "a2".into()]]],
        }
        .build()
        .unwrap();
        let e1 = spec.find_emb("a1").unwrap();
        let e2 = spec.find_emb("a2").unwrap();
        let k1 = kind_for_slot(Content::Wedge(1), spec.factor_of(e1), spec.sig(e1)).unwrap();
        let k2 = kind_for_slot(Content::Wedge(1), spec.factor_of(e2), spec.sig(e2)).unwrap();
        let s = Summand::new(vec![Leg { emb: e1, kind: k1 }, Leg { emb: e2, kind: k2 }]);
        let cand = Candidate::new(&spec, vec![(s, 1)]);
        let err = certify_candidate(&spec, &cand, &PipelineConfig::default()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn dead_zone_tolerances_are_an_internal_error() {
        let spec = siegel_spec();
        let cand = wedge_orbit(&spec, "s1");
        let config = PipelineConfig {
            tolerances: Tolerances {
                pass: 1e-30,
                fail_floor: 1e-3,
            },
            ..PipelineConfig::default()
        };
        let err = certify_candidate(&spec, &cand, &config).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn exact_mode_rebuilds_the_form_over_the_gaussian_rationals() {
        let spec = siegel_spec();
        let cand = wedge_orbit(&spec, "s1");
        let config = PipelineConfig {
            exact: true,
            keep_matrices: true,
            ..PipelineConfig::default()
        };
        let cert = certify_candidate(&spec, &cand, &config).unwrap();
        assert!(cert.outcome.pass);
        assert!(cert.outcome.form.exact_structure);
        let m = cert.matrices.as_ref().unwrap();
        assert_eq!(m.e.rows(), 2);
        // The scaled standard form: exp-free data stays exact.
        assert_eq!(m.e.at(0, 1).re, cert.outcome.form.c_noncompact);
    }

    #[test]
    fn classify_certifies_every_enumerated_candidate() {
        let spec = quadratic_spec();
        let config = PipelineConfig::default();
        let outcomes = classify(&spec, 24, &config).unwrap();
        assert!(!outcomes.is_empty());
        for cert in &outcomes {
            assert!(cert.outcome.pass, "failed: {}", cert.outcome.key);
        }
        // Sorted by (dimension, key) and deduplicated.
        let mut keys: Vec<&str> = outcomes.iter().map(|c| c.outcome.key.as_str()).collect();
        let n = keys.len();
        keys.dedup();
        assert_eq!(keys.len(), n);
    }
}

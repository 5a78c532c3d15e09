//! Tensor blocks per summand, block-diagonal assembly over the Galois
//! group, and the positivity scaling search.
//!
//! Each block is the tensor product of its legs' pairing matrices: the
//! alternating form at the distinguished leg, an invariant symmetric
//! form at every compact leg.  The complex structure and the H-element
//! act at the distinguished position and as the identity elsewhere.
//! Blocks are assembled block-diagonally, one per Galois group element
//! in canonical order — conjugate summands repeat verbatim when their
//! stabilizer is nontrivial, which doubles (or worse) the assembled
//! dimension relative to the candidate.
//!
//! The residual re-checks run densely on blocks up to
//! [`DENSE_CHECK_CAP`]; above the cap they switch to a factored route
//! that is algebraically identical: operators of distinct legs commute
//! exactly (disjoint tensor positions), and same-leg commutators and
//! invariance defects scale numerator and denominator by the same
//! Frobenius factor when tensored with identities.

use serde::Serialize;

use super::legs::{LegRole, RealLeg};
use super::FormError;
use crate::linalg::{min_eig_posdef, EigError, Mat, Scalar};

/// Largest block dimension that is re-checked densely.
pub const DENSE_CHECK_CAP: usize = 256;

/// Largest block dimension whose assembled structural identities are
/// re-verified densely in exact mode (per-leg identities are always
/// verified exactly; the dense pass additionally exercises the tensor
/// bookkeeping).
pub const EXACT_DENSE_CAP: usize = 64;

/// The positivity scaling search gives up beyond this value.
pub const MAX_SCALING_N: u64 = 1 << 40;

/// One summand realized on the tensor product of its legs.
#[derive(Clone, Debug)]
pub struct SummandBlock<S: Scalar> {
    /// Legs in tensor order (sorted by embedding label).
    pub legs: Vec<RealLeg<S>>,
    /// Index of the distinguished (noncompact) leg.
    pub noncompact_pos: usize,
    /// Per-leg dimensions in tensor order.
    pub dims: Vec<usize>,
    /// Product of the leg dimensions.
    pub dim: usize,
    /// Unscaled tensor alternating form.
    pub e: Mat<S>,
    /// Complex structure: the distinguished leg's, tensored with
    /// identities.
    pub j: Mat<S>,
    /// H-element image: the distinguished leg's, tensored with
    /// identities.
    pub h: Mat<S>,
}

/// `I ⊗ … ⊗ x ⊗ … ⊗ I` with `x` at position `pos`.
pub fn leg_operator<S: Scalar>(dims: &[usize], pos: usize, x: &Mat<S>) -> Mat<S> {
    let left: usize = dims[..pos].iter().product();
    let right: usize = dims[pos + 1..].iter().product();
    Mat::<S>::identity(left).kron(x).kron(&Mat::identity(right))
}

/// Build one summand block from its legs.  Exactly one leg must be
/// noncompact; the legs are put in tensor order by label.
pub fn summand_block<S: Scalar>(mut legs: Vec<RealLeg<S>>) -> Result<SummandBlock<S>, FormError> {
    if legs.is_empty() {
        return Err(FormError::SupportMismatch {
            reason: "a summand block needs at least one leg".into(),
        });
    }
    legs.sort_by(|a, b| a.label.cmp(&b.label));
    let nc: Vec<usize> = legs
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_noncompact())
        .map(|(i, _)| i)
        .collect();
    if nc.len() != 1 {
        return Err(FormError::SupportMismatch {
            reason: format!(
                "a block carries exactly one distinguished leg, found {} of {}",
                nc.len(),
                legs.len()
            ),
        });
    }
    let pos = nc[0];
    let dims: Vec<usize> = legs.iter().map(|l| l.dim).collect();
    let dim = dims.iter().product();

    let kron_all = |pick: &dyn Fn(usize, &RealLeg<S>) -> Mat<S>| -> Mat<S> {
        let mut acc = pick(0, &legs[0]);
        for (i, leg) in legs.iter().enumerate().skip(1) {
            acc = acc.kron(&pick(i, leg));
        }
        acc
    };
    let e = kron_all(&|_, leg| leg.pairing().clone());
    let j = kron_all(&|i, leg| match &leg.role {
        LegRole::Noncompact { j, .. } if i == pos => j.clone(),
        _ => Mat::identity(leg.dim),
    });
    let h = kron_all(&|i, leg| match &leg.role {
        LegRole::Noncompact { h, .. } if i == pos => h.clone(),
        _ => Mat::identity(leg.dim),
    });

    Ok(SummandBlock {
        legs,
        noncompact_pos: pos,
        dims,
        dim,
        e,
        j,
        h,
    })
}

/// Which route the block-level re-checks took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum H1Route {
    /// Every block was re-checked densely on the assembled matrices.
    Dense,
    /// At least one block exceeded the dense cap and used the factored
    /// route.
    Factored,
}

/// Numerical certificate of the assembled data.
#[derive(Clone, Debug, Serialize)]
pub struct FormCertificate {
    /// Scaling integer found by the doubling search.
    pub n_used: u64,
    /// Scalar applied at noncompact embeddings.
    pub c_noncompact: f64,
    /// Scalar applied at compact embeddings.
    pub c_compact: f64,
    /// Smallest eigenvalue of the symmetrized pairing Gram matrix
    /// after scaling.
    pub min_eig: f64,
    /// ‖E + ᵗE‖_F of the scaled assembled form.
    pub alternating_residual: f64,
    /// ‖EJ − ᵗ(EJ)‖_F of the scaled assembled pairing.
    pub symmetry_residual: f64,
    /// ‖J² + I‖_F of the assembled complex structure.
    pub j_square_residual: f64,
    /// max over blocks / legs / basis images of the form-invariance
    /// defect per unit operator norm.
    pub invariance_residual: f64,
    /// max over blocks of the commutation defect of dρ(H₀) − J/2
    /// against every leg image, per unit operator norm.
    pub full_h1_residual: f64,
    pub h1_route: H1Route,
    /// Whether the structural identities were verified exactly over
    /// the exact scalar field (exact mode only).
    pub exact_structure: bool,
    /// Assembled dimension.
    pub dim: usize,
    /// Per-block dimensions in assembly order.
    pub block_dims: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct AssemblyOptions {
    /// Block-dimension cap for the dense re-check route.
    pub dense_cap: usize,
    /// Demand the structural identities exactly (exact scalars only).
    pub exact: bool,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        AssemblyOptions {
            dense_cap: DENSE_CHECK_CAP,
            exact: false,
        }
    }
}

/// The assembled symplectic data for one candidate.
#[derive(Clone, Debug)]
pub struct AssembledForm<S: Scalar> {
    pub blocks: Vec<SummandBlock<S>>,
    /// Per-block scalar applied to the alternating form.
    pub block_scales: Vec<S>,
    /// Scaled block-diagonal alternating form.
    pub e: Mat<S>,
    /// Block-diagonal complex structure (never scaled).
    pub j: Mat<S>,
    /// Block-diagonal H-element image (never scaled).
    pub h: Mat<S>,
    pub certificate: FormCertificate,
}

impl<S: Scalar> AssembledForm<S> {
    pub fn dim(&self) -> usize {
        self.e.rows()
    }
}

fn to_f64<S: Scalar>(m: &Mat<S>) -> Mat<f64> {
    m.map(|v| v.to_c64().re)
}

fn sym_part(m: &Mat<f64>) -> Mat<f64> {
    m.add_mat(&m.transpose()).scale(&0.5)
}

/// Assemble the blocks (one per Galois element, in canonical order):
/// run the positivity scaling search, apply the per-embedding scalars,
/// and certify the result.
pub fn assemble<S: Scalar>(
    blocks: Vec<SummandBlock<S>>,
    opts: &AssemblyOptions,
) -> Result<AssembledForm<S>, FormError> {
    if blocks.is_empty() {
        return Err(FormError::SupportMismatch {
            reason: "assembly needs at least one block".into(),
        });
    }

    let e_f: Vec<Mat<f64>> = blocks.iter().map(|b| to_f64(&b.e)).collect();
    let j_f: Vec<Mat<f64>> = blocks.iter().map(|b| to_f64(&b.j)).collect();
    let grams: Vec<Mat<f64>> = e_f
        .iter()
        .zip(&j_f)
        .map(|(e, j)| sym_part(&e.matmul(j)))
        .collect();

    // Doubling search: weight the identity-element block by N until the
    // combined Gram matrix is positive definite.
    let mut n: u64 = 1;
    let n_used = loop {
        let mut test = grams[0].scale(&(n as f64));
        for g in &grams[1..] {
            test = test.direct_sum(g);
        }
        match min_eig_posdef(&test) {
            Ok(_) => break n,
            Err(EigError::NotPositive { .. }) => {
                if n >= MAX_SCALING_N {
                    return Err(FormError::PositivityFailed);
                }
                n *= 2;
            }
            Err(err) => return Err(FormError::Eig(err)),
        }
    };

    // Per-embedding scalars: strictly above N at the (noncompact)
    // distinguished leg, inside (0, 1) at compact legs; fixed values
    // keep runs reproducible.
    let c_noncompact = (n_used + 1) as f64;
    let c_compact = 0.5f64;
    let scales: Vec<S> = blocks
        .iter()
        .map(|b| {
            let compact_legs = (b.legs.len() - 1) as u32;
            S::from_ratio((n_used + 1) as i64, 2i64.pow(compact_legs))
        })
        .collect();
    let scales_f: Vec<f64> = blocks
        .iter()
        .map(|b| c_noncompact * c_compact.powi(b.legs.len() as i32 - 1))
        .collect();

    // Assembled matrices over the scalar field.
    let mut e = blocks[0].e.scale(&scales[0]);
    let mut j = blocks[0].j.clone();
    let mut h = blocks[0].h.clone();
    for (b, s) in blocks.iter().zip(&scales).skip(1) {
        e = e.direct_sum(&b.e.scale(s));
        j = j.direct_sum(&b.j);
        h = h.direct_sum(&b.h);
    }

    // Final certified minimum eigenvalue of the scaled Gram matrix.
    let mut final_gram = grams[0].scale(&scales_f[0]);
    for (g, s) in grams.iter().zip(&scales_f).skip(1) {
        final_gram = final_gram.direct_sum(&g.scale(s));
    }
    let min_eig = min_eig_posdef(&final_gram)?;

    // Residuals.  Frobenius norms across a block-diagonal matrix
    // combine as the square root of the per-block sum of squares; the
    // operator-wise residuals combine as maxima.
    let mut alternating_sq = 0.0;
    let mut symmetry_sq = 0.0;
    let mut j_square_sq = 0.0;
    let mut invariance_residual: f64 = 0.0;
    let mut full_h1: f64 = 0.0;
    let mut route = H1Route::Dense;
    for (idx, b) in blocks.iter().enumerate() {
        let es = e_f[idx].scale(&scales_f[idx]);
        alternating_sq += es.add_mat(&es.transpose()).fro_norm().powi(2);
        let pairing = es.matmul(&j_f[idx]);
        symmetry_sq += pairing.sub_mat(&pairing.transpose()).fro_norm().powi(2);
        let jj = j_f[idx].matmul(&j_f[idx]);
        j_square_sq += jj.add_mat(&Mat::identity(b.dim)).fro_norm().powi(2);

        let dense = b.dim <= opts.dense_cap;
        if !dense {
            route = H1Route::Factored;
        }
        invariance_residual =
            invariance_residual.max(block_invariance_residual(b, scales_f[idx], dense));
        full_h1 = full_h1.max(full_h1_residual(b, dense));
    }

    if opts.exact {
        exact_structure_checks(&blocks)?;
    }

    let certificate = FormCertificate {
        n_used,
        c_noncompact,
        c_compact,
        min_eig,
        alternating_residual: alternating_sq.sqrt(),
        symmetry_residual: symmetry_sq.sqrt(),
        j_square_residual: j_square_sq.sqrt(),
        invariance_residual,
        full_h1_residual: full_h1,
        h1_route: route,
        exact_structure: opts.exact,
        dim: e.rows(),
        block_dims: blocks.iter().map(|b| b.dim).collect(),
    };

    Ok(AssembledForm {
        blocks,
        block_scales: scales,
        e,
        j,
        h,
        certificate,
    })
}

/// Form-invariance defect of the block's scaled alternating form under
/// every leg image, per unit operator norm.
pub fn block_invariance_residual<S: Scalar>(
    block: &SummandBlock<S>,
    scale: f64,
    dense: bool,
) -> f64 {
    let mut worst = 0.0f64;
    if dense {
        let e = to_f64(&block.e).scale(&scale);
        for (pos, leg) in block.legs.iter().enumerate() {
            for x in &leg.images {
                let op = leg_operator(&block.dims, pos, &to_f64(x));
                let denom = op.fro_norm();
                if denom == 0.0 {
                    continue;
                }
                let defect = op.transpose().matmul(&e).add_mat(&e.matmul(&op));
                worst = worst.max(defect.fro_norm() / denom);
            }
        }
    } else {
        // ᵗ(I⊗x⊗I)·(⊗F) + (⊗F)·(I⊗x⊗I) = (⊗_{m≠ℓ} F_m) ⊗ (ᵗx·F_ℓ + F_ℓ·x)
        // up to position bookkeeping, and ‖·‖_F is multiplicative over
        // tensor factors.
        let pairings_f: Vec<Mat<f64>> = block.legs.iter().map(|l| to_f64(l.pairing())).collect();
        let norms: Vec<f64> = pairings_f.iter().map(|f| f.fro_norm()).collect();
        for (pos, leg) in block.legs.iter().enumerate() {
            let others_norm: f64 = norms
                .iter()
                .enumerate()
                .filter(|(m, _)| *m != pos)
                .map(|(_, v)| v)
                .product();
            let others_dim: f64 = block
                .dims
                .iter()
                .enumerate()
                .filter(|(m, _)| *m != pos)
                .map(|(_, d)| *d as f64)
                .product();
            for x in &leg.images {
                let xf = to_f64(x);
                let denom = xf.fro_norm() * others_dim.sqrt();
                if denom == 0.0 {
                    continue;
                }
                let local = xf
                    .transpose()
                    .matmul(&pairings_f[pos])
                    .add_mat(&pairings_f[pos].matmul(&xf));
                worst = worst.max(scale * others_norm * local.fro_norm() / denom);
            }
        }
    }
    worst
}

/// Commutation defect of dρ(H₀) − J/2 against every leg image on one
/// block, per unit operator norm.  The factored route uses the leg
/// matrices directly: operators of the other legs commute with the
/// difference exactly, and same-leg commutators pick up the same
/// Frobenius factor in numerator and denominator when tensored with
/// identities.
pub fn full_h1_residual<S: Scalar>(block: &SummandBlock<S>, dense: bool) -> f64 {
    let mut worst = 0.0f64;
    if dense {
        let diff = to_f64(&block.h).sub_mat(&to_f64(&block.j).scale(&0.5));
        for (pos, leg) in block.legs.iter().enumerate() {
            for x in &leg.images {
                let op = leg_operator(&block.dims, pos, &to_f64(x));
                let denom = op.fro_norm();
                if denom == 0.0 {
                    continue;
                }
                worst = worst.max(diff.commutator(&op).fro_norm() / denom);
            }
        }
    } else {
        let leg = &block.legs[block.noncompact_pos];
        let LegRole::Noncompact { j, h, .. } = &leg.role else {
            unreachable!("block construction guarantees the distinguished role");
        };
        let diff = to_f64(h).sub_mat(&to_f64(j).scale(&0.5));
        for x in &leg.images {
            let xf = to_f64(x);
            let denom = xf.fro_norm();
            if denom == 0.0 {
                continue;
            }
            worst = worst.max(diff.commutator(&xf).fro_norm() / denom);
        }
    }
    worst
}

/// Exact-mode structural identities.  Per leg: the alternating form is
/// exactly alternating and invariant, the complex structure squares to
/// −1 exactly, the pairing is exactly symmetric, and compact forms are
/// exactly symmetric and invariant.  Small blocks additionally get the
/// assembled tensor identities verified densely.
fn exact_structure_checks<S: Scalar>(blocks: &[SummandBlock<S>]) -> Result<(), FormError> {
    let fail = |identity: &str, defect: f64| -> FormError {
        FormError::Structure {
            identity: identity.to_string(),
            defect,
        }
    };
    let check_zero = |m: &Mat<S>, identity: &str| -> Result<(), FormError> {
        if m.is_zero_within(0.0) {
            Ok(())
        } else {
            Err(fail(identity, m.max_abs()))
        }
    };
    for b in blocks {
        for leg in &b.legs {
            match &leg.role {
                LegRole::Noncompact { e, j, h } => {
                    check_zero(&e.add_mat(&e.transpose()), "leg form alternating")?;
                    check_zero(
                        &j.matmul(j).add_mat(&Mat::identity(leg.dim)),
                        "leg complex structure squares to -1",
                    )?;
                    let p = e.matmul(j);
                    check_zero(&p.sub_mat(&p.transpose()), "leg pairing symmetric")?;
                    for x in leg.images.iter().chain(std::iter::once(h)) {
                        check_zero(
                            &x.transpose().matmul(e).add_mat(&e.matmul(x)),
                            "leg form invariant",
                        )?;
                    }
                }
                LegRole::Compact { gamma, .. } => {
                    check_zero(&gamma.sub_mat(&gamma.transpose()), "compact form symmetric")?;
                    for x in &leg.images {
                        check_zero(
                            &x.transpose().matmul(gamma).add_mat(&gamma.matmul(x)),
                            "compact form invariant",
                        )?;
                    }
                }
            }
        }
        if b.dim <= EXACT_DENSE_CAP {
            check_zero(&b.e.add_mat(&b.e.transpose()), "block form alternating")?;
            check_zero(
                &b.j.matmul(&b.j).add_mat(&Mat::identity(b.dim)),
                "block complex structure squares to -1",
            )?;
            let p = b.e.matmul(&b.j);
            check_zero(&p.sub_mat(&p.transpose()), "block pairing symmetric")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::legs::real_leg;
    use crate::linalg::{Qi, C64};
    use crate::realize::build_leg;
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

    fn split_leg(label: &str) -> RealLeg<f64> {
        let f = factor(SatakeType::III, 1);
        let rep = build_leg::<C64>(&f, Signature::Split, LocalKind::Std).unwrap();
        real_leg(label, &rep, 1e-10)
            .unwrap()
            .convert(|v| v.re)
    }

    fn compact_leg(label: &str) -> RealLeg<f64> {
        let f = factor(SatakeType::I, 2);
        let rep = build_leg::<C64>(&f, Signature::Unitary { p: 2, q: 0 }, LocalKind::CompactWedge(1))
            .unwrap();
        real_leg(label, &rep, 1e-10)
            .unwrap()
            .convert(|v| v.re)
    }

    fn two_leg_block() -> SummandBlock<f64> {
        summand_block(vec![split_leg("a1"), compact_leg("b1")]).unwrap()
    }

    #[test]
    fn tensor_form_matches_the_bilinear_oracle() {
        let block = two_leg_block();
        let f1 = block.legs[0].pairing().clone();
        let f2 = block.legs[1].pairing().clone();
        let (d1, d2) = (block.dims[0], block.dims[1]);
        let oracle = Mat::from_fn(d1 * d2, d1 * d2, |r, c| {
            let (i1, i2) = (r / d2, r % d2);
            let (j1, j2) = (c / d2, c % d2);
            f1.at(i1, j1) * f2.at(i2, j2)
        });
        assert!(block.e.eq_exact(&oracle));
    }

    #[test]
    fn blocks_require_exactly_one_distinguished_leg() {
        let err = summand_block(vec![compact_leg("a1"), compact_leg("b1")]).unwrap_err();
        assert!(matches!(err, FormError::SupportMismatch { .. }));
        let err = summand_block(vec![split_leg("a1"), split_leg("b1")]).unwrap_err();
        assert!(matches!(err, FormError::SupportMismatch { .. }));
        let err = summand_block(Vec::<RealLeg<f64>>::new()).unwrap_err();
        assert!(matches!(err, FormError::SupportMismatch { .. }));
    }

    #[test]
    fn legs_are_put_in_label_order() {
        let block = summand_block(vec![compact_leg("b1"), split_leg("a1")]).unwrap();
        assert_eq!(block.legs[0].label, "a1");
        assert_eq!(block.noncompact_pos, 0);
    }

    #[test]
    fn single_block_assembly_certifies_at_n_equal_one() {
        let form = assemble(vec![two_leg_block()], &AssemblyOptions::default()).unwrap();
        let cert = &form.certificate;
        assert_eq!(cert.n_used, 1);
        assert_eq!(cert.c_noncompact, 2.0);
        assert_eq!(cert.c_compact, 0.5);
        assert!(cert.min_eig > 0.0);
        assert!(cert.alternating_residual < 1e-12);
        assert!(cert.symmetry_residual < 1e-12);
        assert!(cert.j_square_residual < 1e-12);
        assert!(cert.invariance_residual < 1e-10);
        assert!(cert.full_h1_residual < 1e-10);
        assert_eq!(cert.h1_route, H1Route::Dense);
        assert_eq!(form.dim(), 8);
    }

    #[test]
    fn repeated_blocks_assemble_block_diagonally() {
        let form = assemble(
            vec![two_leg_block(), two_leg_block()],
            &AssemblyOptions::default(),
        )
        .unwrap();
        assert_eq!(form.dim(), 16);
        assert_eq!(form.certificate.block_dims, vec![8, 8]);
        assert!(form.certificate.min_eig > 0.0);
        // Off-diagonal coupling is structurally zero.
        assert!(form.e.block(0, 8, 8, 8).is_zero_within(0.0));
    }

    #[test]
    fn sign_flipped_form_exhausts_the_scaling_search() {
        let mut block = two_leg_block();
        block.e = block.e.neg_mat();
        let err = assemble(vec![block], &AssemblyOptions::default()).unwrap_err();
        assert!(matches!(err, FormError::PositivityFailed));
    }

    #[test]
    fn factored_and_dense_checks_agree() {
        let mut block = two_leg_block();
        // Perturb the H-element so the commutation defect is nonzero;
        // the two routes must still measure the same number.
        let bump = block.legs[0].images[0].scale(&1e-3);
        if let LegRole::Noncompact { h, .. } = &mut block.legs[0].role {
            *h = h.add_mat(&bump);
        }
        let rebuilt = summand_block(block.legs).unwrap();
        let dense_h1 = full_h1_residual(&rebuilt, true);
        let fact_h1 = full_h1_residual(&rebuilt, false);
        assert!(dense_h1 > 1e-5, "perturbation must register: {dense_h1}");
        assert!(
            (dense_h1 - fact_h1).abs() < 1e-12,
            "routes disagree: {dense_h1} vs {fact_h1}"
        );

        let dense_inv = block_invariance_residual(&rebuilt, 2.0, true);
        let fact_inv = block_invariance_residual(&rebuilt, 2.0, false);
        assert!(
            (dense_inv - fact_inv).abs() < 1e-12,
            "invariance routes disagree: {dense_inv} vs {fact_inv}"
        );
    }

    #[test]
    fn oversized_blocks_take_the_factored_route() {
        let opts = AssemblyOptions {
            dense_cap: 4,
            ..AssemblyOptions::default()
        };
        let form = assemble(vec![two_leg_block()], &opts).unwrap();
        assert_eq!(form.certificate.h1_route, H1Route::Factored);
        assert!(form.certificate.full_h1_residual < 1e-10);
        assert!(form.certificate.invariance_residual < 1e-10);
    }

    #[test]
    fn exact_assembly_over_exact_scalars() {
        let f = factor(SatakeType::I, 2);
        let rep = build_leg::<Qi>(&f, Signature::Unitary { p: 1, q: 1 }, LocalKind::StdPlusContra)
            .unwrap();
        let nc = real_leg("a1", &rep, 0.0).unwrap();
        let fc = factor(SatakeType::I, 2);
        let repc = build_leg::<Qi>(&fc, Signature::Unitary { p: 2, q: 0 }, LocalKind::CompactWedge(1))
            .unwrap();
        let cc = real_leg("b1", &repc, 0.0).unwrap();
        let block = summand_block(vec![nc, cc]).unwrap();
        let opts = AssemblyOptions {
            exact: true,
            ..AssemblyOptions::default()
        };
        let form = assemble(vec![block], &opts).unwrap();
        let cert = &form.certificate;
        assert!(cert.exact_structure);
        assert_eq!(cert.alternating_residual, 0.0);
        assert_eq!(cert.symmetry_residual, 0.0);
        assert_eq!(cert.j_square_residual, 0.0);
        assert!(cert.min_eig > 0.0);
    }

    #[test]
    fn exact_mode_rejects_corrupted_structure() {
        let f = factor(SatakeType::I, 2);
        let rep = build_leg::<Qi>(&f, Signature::Unitary { p: 1, q: 1 }, LocalKind::StdPlusContra)
            .unwrap();
        let nc = real_leg("a1", &rep, 0.0).unwrap();
        let mut block = summand_block(vec![nc]).unwrap();
        if let LegRole::Noncompact { e, .. } = &mut block.legs[0].role {
            e.set(0, 0, Qi::from_int(1));
        }
        let opts = AssemblyOptions {
            exact: true,
            ..AssemblyOptions::default()
        };
        let err = assemble(vec![block], &opts).unwrap_err();
        assert!(matches!(err, FormError::Structure { .. }));
    }
}

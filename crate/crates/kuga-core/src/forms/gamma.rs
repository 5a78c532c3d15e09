//! Positive-definite invariant symmetric forms on one realized leg.
//!
//! The images handed in are real matrices in real coordinates.  For
//! every leg the engine itself produces, the images are skew, so the
//! identity matrix is already invariant and positive; that fast path
//! is taken whenever it applies.  The general path solves the linear
//! invariance system over the space of symmetric matrices and then
//! looks for a positive-definite point in the solution space, first by
//! projecting the identity onto it, then by a deterministic sweep of
//! signed basis combinations.

use super::FormError;
use crate::linalg::{min_eig_posdef, nullspace, solve_linear, Mat, Scalar};

/// Module-dimension cap for the general solver: the unknown count grows
/// as d(d+1)/2 and the row count as (basis size)·d², so large legs must
/// come through the fast path.
pub const GAMMA_SOLVER_CAP: usize = 32;

/// Absolute entry tolerance for the skewness fast path.
const SKEW_TOL: f64 = 1e-12;

/// Rank tolerance for the nullspace of the invariance system.
const NULLSPACE_TOL: f64 = 1e-10;

/// How the invariant form was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaRoute {
    /// Every image is skew, so the identity matrix is invariant.
    Identity,
    /// General nullspace solve; records the dimension of the space of
    /// invariant symmetric forms.
    Solved { space_dim: usize },
}

/// Find a symmetric positive-definite `γ` with `ᵗx·γ + γ·x = 0` for
/// every image `x` of the leg's algebra basis.
pub fn invariant_symmetric_form<S: Scalar>(
    images: &[Mat<S>],
    dim: usize,
) -> Result<(Mat<S>, GammaRoute), FormError> {
    let worst_skew = images
        .iter()
        .map(|x| x.add_mat(&x.transpose()).max_abs())
        .fold(0.0, f64::max);
    if worst_skew <= SKEW_TOL {
        return Ok((Mat::identity(dim), GammaRoute::Identity));
    }

    let basis = solve_invariance_system(images, dim)?;
    if basis.is_empty() {
        return Err(FormError::GammaUnsolvable {
            reason: "the invariance system has no symmetric solution".into(),
        });
    }
    let space_dim = basis.len();
    match positive_point(&basis) {
        Some(gamma) => Ok((gamma, GammaRoute::Solved { space_dim })),
        None => Err(FormError::GammaUnsolvable {
            reason: format!(
                "no positive-definite point found in the {space_dim}-dimensional solution space"
            ),
        }),
    }
}

/// Basis of the space of symmetric matrices `γ` with
/// `ᵗx·γ + γ·x = 0` for all images `x`.
fn solve_invariance_system<S: Scalar>(
    images: &[Mat<S>],
    dim: usize,
) -> Result<Vec<Mat<S>>, FormError> {
    if dim > GAMMA_SOLVER_CAP {
        return Err(FormError::GammaUnsolvable {
            reason: format!(
                "module dimension {dim} exceeds the general solver cap {GAMMA_SOLVER_CAP}"
            ),
        });
    }
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|i| (i..dim).map(move |j| (i, j)))
        .collect();
    let n_unknown = pairs.len();
    let mut a = Mat::<S>::zeros(images.len() * dim * dim, n_unknown);
    for (ix, x) in images.iter().enumerate() {
        let xt = x.transpose();
        for (col, &(i, j)) in pairs.iter().enumerate() {
            let b = sym_basis_mat::<S>(dim, i, j);
            let c = xt.matmul(&b).add_mat(&b.matmul(x));
            for r in 0..dim {
                for s in 0..dim {
                    a.set(ix * dim * dim + r * dim + s, col, c.at(r, s).clone());
                }
            }
        }
    }
    let vectors = nullspace(&a, NULLSPACE_TOL);
    Ok(vectors
        .iter()
        .map(|v| {
            let mut m = Mat::<S>::zeros(dim, dim);
            for (row, &(i, j)) in pairs.iter().enumerate() {
                let val = v.at(row, 0).clone();
                m.set(i, j, val.clone());
                if i != j {
                    m.set(j, i, val);
                }
            }
            m
        })
        .collect())
}

/// `E_ii`, or `E_ij + E_ji` for `i < j`.
fn sym_basis_mat<S: Scalar>(dim: usize, i: usize, j: usize) -> Mat<S> {
    let mut b = Mat::<S>::zeros(dim, dim);
    b.set(i, j, S::one());
    if i != j {
        b.set(j, i, S::one());
    }
    b
}

/// Search the span of `basis` for a positive-definite point: project
/// the identity onto the span (normal equations under the trace
/// pairing), then sweep signed combinations of the basis matrices.
fn positive_point<S: Scalar>(basis: &[Mat<S>]) -> Option<Mat<S>> {
    let k = basis.len();
    let mut candidates: Vec<Mat<S>> = Vec::new();

    let mut g = Mat::<S>::zeros(k, k);
    let mut rhs = Mat::<S>::zeros(k, 1);
    for u in 0..k {
        for v in 0..k {
            g.set(u, v, frob_inner(&basis[u], &basis[v]));
        }
        rhs.set(u, 0, basis[u].trace());
    }
    if let Ok(coeffs) = solve_linear(&g, &rhs, 1e-12) {
        let mut proj = Mat::<S>::zeros(basis[0].rows(), basis[0].cols());
        for (u, b) in basis.iter().enumerate() {
            proj = proj.add_mat(&b.scale(coeffs.at(u, 0)));
        }
        candidates.push(proj);
    }

    for b in basis {
        candidates.push(b.clone());
        candidates.push(b.neg_mat());
    }
    if k >= 2 && k <= 8 {
        for signs in 0u32..(1 << k) {
            let mut combo = Mat::<S>::zeros(basis[0].rows(), basis[0].cols());
            for (u, b) in basis.iter().enumerate() {
                let term = if signs >> u & 1 == 0 {
                    b.clone()
                } else {
                    b.neg_mat()
                };
                combo = combo.add_mat(&term);
            }
            candidates.push(combo);
        }
    }

    candidates.into_iter().find(is_positive_definite)
}

/// `tr(ᵗa·b)`, the trace pairing on real matrices.
fn frob_inner<S: Scalar>(a: &Mat<S>, b: &Mat<S>) -> S {
    a.transpose().matmul(b).trace()
}

fn is_positive_definite<S: Scalar>(m: &Mat<S>) -> bool {
    let f = m.map(|v| v.to_c64().re);
    let sym = f.add_mat(&f.transpose()).scale(&0.5);
    matches!(min_eig_posdef(&sym), Ok(lam) if lam > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::realize::{algebra, realify_operator};

    /// Real-coordinate images of the compact standard leg on su(2).
    fn su2_std_real_images() -> Vec<Mat<C64>> {
        let alg = algebra::su_pq::<C64>(2, 0);
        let target = crate::realize::complex_coordinate_target::<C64>(2);
        alg.basis
            .iter()
            .map(|x| {
                let realified = realify_operator(x, 2);
                target
                    .operator_in_real_coords(&realified)
                    .map(|v| C64::new(v.re, 0.0))
            })
            .collect()
    }

    #[test]
    fn compact_standard_leg_takes_the_identity_fast_path() {
        let images = su2_std_real_images();
        let (gamma, route) = invariant_symmetric_form(&images, 4).unwrap();
        assert_eq!(route, GammaRoute::Identity);
        assert!(gamma.eq_exact(&Mat::identity(4)));
    }

    #[test]
    fn compact_standard_leg_solution_space_is_one_dimensional() {
        let images = su2_std_real_images();
        let basis = solve_invariance_system(&images, 4).unwrap();
        assert_eq!(basis.len(), 1);
        // The general route lands on a multiple of the identity.
        let gamma = positive_point(&basis).expect("positive point");
        let scaled = gamma.scale(&(C64::new(1.0, 0.0) / *gamma.at(0, 0)));
        assert!(scaled.approx_eq(&Mat::identity(4), 1e-9));
    }

    #[test]
    fn invariance_residual_of_solved_form_vanishes() {
        let images = su2_std_real_images();
        let basis = solve_invariance_system(&images, 4).unwrap();
        let gamma = positive_point(&basis).unwrap();
        for x in &images {
            let resid = x.transpose().matmul(&gamma).add_mat(&gamma.matmul(x));
            assert!(resid.max_abs() < 1e-9);
        }
    }

    #[test]
    fn nilpotent_image_has_no_positive_invariant_form() {
        // ᵗx·γ + γ·x = 0 forces γ = diag(0, c): semidefinite only.
        let mut x = Mat::<C64>::zeros(2, 2);
        x.set(0, 1, C64::new(1.0, 0.0));
        let err = invariant_symmetric_form(&[x], 2).unwrap_err();
        assert!(matches!(err, FormError::GammaUnsolvable { .. }));
    }

    #[test]
    fn oversized_general_solve_is_refused() {
        // A non-skew image forces the general path, which caps the
        // module dimension.
        let d = GAMMA_SOLVER_CAP + 1;
        let mut x = Mat::<C64>::zeros(d, d);
        x.set(0, 0, C64::new(1.0, 0.0));
        let err = invariant_symmetric_form(&[x], d).unwrap_err();
        assert!(matches!(err, FormError::GammaUnsolvable { .. }));
    }

    #[test]
    fn projection_finds_points_the_basis_elements_miss() {
        // Span of diag(2, −1) and diag(−1, 1): both basis directions
        // are indefinite, but the span contains the identity and the
        // projection step recovers it.
        let a = Mat::from_diag(&[C64::new(2.0, 0.0), C64::new(-1.0, 0.0)]);
        let b = Mat::from_diag(&[C64::new(-1.0, 0.0), C64::new(1.0, 0.0)]);
        let point = positive_point(&[a, b]).expect("positive point");
        let f = point.map(|v| v.re);
        let sym = f.add_mat(&f.transpose()).scale(&0.5);
        assert!(min_eig_posdef(&sym).unwrap() > 0.0);
    }

    #[test]
    fn signed_sweep_covers_a_singular_projection_system() {
        // A repeated basis matrix makes the projection's normal
        // equations singular; the signed sweep still finds −a.
        let a = Mat::from_diag(&[C64::new(-1.0, 0.0), C64::new(-2.0, 0.0)]);
        let point = positive_point(&[a.clone(), a]).expect("positive point");
        let f = point.map(|v| v.re);
        let sym = f.add_mat(&f.transpose()).scale(&0.5);
        assert!(min_eig_posdef(&sym).unwrap() > 0.0);
    }

    #[test]
    fn empty_cone_is_reported_unsolvable() {
        // Both basis matrices are trace-free, so every combination is a
        // trace-free symmetric matrix and never positive definite.
        let a = Mat::from_diag(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        let b = Mat::from_rows(vec![
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        ]);
        assert!(positive_point(&[a, b]).is_none());
    }
}

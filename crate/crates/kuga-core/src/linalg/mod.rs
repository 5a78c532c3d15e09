//! Dense linear algebra over exchangeable scalar fields.
//!
//! The certification pipeline runs the same constructions in two regimes:
//! fast floating point (`f64` / [`C64`]) for large blocks, and exact
//! Gaussian-rational arithmetic ([`Qi`]) to confirm the small structural
//! identities with no rounding at all.  [`Mat`] is generic over the
//! [`Scalar`] trait so every builder is written once.

mod eig;
mod expm;
mod mat;
mod scalar;
mod solve;

pub use eig::{jacobi_eigenvalues, jacobi_eigh, min_eig_posdef, Cholesky, EigError};
pub use expm::expm;
pub use mat::Mat;
pub use scalar::{FloatScalar, Qi, Scalar, C64};
pub use solve::{lstsq_hermitian, nullspace, solve_linear, SolveError};

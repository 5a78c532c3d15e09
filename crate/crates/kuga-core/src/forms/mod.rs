//! Invariant-form factory: positive symmetric forms on compact legs,
//! the tensor alternating form and complex structure on each summand
//! block, block-diagonal assembly over the Galois group, and the
//! positivity scaling search.
//!
//! The construction is generic over the scalar field.  The float
//! pipeline instantiates it over `f64` after transporting every leg to
//! real coordinates; the exact pipeline instantiates it over [`Qi`]
//! and additionally demands that the structural identities (form
//! alternating, complex structure squaring to −1, pairing symmetric)
//! hold with zero defect.  Positivity is always certified in floating
//! point — it is an open condition, so exact arithmetic adds nothing.
//!
//! [`Qi`]: crate::linalg::Qi

pub mod assemble;
pub mod gamma;
pub mod legs;

use thiserror::Error;

use crate::linalg::EigError;

pub use assemble::{
    assemble, full_h1_residual, leg_operator, summand_block, AssembledForm, AssemblyOptions,
    FormCertificate, H1Route, SummandBlock, DENSE_CHECK_CAP, EXACT_DENSE_CAP, MAX_SCALING_N,
};
pub use gamma::{invariant_symmetric_form, GammaRoute, GAMMA_SOLVER_CAP};
pub use legs::{check_j_invariance, noncompact_gamma, real_leg, JInvariance, LegRole, RealLeg};

#[derive(Debug, Error)]
pub enum FormError {
    #[error("{context}: expected a real matrix in real coordinates, imaginary defect {defect:.3e}")]
    NotReal { context: String, defect: f64 },
    #[error("no positive-definite invariant symmetric form: {reason}")]
    GammaUnsolvable { reason: String },
    #[error("support mismatch: {reason}")]
    SupportMismatch { reason: String },
    #[error("positivity scaling search exhausted (N > 2^40); the assembled pairing has a sign error upstream")]
    PositivityFailed,
    #[error("structural identity `{identity}` violated with defect {defect:.3e}")]
    Structure { identity: String, defect: f64 },
    #[error(transparent)]
    Eig(#[from] EigError),
}

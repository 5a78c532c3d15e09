//! Classification and numerical certification of symplectic representations
//! of hermitian algebraic groups that define Kuga fiber varieties.
//!
//! The crate is organized in layers:
//!
//! * [`linalg`] — dense matrices over exchangeable scalar fields
//!   (`f64`, complex doubles, exact Gaussian rationals), with the
//!   eigen/exponential/nullspace routines the certification layer needs.
//! * [`spec`] — the group-datum description language: parser, validator,
//!   canonical renderer, and Galois-action bookkeeping.
//! * [`satake`] — symbolic classification: local summand kinds, Galois
//!   conjugation, stability and rigidity analysis, and the candidate
//!   enumerator.
//! * [`realize`] — explicit matrix realizations of the local pieces:
//!   Lie-algebra bases, realifications, exterior powers, Clifford/spin
//!   constructions, and distinguished central elements.
//! * [`hcond`] — numerical certificates for the two commutation
//!   conditions and the exponential-lemma check.
//! * [`forms`] — invariant-form solving and the assembly of the global
//!   alternating form together with its positivity certificate.
//! * [`rigidify`] — the augmentation construction that repairs
//!   non-rigid candidates while preserving the original factors.
//! * [`report`] — deterministic JSON report structures and rendering.
//! * [`pipeline`] — end-to-end orchestration used by the CLI.

pub mod hcond;
pub mod forms;
pub mod linalg;
pub mod pipeline;
pub mod realize;
pub mod report;
pub mod rigidify;
pub mod satake;
pub mod spec;

pub use linalg::{Mat, Qi, Scalar, C64};

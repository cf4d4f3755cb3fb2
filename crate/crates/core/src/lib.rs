//! Orthogonal polynomials for the oscillatory weight e^{i omega x} on [-1,1].
//!
//! The crate builds moments, three-term recurrence coefficients and complex
//! Gaussian quadrature rules for the (formal, non-Hermitian) orthogonality
//! induced by the weight, traces the zero-attracting S-curve of the associated
//! equilibrium problem, and evaluates the closed-form large-degree asymptotic
//! predictions for the polynomials and their recurrence coefficients so they
//! can be compared against computed ground truth.
//!
//! Everything runs in configurable-decimal-digit multiprecision arithmetic;
//! see [`precision`] for the scalar layer.

pub mod asymptotics;
pub mod error;
pub mod io;
pub(crate) mod numutil;
pub mod orthopoly;
pub mod potential;
pub mod precision;
pub mod verify;

pub use error::{Error, Result};
pub use precision::{BranchMode, MPComplex, PrecisionContext};

/// Schema tag stamped on every JSON artifact.
pub const SCHEMA_TAG: &str = "oscgauss/1";

/// Library version, embedded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

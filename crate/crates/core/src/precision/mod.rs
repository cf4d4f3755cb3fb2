//! Multiprecision scalar layer: precision contexts, complex arithmetic and the
//! branched/special functions everything else consumes.
//!
//! All values are immutable after construction and all operations are pure;
//! precision is carried explicitly by [`PrecisionContext`] (no ambient global
//! rounding state).

mod bessel;
mod branch;
mod complex;
mod ctx;

pub use bessel::{bessel_j0, bessel_j1};
pub use branch::{complex_arccos, side_limit_offset, sqrt_zsq_minus_one, BranchMode};
pub use complex::MPComplex;
pub use ctx::PrecisionContext;

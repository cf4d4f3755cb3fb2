//! Formal orthogonal polynomials for the weight `e^{i omega x}` on `[-1,1]`:
//! moments, three-term recurrence, polynomial evaluation, zeros and complex
//! Gaussian quadrature.
//!
//! The bilinear form `<f, g> = int f g e^{i omega x} dx` carries no
//! conjugation, so existence of the degree-`n` polynomial is a genuine
//! question (it fails at `omega = k pi` for odd degrees); the elimination
//! reports it per degree rather than assuming it.

mod moments;
mod quadrature;
mod recurrence;
mod zeros;

pub use moments::{moments, MomentTable};
pub use quadrature::{integrate, oracle_integrate, quadrature_rule, QuadratureRule};
pub use recurrence::{
    build_recurrence, eval_poly, eval_poly_with_deriv, monic_coefficients,
    orthogonality_residual, recurrence_from_moments, MonicPolynomial, ProblemParams,
    RecurrenceTable,
};
pub use zeros::zeros;

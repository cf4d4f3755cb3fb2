//! Equilibrium-measure objects for the external field `V(x) = -i lambda x`:
//! the coupling function `h`, the critical coupling `lambda0`, the conformal
//! maps `varphi`/`phi`/`xi`/`g`, the equilibrium density, the quadratic
//! differential `Q_lambda`, the S-curve tracer, trajectory continuation, and
//! regime classification.

mod classify;
mod scalar;
mod scurve;
mod sproperty;
mod trajectory;

pub use classify::{classify, QDClassification, Regime};
pub use scalar::{
    cauchy_transform_w, ell, equilibrium_density, g_function, h_of_lambda, phi, phi_prime,
    q_lambda, solve_lambda0, varphi, xi, xi_prime, z_star,
};
pub use scurve::{trace_scurve, SCurve};
pub use sproperty::{log_potential, s_property_residual, variational_residual};
pub use trajectory::{
    trace_trajectory, zstar_launch_angles, Origin, Termination, Trajectory,
};

//! Zeros of the formal orthogonal polynomials by simultaneous iteration.

use rug::Float;

use crate::error::{Error, Result};
use crate::orthopoly::recurrence::{eval_poly_with_deriv, monic_coefficients, RecurrenceTable};
use crate::potential::SCurve;
use crate::precision::{MPComplex, PrecisionContext};

const MAX_ITERS: usize = 200;

/// All `n` roots of `p_n`, by Aberth–Ehrlich simultaneous iteration on the
/// monic coefficients followed by a Newton polish through the recurrence.
///
/// Initial guesses come from equal-equilibrium-mass points of `init` when a
/// curve is provided (the zeros accumulate on it), otherwise from Chebyshev
/// points of `[-1,1]`.
pub fn zeros(
    rec: &RecurrenceTable,
    n: usize,
    ctx: &PrecisionContext,
    init: Option<&SCurve>,
) -> Result<Vec<MPComplex>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let p = ctx.prec();
    if n == 1 {
        // single root at b_0
        let poly = monic_coefficients(rec, 1, ctx)?;
        return Ok(vec![-poly.coeffs()[0].clone()]);
    }
    let poly = monic_coefficients(rec, n, ctx)?;

    let mut z: Vec<MPComplex> = match init {
        Some(curve) => curve.equal_mass_points(n),
        None => {
            let pi = ctx.pi();
            (0..n)
                .map(|j| {
                    let theta =
                        Float::with_val(p, 2 * j as u32 + 1) * &pi / Float::with_val(p, 2 * n as u32);
                    MPComplex::from_real(theta.cos())
                })
                .collect()
        }
    };
    // break coincidences and real-axis symmetry traps with a small upward
    // offset; the polynomial is not real so roots are genuinely complex
    let eps = ctx.float(1e-3);
    for (j, zj) in z.iter_mut().enumerate() {
        let wiggle = Float::with_val(p, &eps * &Float::with_val(p, 1.0 + 0.1 * j as f64));
        *zj = zj.add(&MPComplex::new(Float::new(p), wiggle));
    }

    let tol = ctx.tol();
    let mut converged = false;
    for _ in 0..MAX_ITERS {
        let mut max_move = Float::new(p);
        for i in 0..n {
            let val = poly.eval(&z[i]);
            let der = poly.eval_deriv(&z[i]);
            if der.is_zero() {
                continue;
            }
            let newton = val.div(&der);
            // Aberth correction: w = N / (1 - N * sum_{j!=i} 1/(z_i - z_j))
            let mut s = MPComplex::zero(p);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    s = s.add(&z[i].sub(zj).recip());
                }
            }
            let denom = MPComplex::one(p).sub(&newton.mul(&s));
            let w = if denom.is_zero() { newton } else { newton.div(&denom) };
            let step = w.abs();
            if step > max_move {
                max_move = step;
            }
            z[i] = z[i].sub(&w);
        }
        if max_move < tol.clone() * 1000u32 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "Aberth iteration for n = {n} did not settle in {MAX_ITERS} sweeps"
        )));
    }

    // Newton polish through the recurrence evaluation, which is better
    // conditioned than the expanded coefficients at higher degree
    let half_tol = tol.clone().sqrt();
    for zi in z.iter_mut() {
        for _ in 0..4 {
            let (val, der) = eval_poly_with_deriv(rec, n, zi)?;
            if der.is_zero() {
                break;
            }
            let w = val.div(&der);
            let done = w.abs() < tol;
            *zi = zi.sub(&w);
            if done {
                break;
            }
        }
        let (val, der) = eval_poly_with_deriv(rec, n, zi)?;
        let local_scale = Float::with_val(p, der.abs()).max(&Float::with_val(p, 1));
        if val.abs() > Float::with_val(p, &half_tol * &local_scale) {
            return Err(Error::NonConvergence(format!(
                "root polish left |p_n| = {:e} at {zi}",
                val.abs().to_f64()
            )));
        }
    }

    z.sort_by(|a, b| {
        let (ar, ai) = a.to_f64s();
        let (br, bi) = b.to_f64s();
        ar.partial_cmp(&br)
            .unwrap()
            .then(ai.partial_cmp(&bi).unwrap())
    });
    Ok(z)
}

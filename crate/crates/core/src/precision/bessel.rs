use rug::Float;

use crate::error::{Error, Result};
use crate::precision::{MPComplex, PrecisionContext};

const LN10: f64 = std::f64::consts::LN_10;

/// Bessel function J0 at complex argument, certified to `ctx.tol()`.
///
/// Power-series summation below a precision-dependent crossover, Hankel
/// asymptotic expansion above it. The crossover is where the asymptotic
/// series can first reach the tolerance, so the two branches overlap.
pub fn bessel_j0(z: &MPComplex, ctx: &PrecisionContext) -> Result<MPComplex> {
    bessel_j(0, z, ctx)
}

/// Bessel function J1 at complex argument, certified to `ctx.tol()`.
pub fn bessel_j1(z: &MPComplex, ctx: &PrecisionContext) -> Result<MPComplex> {
    bessel_j(1, z, ctx)
}

fn bessel_j(nu: u32, z: &MPComplex, ctx: &PrecisionContext) -> Result<MPComplex> {
    if !z.is_finite() {
        return Err(Error::DomainError("non-finite Bessel argument".into()));
    }
    // J0 even, J1 odd: fold into Re z >= 0 so the asymptotic branch stays
    // away from the negative real axis.
    if z.re.is_sign_negative() && !z.re.is_zero() {
        let r = bessel_j(nu, &-z, ctx)?;
        return Ok(if nu == 1 { -r } else { r });
    }
    let az = z.abs().to_f64();
    // smallest asymptotic term ~ e^{-2|z|}; usable once that clears tol
    let digits = ctx.digits() as f64;
    if az > digits * LN10 / 2.0 + 8.0 {
        asymptotic(nu, z, ctx)
    } else {
        series(nu, z, ctx)
    }
}

/// Ascending power series at boosted precision to absorb cancellation
/// (the largest term is ~e^{|z|} while |J| is only ~e^{|Im z|}).
fn series(nu: u32, z: &MPComplex, ctx: &PrecisionContext) -> Result<MPComplex> {
    let az = z.abs().to_f64();
    let boost = (0.45 * az).ceil() as u32 + 10;
    let wctx = ctx.boosted(boost);
    let p = wctx.prec();
    // truncate relative to the boosted context: the max partial sum is
    // ~e^{|z|} large, and the discarded tail must clear the *outer*
    // tolerance after that cancellation
    let tol = wctx.tol();

    let zw = MPComplex::new(Float::with_val(p, &z.re), Float::with_val(p, &z.im));
    let quarter_sq = zw.mul(&zw).scale(&Float::with_val(p, 0.25f64));

    let mut term = MPComplex::one(p);
    if nu == 1 {
        term = zw.scale(&Float::with_val(p, 0.5f64));
    }
    let mut sum = term.clone();
    let mut max_partial = sum.abs();
    let mut small_streak = 0u32;
    let cap = 64 + 4 * (az as usize + wctx.digits() as usize);
    for k in 1..=cap {
        let denom = Float::with_val(p, k as u32) * Float::with_val(p, (k as u32) + nu);
        term = -term.mul(&quarter_sq).unscale(&denom);
        sum = sum.add(&term);
        let a = sum.abs();
        if a > max_partial {
            max_partial = a;
        }
        let small =
            term.is_zero() || term.abs() < Float::with_val(p, &tol * &max_partial);
        if small {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(MPComplex::new(
                    Float::with_val(ctx.prec(), &sum.re),
                    Float::with_val(ctx.prec(), &sum.im),
                ));
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::PrecisionExhausted(format!(
        "Bessel series for |z| = {az:.2} did not settle in {cap} terms"
    )))
}

/// Hankel's large-argument expansion, valid here for Re z >= 0.
fn asymptotic(nu: u32, z: &MPComplex, ctx: &PrecisionContext) -> Result<MPComplex> {
    let p = ctx.prec();
    let tol = ctx.tol();
    let four_nu_sq = (4 * nu * nu) as i64;

    // t_m = a_m / z^m with a_m = a_{m-1} (4 nu^2 - (2m-1)^2) / (8m);
    // even m feed the cosine sum P, odd m the sine sum Q, alternating signs
    let inv_z = z.recip();
    let mut p_sum = MPComplex::one(p);
    let mut q_sum = MPComplex::zero(p);
    let mut term = MPComplex::one(p);
    let mut last_mag = term.abs();
    let mut converged = false;
    for m in 1..400i64 {
        let num = Float::with_val(p, four_nu_sq - (2 * m - 1) * (2 * m - 1));
        let den = Float::with_val(p, 8 * m);
        term = term.scale(&(num / den)).mul(&inv_z);
        let negate = if m % 2 == 0 { (m / 2) % 2 == 1 } else { ((m - 1) / 2) % 2 == 1 };
        let signed = if negate { -term.clone() } else { term.clone() };
        if m % 2 == 0 {
            p_sum = p_sum.add(&signed);
        } else {
            q_sum = q_sum.add(&signed);
        }
        let mag = term.abs();
        if mag < tol {
            converged = true;
            break;
        }
        if mag > last_mag {
            // divergent tail reached before certification
            break;
        }
        last_mag = mag;
    }
    if !converged {
        return Err(Error::PrecisionExhausted(
            "Bessel asymptotic expansion cannot reach tolerance".into(),
        ));
    }

    let pi = ctx.pi();
    let chi_shift = Float::with_val(p, &pi * &Float::with_val(p, 2 * nu + 1)) / 4u32;
    let omega = z.sub(&MPComplex::from_real(chi_shift));
    let cosw = omega.cos();
    let sinw = omega.sin();
    let two_over_pi_z = MPComplex::from_real(Float::with_val(p, 2) / pi).mul(&inv_z);
    let amp = two_over_pi_z.sqrt();
    Ok(amp.mul(&p_sum.mul(&cosw).sub(&q_sum.mul(&sinw))))
}

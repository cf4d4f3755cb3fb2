//! Moments of the oscillatory weight: `m[k] = int_{-1}^{1} x^k e^{i omega x} dx`.

use rug::Float;

use crate::error::{Error, Result};
use crate::io::complex_seq_to_json;
use crate::precision::{MPComplex, PrecisionContext};

/// Table of power moments of `e^{i omega x}` on `[-1,1]`.
///
/// By the substitution `x -> -x`, `conj(m[k]) = (-1)^k m[k]`: even moments
/// are real and odd moments purely imaginary.
#[derive(Debug, Clone)]
pub struct MomentTable {
    omega: Float,
    m: Vec<MPComplex>,
}

impl MomentTable {
    pub fn omega(&self) -> &Float {
        &self.omega
    }

    /// Highest available moment index.
    pub fn kmax(&self) -> usize {
        self.m.len() - 1
    }

    pub fn get(&self, k: usize) -> &MPComplex {
        &self.m[k]
    }

    pub fn all(&self) -> &[MPComplex] {
        &self.m
    }

    pub fn to_json(&self, ctx: &PrecisionContext) -> serde_json::Value {
        serde_json::json!({
            "schema": crate::SCHEMA_TAG,
            "kind": "moments",
            "omega": crate::io::float_to_decimal(&self.omega, ctx.roundtrip_digits()),
            "m": complex_seq_to_json(&self.m, ctx),
        })
    }
}

/// Moments by termwise series integration,
/// `m[k] = sum_j (i omega)^j / j! * (1 - (-1)^{k+j+1}) / (k+j+1)`,
/// truncated once three consecutive terms clear the working tolerance.
///
/// The terms reach magnitude ~`e^omega / sqrt(omega)` near `j = omega` while
/// the sum stays O(1), so the summation runs at a precision boosted by the
/// lost digits, like a Bessel power series.
pub fn moments(omega: &Float, kmax: usize, ctx: &PrecisionContext) -> Result<MomentTable> {
    let om = omega.to_f64();
    if !om.is_finite() || om < 0.0 {
        return Err(Error::DomainError(format!(
            "moments require a finite nonnegative omega, got {omega}"
        )));
    }
    let boost = (0.45 * om).ceil() as u32 + 10;
    let wctx = ctx.boosted(boost);
    let p = wctx.prec();
    let tol = wctx.tol();
    let i_omega = MPComplex::new(Float::new(p), Float::with_val(p, omega));
    let cap = 64 + 4 * (om.ceil() as usize + wctx.digits() as usize);

    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        // term t_j = (i omega)^j / j!, weight c_{k+j} = 2/(k+j+1) for even k+j
        let mut t = MPComplex::one(p);
        let mut sum = MPComplex::zero(p);
        let mut max_partial = Float::new(p);
        let mut small_streak = 0u32;
        let mut settled = false;
        for j in 0..=cap {
            if j > 0 {
                t = t.mul(&i_omega).unscale(&Float::with_val(p, j as u32));
            }
            let contrib_mag;
            if (k + j) % 2 == 0 {
                let c = Float::with_val(p, 2) / Float::with_val(p, (k + j + 1) as u32);
                let contrib = t.scale(&c);
                contrib_mag = contrib.abs();
                sum = sum.add(&contrib);
            } else {
                contrib_mag = Float::new(p);
            }
            let a = sum.abs();
            if a > max_partial {
                max_partial = a;
            }
            // judge smallness by the raw term so the parity zeros do not
            // count toward the streak by themselves
            let tmag = t.abs().max(&contrib_mag);
            let small = tmag.is_zero() || tmag < Float::with_val(p, &tol * &max_partial.clone().max(&Float::with_val(p, 1)));
            if small {
                small_streak += 1;
                if small_streak >= 3 {
                    settled = true;
                    break;
                }
            } else {
                small_streak = 0;
            }
        }
        if !settled {
            return Err(Error::PrecisionExhausted(format!(
                "moment series for omega = {om:.3}, k = {k} did not settle in {cap} terms"
            )));
        }
        out.push(MPComplex::new(
            Float::with_val(ctx.prec(), &sum.re),
            Float::with_val(ctx.prec(), &sum.im),
        ));
    }
    Ok(MomentTable {
        omega: Float::with_val(ctx.prec(), omega),
        m: out,
    })
}

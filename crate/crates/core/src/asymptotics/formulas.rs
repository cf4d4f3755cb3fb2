//! Evaluable strong-asymptotic formulas for `p_n` in the three regimes
//! (outer, near-curve, endpoint discs), the model matrix `N(z)`, and the
//! fixed-frequency Szego function.

use rug::Float;

use crate::error::{Error, Result};
use crate::potential::{phi, SCurve};
use crate::precision::{
    bessel_j0, bessel_j1, complex_arccos, sqrt_zsq_minus_one, BranchMode, MPComplex,
    PrecisionContext,
};

use super::matrix::Matrix2;

/// Which asymptotic formula governs a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaId {
    Outer,
    Inner,
    EndpointP1,
    EndpointM1,
}

impl FormulaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaId::Outer => "outer",
            FormulaId::Inner => "inner",
            FormulaId::EndpointP1 => "endpoint+1",
            FormulaId::EndpointM1 => "endpoint-1",
        }
    }
}

/// Region radii for the formula guards.
///
/// `delta` is the endpoint disc radius; `width` is the half-width of the
/// near-curve neighborhood and also the minimum curve distance for the outer
/// formula. Neither is canonical; these defaults keep the regions disjoint.
#[derive(Debug, Clone, Copy)]
pub struct RegionConfig {
    pub delta: f64,
    pub width: f64,
}

impl Default for RegionConfig {
    fn default() -> Self {
        RegionConfig {
            delta: 0.1,
            width: 0.1,
        }
    }
}

/// A formula evaluation together with the guard that licensed it.
#[derive(Debug, Clone)]
pub struct AsymptoticPrediction {
    pub formula: FormulaId,
    pub value: MPComplex,
    pub guard: bool,
}

fn endpoint_dist(z: &MPComplex, which: i32) -> f64 {
    let p = z.prec();
    z.sub(&MPComplex::from_f64(p, which as f64, 0.0)).abs().to_f64()
}

/// The unique formula whose guard holds at `z`, or `None` in the ungoverned
/// near-boundary bands. The guards are disjoint by construction: the endpoint
/// discs are carved out of the inner neighborhood, and every point of an
/// endpoint disc is within `delta <= width` of the curve, hence not outer.
pub fn governing_formula(z: &MPComplex, curve: &SCurve, cfg: &RegionConfig) -> Option<FormulaId> {
    if endpoint_dist(z, 1) < cfg.delta {
        return Some(FormulaId::EndpointP1);
    }
    if endpoint_dist(z, -1) < cfg.delta {
        return Some(FormulaId::EndpointM1);
    }
    let d = curve.distance(z).to_f64();
    if d < cfg.width {
        Some(FormulaId::Inner)
    } else if d > cfg.width {
        Some(FormulaId::Outer)
    } else {
        None
    }
}

/// Outer asymptotic form of the monic polynomial,
/// `varphi^{n+1/2} / (2^{n+1/2} (z^2-1)^{1/4}) * exp(-i n lambda / (2 varphi))`,
/// valid away from the curve.
///
/// `varphi` and `(z^2-1)^{1/2}` use the curve-cut branch; the quarter-root
/// ratio is evaluated as `sqrt(varphi/(2s))`, which is single-valued off the
/// curve (the individual square roots would each cut `(-inf,-1)`).
pub fn outer_pn(
    z: &MPComplex,
    n: usize,
    lambda: &Float,
    curve: &SCurve,
    cfg: &RegionConfig,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    let d = curve.distance(z).to_f64();
    if d <= cfg.width {
        return Err(Error::RegionViolation(format!(
            "outer formula needs curve distance > {}, got {d:.3e}",
            cfg.width
        )));
    }
    let p = ctx.prec();
    let s = sqrt_zsq_minus_one(z, BranchMode::SCurve(curve), ctx)?;
    let varphi = z.add(&s);
    let q = varphi.div(&s.scale(&ctx.float(2.0))).sqrt();
    let half_pow = varphi.unscale(&ctx.float(2.0)).pow_i(n as i64);
    let half_nl = Float::with_val(p, lambda) * Float::with_val(p, n as f64) / 2u32;
    let expo = varphi.recip().scale(&half_nl).mul_neg_i().exp();
    Ok(half_pow.mul(&q).mul(&expo))
}

/// Near-curve (two-sided) asymptotic form,
/// `2^{1/2-n} e^{-i n lambda z / 2} (1-z^2)^{-1/4}
///  cos((n+1/2) arccos z + (n lambda/2)(z^2-1)^{1/2} - pi/4)`.
///
/// All roots and the arccosine are principal, with `(z^2-1)^{1/2}` realized
/// as `i (1-z^2)^{1/2}`: this is the analytic continuation of the upper-side
/// branch across the whole neighborhood of the curve (its cuts lie on the
/// real rays beyond the excluded endpoint discs), so the expression is
/// continuous across the curve. On the lower side it reproduces the
/// sign-swapped parametrix combination `N11 e^{n phi/2} - N12 e^{-n phi/2}`
/// via the model jump relations; see the two-sided tests.
pub fn inner_pn(
    z: &MPComplex,
    n: usize,
    lambda: &Float,
    curve: &SCurve,
    cfg: &RegionConfig,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    let d = curve.distance(z).to_f64();
    if d >= cfg.width {
        return Err(Error::RegionViolation(format!(
            "inner formula needs curve distance < {}, got {d:.3e}",
            cfg.width
        )));
    }
    for which in [1, -1] {
        let de = endpoint_dist(z, which);
        if de < cfg.delta {
            return Err(Error::RegionViolation(format!(
                "inner formula excludes the endpoint disc |z - ({which})| < {}, got {de:.3e}",
                cfg.delta
            )));
        }
    }
    let p = ctx.prec();
    let one = MPComplex::one(p);
    let w = one.sub(&z.mul(z)).sqrt(); // (1-z^2)^{1/2}
    let s_plus = w.mul_i(); // upper-branch (z^2-1)^{1/2}
    let quarter = w.sqrt(); // (1-z^2)^{1/4}
    let theta = complex_arccos(z);
    let half_nl = Float::with_val(p, lambda) * Float::with_val(p, n as f64) / 2u32;
    let quarter_pi = ctx.pi() / 4u32;
    let arg = theta
        .scale(&Float::with_val(p, n as f64 + 0.5))
        .add(&s_plus.scale(&half_nl))
        .sub(&MPComplex::from_real(quarter_pi));
    let amp = Float::with_val(p, 0.5 - n as f64).exp2(); // 2^{1/2-n}
    let osc = z.scale(&half_nl).mul_neg_i().exp(); // e^{-i n lambda z/2}
    Ok(arg.cos().div(&quarter).mul(&osc).scale(&amp))
}

/// Endpoint (Bessel) asymptotic form near `z = +1`:
/// `2^{-n} (n pi)^{1/2} f^{1/4} e^{-i n lambda z/2}
///  [beta^{-1} J_0(-i n phi/2) - i beta J_0'(-i n phi/2)]`,
/// with `f = phi^2/16` and `beta = ((z-1)/(z+1))^{1/4}` cut on the curve.
///
/// `f^{1/4}` is realized as `sqrt(phi)/2` and `beta` as `sqrt((z-1)/s)`, both
/// principal on top of curve-cut `phi` and `s`: the two flip together when
/// crossing the curve and the bracket is even under `phi -> -phi` (J_0 even,
/// J_0' odd, beta -> -i beta), so the value is continuous across it. The
/// `(n pi)^{1/2}` prefactor is fixed by matching the outer form in the
/// overlap annulus (large-argument Bessel expansion).
///
/// `which = -1` evaluates the mirrored endpoint through the exact weight
/// symmetry `p_n(z) = (-1)^n conj(p_n(-conj z))`; the local coordinate there
/// is `phi - 2 pi i`, which the reflection carries onto `phi` at `+1`.
pub fn endpoint_pn(
    z: &MPComplex,
    n: usize,
    lambda: &Float,
    curve: &SCurve,
    which: i32,
    cfg: &RegionConfig,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    if which != 1 && which != -1 {
        return Err(Error::DomainError(format!(
            "endpoint selector must be +1 or -1, got {which}"
        )));
    }
    let de = endpoint_dist(z, which);
    if de >= cfg.delta {
        return Err(Error::RegionViolation(format!(
            "endpoint formula needs |z - ({which})| < {}, got {de:.3e}",
            cfg.delta
        )));
    }
    if de < ctx.tol_f64() {
        return Err(Error::RegionViolation(
            "endpoint formula is indeterminate at the endpoint itself".into(),
        ));
    }
    if which == -1 {
        let mirrored = endpoint_pn(&z.reflect(), n, lambda, curve, 1, cfg, ctx)?;
        let refl = mirrored.conj();
        return Ok(if n % 2 == 1 { -refl } else { refl });
    }
    let p = ctx.prec();
    let phi_v = phi(z, lambda, BranchMode::SCurve(curve), ctx)?;
    let f_quarter = phi_v.sqrt().unscale(&ctx.float(2.0));
    let s = sqrt_zsq_minus_one(z, BranchMode::SCurve(curve), ctx)?;
    let beta = z.sub(&MPComplex::one(p)).div(&s).sqrt();
    let half_n = Float::with_val(p, n as f64) / 2u32;
    let w = phi_v.scale(&half_n).mul_neg_i(); // -i n phi / 2
    let j0 = bessel_j0(&w, ctx)?;
    let j0p = -bessel_j1(&w, ctx)?; // J_0' = -J_1
    let bracket = beta.recip().mul(&j0).sub(&beta.mul(&j0p).mul_i());
    let half_nl = Float::with_val(p, lambda) * Float::with_val(p, n as f64);
    let osc = z.scale(&(half_nl / 2u32)).mul_neg_i().exp();
    let amp = Float::with_val(p, -(n as f64)).exp2()
        * (ctx.pi() * Float::with_val(p, n as f64)).sqrt();
    Ok(bracket.mul(&f_quarter).mul(&osc).scale(&amp))
}

/// Evaluate whichever formula governs `z`, or fail with `RegionViolation` in
/// an ungoverned band.
pub fn predict(
    z: &MPComplex,
    n: usize,
    lambda: &Float,
    curve: &SCurve,
    cfg: &RegionConfig,
    ctx: &PrecisionContext,
) -> Result<AsymptoticPrediction> {
    let formula = governing_formula(z, curve, cfg).ok_or_else(|| {
        Error::RegionViolation(format!(
            "no formula governs z = {z} under delta = {}, width = {}",
            cfg.delta, cfg.width
        ))
    })?;
    let value = match formula {
        FormulaId::Outer => outer_pn(z, n, lambda, curve, cfg, ctx)?,
        FormulaId::Inner => inner_pn(z, n, lambda, curve, cfg, ctx)?,
        FormulaId::EndpointP1 => endpoint_pn(z, n, lambda, curve, 1, cfg, ctx)?,
        FormulaId::EndpointM1 => endpoint_pn(z, n, lambda, curve, -1, cfg, ctx)?,
    };
    Ok(AsymptoticPrediction {
        formula,
        value,
        guard: true,
    })
}

/// The model Riemann--Hilbert solution
/// `N = [[varphi^{1/2}, i varphi^{-1/2}], [-i varphi^{-1/2}, varphi^{1/2}]]
///      / (sqrt 2 (z^2-1)^{1/4})`,
/// normalized so `N(inf) = I` and `det N = 1`.
///
/// The diagonal carries `varphi^{+1/2}` in *both* entries: the variant with
/// `varphi^{-1/2}` in the (2,2) slot would violate both the normalization at
/// infinity and unimodularity, which the tests pin down. Entries are built
/// from the single-valued combinations `q = sqrt(varphi/(2s))` and
/// `i/(2 s q)` so the only cut is the curve itself.
pub fn n_matrix(
    z: &MPComplex,
    _lambda: &Float,
    curve: &SCurve,
    ctx: &PrecisionContext,
) -> Result<Matrix2> {
    let s = sqrt_zsq_minus_one(z, BranchMode::SCurve(curve), ctx)?;
    let varphi = z.add(&s);
    let q = varphi.div(&s.scale(&ctx.float(2.0))).sqrt();
    let off = s.scale(&ctx.float(2.0)).mul(&q).recip().mul_i();
    Ok(Matrix2::new(q.clone(), off.clone(), -off, q))
}

/// The fixed-frequency Szego function `D(z) = exp(i omega / (2 varphi(z)))`,
/// analytic off `[-1,1]` with `D(inf) = 1` and `D_+ D_- = e^{i omega z}`
/// on the open segment.
pub fn szego_d(z: &MPComplex, omega: &Float, ctx: &PrecisionContext) -> Result<MPComplex> {
    let s = sqrt_zsq_minus_one(z, BranchMode::Principal, ctx)?;
    let varphi = z.add(&s);
    let p = ctx.prec();
    let half_om = Float::with_val(p, omega) / 2u32;
    Ok(varphi.recip().scale(&half_om).mul_i().exp())
}

/// The oscillatory weight `W(z) = e^{i omega z}` (entire).
pub fn weight_w(z: &MPComplex, omega: &Float, ctx: &PrecisionContext) -> MPComplex {
    z.scale(&Float::with_val(ctx.prec(), omega)).mul_i().exp()
}

/// The phase function `(n lambda / 2)(z^2-1)^{1/2}` (curve-cut branch): the
/// addend that the near-curve cosine carries on top of the arccosine term.
pub fn remark_phase(
    z: &MPComplex,
    n: usize,
    lambda: &Float,
    curve: &SCurve,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    let s = sqrt_zsq_minus_one(z, BranchMode::SCurve(curve), ctx)?;
    let p = ctx.prec();
    let half_nl = Float::with_val(p, lambda) * Float::with_val(p, n as f64) / 2u32;
    Ok(s.scale(&half_nl))
}

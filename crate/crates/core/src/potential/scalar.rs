//! Closed-form scalar objects of the equilibrium problem.

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::{sqrt_zsq_minus_one, BranchMode, MPComplex, PrecisionContext};

/// The coupling function `h(lambda) = 2 log((2 + sqrt(lambda^2+4))/lambda) - sqrt(lambda^2+4)`.
///
/// Strictly decreasing on `(0, inf)`; its unique positive root is the
/// critical coupling `lambda0`.
pub fn h_of_lambda(lambda: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if !(lambda.is_finite() && lambda.is_sign_positive() && !lambda.is_zero()) {
        return Err(Error::DomainError(format!(
            "h(lambda) requires lambda > 0, got {lambda}"
        )));
    }
    let p = ctx.prec();
    let l = Float::with_val(p, lambda);
    let r = (Float::with_val(p, &l * &l) + 4u32).sqrt();
    let log_arg = (Float::with_val(p, &r + &Float::with_val(p, 2)) / &l).ln();
    Ok(log_arg * 2u32 - r)
}

/// `h'(lambda) = -lambda/(2 + sqrt(lambda^2+4)) - 2/lambda` (always negative).
fn h_prime(lambda: &Float, ctx: &PrecisionContext) -> Float {
    let p = ctx.prec();
    let l = Float::with_val(p, lambda);
    let r = (Float::with_val(p, &l * &l) + 4u32).sqrt();
    let t1 = Float::with_val(p, &l / &(r + 2u32));
    let t2 = Float::with_val(p, 2) / &l;
    -(t1 + t2)
}

/// The critical coupling `lambda0`, the unique positive root of `h`.
///
/// Bisection on the analytic bracket `[1, 2]` followed by Newton iteration;
/// the returned value satisfies `|h(lambda0)| < ctx.tol()`.
pub fn solve_lambda0(ctx: &PrecisionContext) -> Float {
    let p = ctx.prec();
    let tol = ctx.tol();
    let mut lo = Float::with_val(p, 1);
    let mut hi = Float::with_val(p, 2);
    // h(1) > 0 > h(2); a few bisections give Newton a safe start
    for _ in 0..8 {
        let mid = Float::with_val(p, &lo + &hi) / 2u32;
        let hm = h_of_lambda(&mid, ctx).expect("midpoint positive");
        if hm.is_sign_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = Float::with_val(p, &lo + &hi) / 2u32;
    for _ in 0..200 {
        let hx = h_of_lambda(&x, ctx).expect("iterate positive");
        if hx.clone().abs() < tol {
            break;
        }
        let step = hx / h_prime(&x, ctx);
        x -= step;
    }
    x
}

/// The variational constant `l = -2 log 2`.
pub fn ell(ctx: &PrecisionContext) -> Float {
    -(Float::with_val(ctx.prec(), 2).ln() * 2u32)
}

/// True when `z` coincides (to tol) with the endpoint `+1` or `-1`.
fn at_endpoint(z: &MPComplex, ctx: &PrecisionContext) -> Option<i32> {
    let tol = ctx.tol();
    let one = MPComplex::one(z.prec());
    if z.sub(&one).abs() < tol {
        Some(1)
    } else if z.add(&one).abs() < tol {
        Some(-1)
    } else {
        None
    }
}

/// `(z^2-1)^{1/2}` under `branch`, with exact zeros at the endpoints.
fn root(z: &MPComplex, branch: BranchMode<'_>, ctx: &PrecisionContext) -> Result<MPComplex> {
    if at_endpoint(z, ctx).is_some() {
        return Ok(MPComplex::zero(ctx.prec()));
    }
    sqrt_zsq_minus_one(z, branch, ctx)
}

/// `2 + i lambda z`, the numerator shared by `phi'`, `psi` and `w_lambda`.
fn two_plus_ilz(z: &MPComplex, lambda: &Float, ctx: &PrecisionContext) -> MPComplex {
    let p = ctx.prec();
    let two = MPComplex::from_f64(p, 2.0, 0.0);
    two.add(&z.scale(lambda).mul_i())
}

/// The exterior conformal map `varphi(z) = z + (z^2-1)^{1/2}`.
///
/// Maps the complement of the cut onto the exterior of the unit circle;
/// endpoint values `varphi(+-1) = +-1` are taken exactly.
pub fn varphi(z: &MPComplex, branch: BranchMode<'_>, ctx: &PrecisionContext) -> Result<MPComplex> {
    Ok(z.add(&root(z, branch, ctx)?))
}

/// Principal logarithm of `varphi`, continued as `i pi` at `z = -1`.
fn log_varphi(z: &MPComplex, branch: BranchMode<'_>, ctx: &PrecisionContext) -> Result<MPComplex> {
    if at_endpoint(z, ctx) == Some(-1) {
        // limit from the upper half plane, matching the traced orientation
        return Ok(MPComplex::new(Float::new(ctx.prec()), ctx.pi()));
    }
    let v = varphi(z, branch, ctx)?;
    if z.im.is_zero() && v.re.is_sign_negative() {
        // z on the real axis left of -1: varphi is mathematically real and
        // negative, Im varphi is rounding noise with an arbitrary sign, so
        // pin the upper-side limit instead of letting ln() pick +-pi
        return Ok(MPComplex::new(v.re.clone().abs().ln(), ctx.pi()));
    }
    Ok(v.ln())
}

/// `phi(z) = 2 log varphi(z) + i lambda (z^2-1)^{1/2}`.
///
/// The S-curve `gamma_lambda` is part of the level set `Re phi = 0`.
pub fn phi(
    z: &MPComplex,
    lambda: &Float,
    branch: BranchMode<'_>,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    let s = root(z, branch, ctx)?;
    let lv = log_varphi(z, branch, ctx)?;
    Ok(lv.scale(&ctx.float(2.0)).add(&s.scale(lambda).mul_i()))
}

/// `phi'(z) = (2 + i lambda z)/(z^2-1)^{1/2}` (used by the curve tracer).
pub fn phi_prime(
    z: &MPComplex,
    lambda: &Float,
    branch: BranchMode<'_>,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    let s = sqrt_zsq_minus_one(z, branch, ctx)?;
    Ok(two_plus_ilz(z, lambda, ctx).div(&s))
}

/// The trajectory parameter `xi(z) = i log(z + (z^2-1)^{1/2}) - lambda (z^2-1)^{1/2}/2`.
///
/// Satisfies `xi = i phi / 2`; quadratic-differential trajectories are the
/// level lines of `Im xi`.
pub fn xi(
    z: &MPComplex,
    lambda: &Float,
    branch: BranchMode<'_>,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    let s = root(z, branch, ctx)?;
    let lv = log_varphi(z, branch, ctx)?;
    Ok(lv.mul_i().sub(&s.scale(&Float::with_val(ctx.prec(), lambda / 2u32))))
}

/// `xi'(z) = i phi'(z)/2`; satisfies `xi'^2 = -Q_lambda`.
pub fn xi_prime(
    z: &MPComplex,
    lambda: &Float,
    branch: BranchMode<'_>,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    Ok(phi_prime(z, lambda, branch, ctx)?
        .mul_i()
        .scale(&ctx.float(0.5)))
}

/// The g-function `g(z) = log varphi(z) + (i lambda/2)(z^2-1)^{1/2} - i lambda z/2 - log 2`.
///
/// Behaves like `log z` at infinity and satisfies `2g - V - l = phi`.
pub fn g_function(
    z: &MPComplex,
    lambda: &Float,
    branch: BranchMode<'_>,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    let p = ctx.prec();
    let s = root(z, branch, ctx)?;
    let lv = log_varphi(z, branch, ctx)?;
    let half_l = Float::with_val(p, lambda / 2u32);
    let ln2 = Float::with_val(p, 2).ln();
    Ok(lv
        .add(&s.scale(&half_l).mul_i())
        .sub(&z.scale(&half_l).mul_i())
        .sub(&MPComplex::from_real(ln2)))
}

/// The equilibrium density `psi_lambda(z) = -(1/2 pi i)(2 + i lambda z)/(z^2-1)^{1/2}`.
pub fn equilibrium_density(
    z: &MPComplex,
    lambda: &Float,
    branch: BranchMode<'_>,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    let p = ctx.prec();
    let s = sqrt_zsq_minus_one(z, branch, ctx)?;
    let two_pi = ctx.pi() * 2u32;
    Ok(two_plus_ilz(z, lambda, ctx)
        .div(&s)
        .mul_i()
        .unscale(&Float::with_val(p, two_pi)))
}

/// The Cauchy transform ansatz `w_lambda(z) = -i lambda/2 + (2 + i lambda z)/(2(z^2-1)^{1/2})`.
pub fn cauchy_transform_w(
    z: &MPComplex,
    lambda: &Float,
    branch: BranchMode<'_>,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    let p = ctx.prec();
    let s = sqrt_zsq_minus_one(z, branch, ctx)?;
    let shift = MPComplex::new(Float::new(p), -Float::with_val(p, lambda / 2u32));
    Ok(shift.add(&two_plus_ilz(z, lambda, ctx).div(&s).scale(&ctx.float(0.5))))
}

/// The quadratic-differential coefficient `Q_lambda(z) = (2 + i lambda z)^2 / (4(z^2-1))`.
pub fn q_lambda(z: &MPComplex, lambda: &Float, ctx: &PrecisionContext) -> Result<MPComplex> {
    if let Some(e) = at_endpoint(z, ctx) {
        return Err(Error::PoleAt(format!("Q_lambda has a simple pole at z = {e}")));
    }
    let p = ctx.prec();
    let num = two_plus_ilz(z, lambda, ctx);
    let num_sq = num.mul(&num);
    let den = z.mul(z).sub(&MPComplex::one(p)).scale(&ctx.float(4.0));
    Ok(num_sq.div(&den))
}

/// The double zero `z* = 2i/lambda` of `Q_lambda` (absent at `lambda = 0`).
pub fn z_star(lambda: &Float, ctx: &PrecisionContext) -> Result<MPComplex> {
    if lambda.is_zero() || lambda.is_sign_negative() {
        return Err(Error::DomainError(
            "z* requires lambda > 0: the double zero disappears at lambda = 0".into(),
        ));
    }
    let p = ctx.prec();
    Ok(MPComplex::new(
        Float::new(p),
        Float::with_val(p, 2) / Float::with_val(p, lambda),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::side_limit_offset;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    fn c(re: f64, im: f64) -> MPComplex {
        MPComplex::from_f64(ctx().prec(), re, im)
    }

    #[test]
    fn h_at_two_matches_closed_form() {
        let ctx = ctx();
        // h(2) = 2 ln(1 + sqrt 2) - 2 sqrt 2
        let h = h_of_lambda(&ctx.float(2.0), &ctx).unwrap();
        let s2 = ctx.float(2.0).sqrt();
        let oracle = (s2.clone() + 1u32).ln() * 2u32 - s2 * 2u32;
        assert!((h.clone() - &oracle).abs() < ctx.tol());
        assert!((h.to_f64() + 1.0657).abs() < 1e-3);
    }

    #[test]
    fn h_is_strictly_decreasing() {
        let ctx = ctx();
        let mut prev = h_of_lambda(&ctx.float(0.1), &ctx).unwrap();
        for k in 1..40 {
            let l = ctx.float(0.1 + 0.25 * k as f64);
            let h = h_of_lambda(&l, &ctx).unwrap();
            assert!(h < prev, "h not decreasing at lambda={l}");
            prev = h;
        }
    }

    #[test]
    fn h_rejects_nonpositive() {
        let ctx = ctx();
        assert!(h_of_lambda(&ctx.float(0.0), &ctx).is_err());
        assert!(h_of_lambda(&ctx.float(-1.0), &ctx).is_err());
    }

    #[test]
    fn lambda0_value_and_root() {
        let ctx = PrecisionContext::new(50).unwrap();
        let l0 = solve_lambda0(&ctx);
        assert!((l0.to_f64() - 1.325486839).abs() < 1e-9);
        let h = h_of_lambda(&l0, &ctx).unwrap();
        assert!(h.abs() < ctx.tol());
    }

    #[test]
    fn lambda0_is_precision_stable() {
        let coarse = solve_lambda0(&PrecisionContext::new(30).unwrap());
        let mid = solve_lambda0(&PrecisionContext::new(60).unwrap());
        let fine = solve_lambda0(&PrecisionContext::new(120).unwrap());
        let d1 = Float::with_val(coarse.prec(), &coarse - &mid).abs();
        let d2 = Float::with_val(mid.prec(), &mid - &fine).abs();
        assert!(d1 < PrecisionContext::new(30).unwrap().tol());
        assert!(d2 < PrecisionContext::new(60).unwrap().tol());
    }

    #[test]
    fn varphi_values() {
        let ctx = ctx();
        let v = varphi(&c(1.0, 0.0), BranchMode::Principal, &ctx).unwrap();
        assert!(v.sub(&MPComplex::one(ctx.prec())).abs() < ctx.tol());
        let v = varphi(&c(2.0, 0.0), BranchMode::Principal, &ctx).unwrap();
        let oracle = ctx.float(3.0).sqrt() + 2u32;
        assert!((v.re.clone() - &oracle).abs() < ctx.tol());
        // |varphi| = 1 on side limits over (-1, 1)
        let eps = side_limit_offset(&ctx);
        for x in [-0.8, -0.2, 0.5, 0.9] {
            for sgn in [1f64, -1f64] {
                let z = MPComplex::new(ctx.float(x), ctx.float(sgn) * &eps);
                let v = varphi(&z, BranchMode::Principal, &ctx).unwrap();
                assert!((v.abs() - 1u32).abs().to_f64() < 1e-25, "x={x} sgn={sgn}");
            }
        }
    }

    #[test]
    fn phi_endpoint_and_boundary() {
        let ctx = ctx();
        let lam = ctx.float(0.7);
        let v = phi(&c(1.0, 0.0), &lam, BranchMode::Principal, &ctx).unwrap();
        assert!(v.abs() < ctx.tol());
        // Re phi_+(x) = -lambda sqrt(1-x^2) on the upper side of (-1,1)
        let eps = side_limit_offset(&ctx);
        for x in [-0.6, 0.0, 0.4] {
            let xf = ctx.float(x);
            let z = MPComplex::new(xf.clone(), eps.clone());
            let v = phi(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            let oracle = -((ctx.float(1.0) - xf.square()).sqrt() * &lam);
            assert!((v.re.clone() - &oracle).abs().to_f64() < 1e-25, "x={x}");
        }
    }

    #[test]
    fn phi_matches_large_z_expansion() {
        // phi(z) - (2 log(2z) + i lambda z) -> 0 along a ray
        let ctx = ctx();
        let lam = ctx.float(0.5);
        for r in [1e4, 1e6] {
            let z = c(r, 0.7 * r);
            let v = phi(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            let lead = z
                .scale(&ctx.float(2.0))
                .ln()
                .scale(&ctx.float(2.0))
                .add(&z.scale(&lam).mul_i());
            let gap = v.sub(&lead).abs().to_f64();
            assert!(gap < 10.0 / r, "r={r} gap={gap:e}");
        }
    }

    #[test]
    fn phi_prime_matches_finite_difference() {
        let ctx = ctx();
        let lam = ctx.float(0.8);
        let h = ctx.ten_pow(-15);
        for (re, im) in [(0.4, 0.9), (1.7, -0.3), (-0.5, 1.2)] {
            let z = c(re, im);
            let zp = MPComplex::new(z.re.clone() + &h, z.im.clone());
            let zm = MPComplex::new(z.re.clone() - &h, z.im.clone());
            let fd = phi(&zp, &lam, BranchMode::Principal, &ctx)
                .unwrap()
                .sub(&phi(&zm, &lam, BranchMode::Principal, &ctx).unwrap())
                .unscale(&(h.clone() * 2u32));
            let an = phi_prime(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            assert!(fd.sub(&an).abs().to_f64() < 1e-25, "z=({re},{im})");
        }
    }

    #[test]
    fn xi_is_i_phi_over_two() {
        let ctx = ctx();
        let lam = ctx.float(1.1);
        for (re, im) in [(0.3, 0.8), (2.0, 1.0), (-1.4, 0.5), (0.1, -1.9)] {
            let z = c(re, im);
            let x = xi(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            let f = phi(&z, &lam, BranchMode::Principal, &ctx)
                .unwrap()
                .mul_i()
                .scale(&ctx.float(0.5));
            assert!(x.sub(&f).abs() < ctx.tol(), "z=({re},{im})");
        }
    }

    #[test]
    fn im_xi_on_the_cut() {
        // Im xi_+(x) = -lambda sqrt(1-x^2)/2 on [0,1]; Im xi(1) = 0
        let ctx = ctx();
        let lam = ctx.float(0.9);
        let v = xi(&c(1.0, 0.0), &lam, BranchMode::Principal, &ctx).unwrap();
        assert!(v.im.to_f64().abs() < 1e-30);
        let eps = side_limit_offset(&ctx);
        for x in [0.0, 0.35, 0.8] {
            let xf = ctx.float(x);
            let z = MPComplex::new(xf.clone(), eps.clone());
            let v = xi(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            let oracle = -((ctx.float(1.0) - xf.square()).sqrt() * &lam) / 2u32;
            assert!((v.im.clone() - &oracle).abs().to_f64() < 1e-25, "x={x}");
        }
    }

    #[test]
    fn g_behaves_like_log_z() {
        let ctx = ctx();
        let lam = ctx.float(0.6);
        for r in [1e5, 1e7] {
            let z = c(0.3 * r, r);
            let g = g_function(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            let gap = g.sub(&z.ln()).abs().to_f64();
            assert!(gap < 10.0 / r, "r={r}");
        }
    }

    #[test]
    fn variational_identity_2g_v_l_phi() {
        // 2g - V - l = phi with V = -i lambda z, l = -2 log 2
        let ctx = ctx();
        let lam = ctx.float(1.3);
        let l = ell(&ctx);
        for (re, im) in [(0.5, 0.7), (-1.6, 0.4), (2.2, -1.1)] {
            let z = c(re, im);
            let g = g_function(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            let v = -z.scale(&lam).mul_i();
            let lhs = g
                .scale(&ctx.float(2.0))
                .sub(&v)
                .sub(&MPComplex::from_real(l.clone()));
            let rhs = phi(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            assert!(lhs.sub(&rhs).abs() < ctx.tol(), "z=({re},{im})");
        }
    }

    #[test]
    fn g_reduces_to_legendre_case_at_lambda_zero() {
        let ctx = ctx();
        let lam = ctx.float(0.0);
        let z = c(1.7, 0.9);
        let g = g_function(&z, &lam, BranchMode::Principal, &ctx).unwrap();
        let oracle = varphi(&z, BranchMode::Principal, &ctx)
            .unwrap()
            .unscale(&ctx.float(2.0))
            .ln();
        assert!(g.sub(&oracle).abs() < ctx.tol());
    }

    #[test]
    fn density_reduces_to_arcsine() {
        let ctx = ctx();
        let lam = ctx.float(0.0);
        let eps = side_limit_offset(&ctx);
        for x in [-0.5, 0.0, 0.7] {
            let xf = ctx.float(x);
            let z = MPComplex::new(xf.clone(), eps.clone());
            let d = equilibrium_density(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            let oracle = (ctx.pi() * (ctx.float(1.0) - xf.square()).sqrt()).recip();
            assert!((d.re.clone() - &oracle).abs().to_f64() < 1e-25, "x={x}");
            assert!(d.im.to_f64().abs() < 1e-25);
        }
    }

    #[test]
    fn cauchy_transform_tail_and_coefficient() {
        let ctx = ctx();
        let lam = ctx.float(0.8);
        // z w(z) -> 1 and the 1/z^2 coefficient of w is i lambda / 4
        let z = c(2e6, 1e6);
        let w = cauchy_transform_w(&z, &lam, BranchMode::Principal, &ctx).unwrap();
        let tail = z.mul(&w).sub(&MPComplex::one(ctx.prec())).abs().to_f64();
        assert!(tail < 1e-5);
        // c over z^2: (w - 1/z) * z^2 at several radii converges to i lambda/4
        let mut prev = f64::INFINITY;
        for r in [1e4, 1e5, 1e6] {
            let z = c(r, 0.4 * r);
            let w = cauchy_transform_w(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            let c2 = w.sub(&z.recip()).mul(&z.mul(&z));
            let target = MPComplex::new(ctx.float(0.0), ctx.float(0.2));
            let gap = c2.sub(&target).abs().to_f64();
            assert!(gap < prev, "r={r}");
            prev = gap;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn w_plus_w_minus_on_curve_is_minus_i_lambda() {
        // across the principal cut (lambda-independent identity)
        let ctx = ctx();
        let lam = ctx.float(0.6);
        let eps = side_limit_offset(&ctx);
        for x in [-0.4, 0.2, 0.8] {
            let zp = MPComplex::new(ctx.float(x), eps.clone());
            let zm = MPComplex::new(ctx.float(x), -eps.clone());
            let wp = cauchy_transform_w(&zp, &lam, BranchMode::Principal, &ctx).unwrap();
            let wm = cauchy_transform_w(&zm, &lam, BranchMode::Principal, &ctx).unwrap();
            let s = wp.add(&wm);
            let target = MPComplex::new(ctx.float(0.0), -lam.clone());
            assert!(s.sub(&target).abs().to_f64() < 1e-25, "x={x}");
        }
    }

    #[test]
    fn q_lambda_double_zero_and_identity() {
        let ctx = ctx();
        let lam = ctx.float(1.0);
        let zs = z_star(&lam, &ctx).unwrap();
        let q = q_lambda(&zs, &lam, &ctx).unwrap();
        assert!(q.abs() < ctx.tol());
        // Q'(z*) = 0 by central difference
        let h = ctx.ten_pow(-12);
        let zp = MPComplex::new(zs.re.clone() + &h, zs.im.clone());
        let zm = MPComplex::new(zs.re.clone() - &h, zs.im.clone());
        let d = q_lambda(&zp, &lam, &ctx)
            .unwrap()
            .sub(&q_lambda(&zm, &lam, &ctx).unwrap())
            .unscale(&(h.clone() * 2u32));
        assert!(d.abs().to_f64() < 1e-10);
        // Q = (w + i lambda/2)^2
        for (re, im) in [(0.7, 0.2), (1.9, -0.8)] {
            let z = c(re, im);
            let q = q_lambda(&z, &lam, &ctx).unwrap();
            let w = cauchy_transform_w(&z, &lam, BranchMode::Principal, &ctx).unwrap();
            let shift = MPComplex::new(ctx.float(0.0), lam.clone() / 2u32);
            let w2 = w.add(&shift);
            assert!(q.sub(&w2.mul(&w2)).abs() < ctx.tol(), "z=({re},{im})");
        }
        // lambda = 0 reduction: Q = 1/(z^2-1)
        let z = c(0.3, 0.9);
        let q0 = q_lambda(&z, &ctx.float(0.0), &ctx).unwrap();
        let oracle = z.mul(&z).sub(&MPComplex::one(ctx.prec())).recip();
        assert!(q0.sub(&oracle).abs() < ctx.tol());
    }

    #[test]
    fn z_star_values() {
        let ctx = ctx();
        for (lam, im) in [(1.0, 2.0), (0.5, 4.0), (2.0, 1.0)] {
            let zs = z_star(&ctx.float(lam), &ctx).unwrap();
            assert!(zs.re.to_f64().abs() < 1e-30);
            assert!((zs.im.to_f64() - im).abs() < 1e-14);
        }
        assert!(z_star(&ctx.float(0.0), &ctx).is_err());
    }

    #[test]
    fn q_lambda_rejects_poles() {
        let ctx = ctx();
        assert!(matches!(
            q_lambda(&c(1.0, 0.0), &ctx.float(0.5), &ctx),
            Err(Error::PoleAt(_))
        ));
    }
}

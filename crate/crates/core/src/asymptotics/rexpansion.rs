//! Jump-correction matrices on the endpoint circles, the large-`z`
//! coefficients of the first two correction orders `R^(1)`, `R^(2)`, and the
//! recurrence-coefficient asymptotics assembled from them.

use rug::Float;

use crate::error::{Error, Result};
use crate::potential::{phi, SCurve};
use crate::precision::{BranchMode, MPComplex, PrecisionContext};

use super::formulas::n_matrix;
use super::matrix::Matrix2;

fn real(ctx: &PrecisionContext, v: f64) -> MPComplex {
    MPComplex::from_real(ctx.float(v))
}

fn imag(ctx: &PrecisionContext, v: f64) -> MPComplex {
    MPComplex::new(Float::new(ctx.prec()), ctx.float(v))
}

/// The order-`k` jump correction `Delta_k(z)` on the circle around `endpoint`:
/// a `phi^{-k}` (left endpoint: `(phi - 2 pi i)^{-k}`) scalar prefactor times
/// an `N`-conjugated constant matrix with equal diagonal `(k/2 - 1/4)/k` up
/// to the `(-1)^k` sign pattern.
///
/// The formula continues meromorphically inside the disc (pole at the
/// endpoint), which the residue tests exploit; the guard only excludes the
/// endpoint itself and points too far away for the local coordinate to mean
/// anything.
pub fn delta_k(
    z: &MPComplex,
    k: usize,
    lambda: &Float,
    curve: &SCurve,
    endpoint: i32,
    ctx: &PrecisionContext,
) -> Result<Matrix2> {
    if k == 0 {
        return Err(Error::DomainError("delta_k needs k >= 1".into()));
    }
    if endpoint != 1 && endpoint != -1 {
        return Err(Error::DomainError(format!(
            "endpoint selector must be +1 or -1, got {endpoint}"
        )));
    }
    let p = ctx.prec();
    let de = z
        .sub(&MPComplex::from_f64(p, endpoint as f64, 0.0))
        .abs()
        .to_f64();
    if de < ctx.tol_f64() || de >= 0.5 {
        return Err(Error::RegionViolation(format!(
            "delta_k is meaningful near the endpoint only; |z - ({endpoint})| = {de:.3e}"
        )));
    }

    let mut coord = phi(z, lambda, BranchMode::SCurve(curve), ctx)?;
    if endpoint == -1 {
        // local coordinate at -1: phi - 2 pi i
        let two_pi = ctx.pi() * 2u32;
        coord = coord.sub(&MPComplex::new(Float::new(p), two_pi));
    }

    // (-1)^{k-1} / (4^{k-1} (k-1)!) * prod_{j=1}^{k-1} (2j-1)^2
    let mut pref = Float::with_val(p, 1);
    for j in 1..k {
        let sq = Float::with_val(p, (2 * j - 1) as u32).square();
        pref *= sq / Float::with_val(p, 4 * j as u32);
    }
    if k.is_multiple_of(2) {
        pref = -pref;
    }
    let scalar = coord.pow_i(-(k as i64)).scale(&pref);

    let kf = k as f64;
    let diag = (kf / 2.0 - 0.25) / kf;
    let sign_k = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let off = kf - 0.5;
    // right endpoint: [[(-1)^k diag, -off i], [(-1)^k off i, diag]]
    // left endpoint:  [[(-1)^k diag, +off i], [(-1)^{k+1} off i, diag]]
    let bracket = if endpoint == 1 {
        Matrix2::new(
            real(ctx, sign_k * diag),
            imag(ctx, -off),
            imag(ctx, sign_k * off),
            real(ctx, diag),
        )
    } else {
        Matrix2::new(
            real(ctx, sign_k * diag),
            imag(ctx, off),
            imag(ctx, -sign_k * off),
            real(ctx, diag),
        )
    };

    let n = n_matrix(z, lambda, curve, ctx)?;
    let n_inv = n.inv()?;
    Ok(n.mul(&bracket).mul(&n_inv).scale(&scalar))
}

/// Residue matrix `A1` of the order-1 correction at `z = +1`:
/// `-1/(8(2+i lambda)) [[-1, i], [i, 1]]`.
fn a1(lambda: &Float, ctx: &PrecisionContext) -> Matrix2 {
    let p = ctx.prec();
    let den = MPComplex::new(Float::with_val(p, 2), Float::with_val(p, lambda))
        .scale(&ctx.float(-8.0));
    let m = Matrix2::new(real(ctx, -1.0), imag(ctx, 1.0), imag(ctx, 1.0), real(ctx, 1.0));
    m.scale(&den.recip())
}

/// Residue matrix `B1` at `z = -1`: `-1/(8(2-i lambda)) [[1, i], [i, -1]]`.
fn b1(lambda: &Float, ctx: &PrecisionContext) -> Matrix2 {
    let p = ctx.prec();
    let den = MPComplex::new(Float::with_val(p, 2), -Float::with_val(p, lambda))
        .scale(&ctx.float(-8.0));
    let m = Matrix2::new(real(ctx, 1.0), imag(ctx, 1.0), imag(ctx, 1.0), real(ctx, -1.0));
    m.scale(&den.recip())
}

/// Residue matrix `A2` of the order-2 correction at `z = +1`.
fn a2(lambda: &Float, ctx: &PrecisionContext) -> Matrix2 {
    let p = ctx.prec();
    let lm2i = MPComplex::new(Float::with_val(p, lambda), Float::with_val(p, -2));
    let lp2i = MPComplex::new(Float::with_val(p, lambda), Float::with_val(p, 2));
    // 4(2 i lambda - 5)
    let c = MPComplex::new(Float::with_val(p, -20), Float::with_val(p, lambda) * 8u32);
    let m = Matrix2::new(lm2i.clone(), c.clone(), -c, lm2i.clone());
    let den = lm2i.mul(&lm2i).mul(&lp2i).scale(&ctx.float(-64.0));
    m.scale(&den.recip())
}

/// Residue matrix `B2` at `z = -1`.
fn b2(lambda: &Float, ctx: &PrecisionContext) -> Matrix2 {
    let p = ctx.prec();
    let lm2i = MPComplex::new(Float::with_val(p, lambda), Float::with_val(p, -2));
    let lp2i = MPComplex::new(Float::with_val(p, lambda), Float::with_val(p, 2));
    // -4(2 i lambda + 5)
    let c = MPComplex::new(Float::with_val(p, -20), Float::with_val(p, lambda) * (-8i32));
    let m = Matrix2::new(lp2i.clone(), c.clone(), -c, lp2i.clone());
    let den = lp2i.mul(&lp2i).mul(&lm2i).scale(&ctx.float(64.0));
    m.scale(&den.recip())
}

/// Large-`z` coefficient matrices of the first two correction orders:
/// `(R1_z1, R1_z2, R2_z1, R2_z2)` with
/// `R^(k)(z) = Rk_z1 / z + Rk_z2 / z^2 + O(z^-3)`, assembled from the
/// endpoint partial fractions `A^(k)/(z-1) + B^(k)/(z+1)`.
pub fn r_expansion(
    lambda: &Float,
    ctx: &PrecisionContext,
) -> Result<(Matrix2, Matrix2, Matrix2, Matrix2)> {
    if lambda.is_sign_negative() && !lambda.is_zero() {
        return Err(Error::DomainError("r_expansion needs lambda >= 0".into()));
    }
    let a1 = a1(lambda, ctx);
    let b1 = b1(lambda, ctx);
    let a2 = a2(lambda, ctx);
    let b2 = b2(lambda, ctx);
    // A/(z-1) + B/(z+1) = (A+B)/z + (A-B)/z^2 + O(z^-3)
    Ok((a1.add(&b1), a1.sub(&b1), a2.add(&b2), a2.sub(&b2)))
}

/// Theorem-level recurrence asymptotics:
/// `a_n^2 = 1/4 + (4 - lambda^2) / (4 (4 + lambda^2)^2 n^2)`,
/// `b_n = -2 i lambda / ((4 + lambda^2)^2 n^2)`.
pub fn recurrence_asymptotics(
    n: usize,
    lambda: &Float,
    ctx: &PrecisionContext,
) -> Result<(MPComplex, MPComplex)> {
    if n == 0 {
        return Err(Error::DomainError("recurrence asymptotics need n >= 1".into()));
    }
    let p = ctx.prec();
    let l2 = Float::with_val(p, lambda).square();
    let denom_base = Float::with_val(p, &l2 + &Float::with_val(p, 4)).square();
    let n2 = Float::with_val(p, (n * n) as f64);
    let a_corr = (Float::with_val(p, 4) - &l2)
        / (denom_base.clone() * 4u32)
        / &n2;
    let a_sq = MPComplex::from_real(Float::with_val(p, 0.25) + a_corr);
    let b_im = -Float::with_val(p, lambda) * 2u32 / denom_base / n2;
    let b = MPComplex::new(Float::new(p), b_im);
    Ok((a_sq, b))
}

/// Recurrence coefficients assembled from the correction-matrix moments:
/// with `R1 = R1_z1/n + R2_z1/n^2` and `R2 = R1_z2/n + R2_z2/n^2`,
/// `a_n^2 = ([R1]_12 + i/2)([R1]_21 - i/2)` and
/// `b_n = (i [R1]_11 + 2 [R2]_12)/(i + 2 [R1]_12) - [R1]_22`.
///
/// Agrees with [`recurrence_asymptotics`] through order `n^{-2}`; the
/// discrepancy is the genuine `O(n^{-3})` tail of the expansion.
pub fn recurrence_from_r(
    lambda: &Float,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<(MPComplex, MPComplex)> {
    if n == 0 {
        return Err(Error::DomainError("recurrence assembly needs n >= 1".into()));
    }
    let p = ctx.prec();
    let (r1_z1, r1_z2, r2_z1, r2_z2) = r_expansion(lambda, ctx)?;
    let inv_n = Float::with_val(p, 1) / Float::with_val(p, n as f64);
    let inv_n2 = inv_n.clone().square();
    let r1 = r1_z1.scale_f(&inv_n).add(&r2_z1.scale_f(&inv_n2));
    let r2 = r1_z2.scale_f(&inv_n).add(&r2_z2.scale_f(&inv_n2));

    let half_i = MPComplex::new(Float::new(p), Float::with_val(p, 0.5));
    let a_sq = r1.m12.add(&half_i).mul(&r1.m21.sub(&half_i));

    let i_unit = MPComplex::i(p);
    let two = ctx.float(2.0);
    let num = i_unit.mul(&r1.m11).add(&r2.m12.scale(&two));
    let den = i_unit.add(&r1.m12.scale(&two));
    let b = num.div(&den).sub(&r1.m22);
    Ok((a_sq, b))
}

/// First two Laurent coefficients of `log z - g(z)` at infinity:
/// `c1 = i lambda / 4` (the first moment of the equilibrium measure) and
/// `c2 = 1/4`.
///
/// Note `c2` is the *expansion coefficient*, not the second moment: the
/// measure has `int s^2 dmu = 1/2`, but `log z - g = c1/z + c2/z^2 + ...`
/// carries the usual `1/2` from the logarithm's series, giving `1/4`.
pub fn mu_moments(lambda: &Float, ctx: &PrecisionContext) -> Result<(MPComplex, MPComplex)> {
    if lambda.is_sign_negative() && !lambda.is_zero() {
        return Err(Error::DomainError("mu_moments needs lambda >= 0".into()));
    }
    let p = ctx.prec();
    let c1 = MPComplex::new(Float::new(p), Float::with_val(p, lambda) / 4u32);
    let c2 = MPComplex::from_real(Float::with_val(p, 0.25));
    Ok((c1, c2))
}

use rug::Float;

use crate::error::{Error, Result};
use crate::potential::SCurve;
use crate::precision::{MPComplex, PrecisionContext};

/// Branch choice for `(z^2-1)^{1/2}`.
///
/// `Principal` takes the cut on the segment `[-1,1]`; `SCurve` takes it on a
/// traced curve `gamma_lambda`, which moves the discontinuity off the real
/// axis for `lambda > 0`.
#[derive(Debug, Clone, Copy)]
pub enum BranchMode<'a> {
    Principal,
    SCurve(&'a SCurve),
}

/// Offset used by side-limit evaluation near a cut: `10 * tol`.
pub fn side_limit_offset(ctx: &PrecisionContext) -> Float {
    ctx.tol() * 10u32
}

/// Distance from `z` to the segment `[-1,1]`, at working precision.
fn dist_to_segment(z: &MPComplex) -> Float {
    let p = z.prec();
    let over = {
        let mut a = z.re.clone().abs();
        a -= 1u32;
        if a.is_sign_negative() {
            Float::with_val(p, 0)
        } else {
            a
        }
    };
    Float::with_val(p, over.hypot(&z.im))
}

/// `(z^2 - 1)^{1/2}` with the requested branch; behaves like `z` at infinity.
///
/// The principal branch is `sqrt(z-1) * sqrt(z+1)` (cut exactly on `[-1,1]`).
/// In S-curve mode the principal value is negated for points enclosed between
/// the segment `[-1,1]` and the curve.
pub fn sqrt_zsq_minus_one(z: &MPComplex, branch: BranchMode<'_>, ctx: &PrecisionContext) -> Result<MPComplex> {
    let tol = ctx.tol();
    let principal = {
        let one = MPComplex::one(z.prec());
        (z - &one).sqrt().mul(&(z + &one).sqrt())
    };
    match branch {
        BranchMode::Principal => {
            let d = dist_to_segment(z);
            if d < tol {
                return Err(Error::OnCut {
                    distance: d.to_f64(),
                });
            }
            Ok(principal)
        }
        BranchMode::SCurve(curve) => {
            if curve.branch_flip(z, &tol)? {
                Ok(-principal)
            } else {
                Ok(principal)
            }
        }
    }
}

/// Principal arccosine, cut on `(-inf,-1] U [1,inf)`; satisfies `cos(result) = z`.
pub fn complex_arccos(z: &MPComplex) -> MPComplex {
    // arccos z = -i log(z + i sqrt(1 - z^2))
    let one = MPComplex::one(z.prec());
    let w = (&one - &z.mul(z)).sqrt();
    z.add(&w.mul_i()).ln().mul_neg_i()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    fn c(re: f64, im: f64) -> MPComplex {
        MPComplex::from_f64(ctx().prec(), re, im)
    }

    #[test]
    fn principal_real_axis_outside() {
        let r = sqrt_zsq_minus_one(&c(2.0, 0.0), BranchMode::Principal, &ctx()).unwrap();
        let sqrt3 = ctx().float(3.0).sqrt();
        assert!((r.re.clone() - &sqrt3).abs().to_f64() < 1e-35);
        assert!(r.im.to_f64().abs() < 1e-35);
    }

    #[test]
    fn principal_upper_boundary_value() {
        // just above the cut at x: +i sqrt(1-x^2)
        let ctx = ctx();
        let eps = side_limit_offset(&ctx);
        for x in [-0.7, 0.0, 0.4, 0.9] {
            let mut z = c(x, 0.0);
            z.im += &eps;
            let r = sqrt_zsq_minus_one(&z, BranchMode::Principal, &ctx).unwrap();
            let expect = (1.0f64 - x * x).sqrt();
            assert!((r.im.to_f64() - expect).abs() < 1e-12, "x={x}");
            assert!(r.re.to_f64().abs() < 1e-12);
        }
    }

    #[test]
    fn principal_on_cut_rejected() {
        assert!(matches!(
            sqrt_zsq_minus_one(&c(0.3, 0.0), BranchMode::Principal, &ctx()),
            Err(Error::OnCut { .. })
        ));
    }

    #[test]
    fn behaves_like_z_at_infinity() {
        // oracle: binomial series sqrt(1-u) = sum a_k u^k, a_{k+1} = a_k (2k-1)/(2k+2)
        let ctx = ctx();
        let p = ctx.prec();
        let z = c(10.0, 10.0);
        let r = sqrt_zsq_minus_one(&z, BranchMode::Principal, &ctx).unwrap();
        let ratio = r.div(&z);
        let u = z.mul(&z).recip();
        let mut series = MPComplex::one(p);
        let mut term = MPComplex::one(p);
        for k in 0..120i64 {
            let factor = Float::with_val(p, 2 * k - 1) / Float::with_val(p, 2 * k + 2);
            term = term.mul(&u).scale(&factor);
            series = series.add(&term);
        }
        let rel = ratio.sub(&series).abs() / series.abs();
        assert!(rel < ctx.tol());
    }

    #[test]
    fn arccos_values() {
        let p = ctx().prec();
        let r = complex_arccos(&c(1.0, 0.0));
        assert!(r.abs().to_f64() < 1e-30);
        let r = complex_arccos(&c(0.0, 0.0));
        let half_pi = ctx().pi() / 2u32;
        assert!((r.re.clone() - &half_pi).abs().to_f64() < 1e-35);
        // arccos(2) = i ln(2 + sqrt 3), oracle from cos(iy) = cosh(y)
        let r = complex_arccos(&c(2.0, 0.0));
        let y = ctx().float(3.0).sqrt() + 2u32;
        let y = y.ln();
        assert!(r.re.to_f64().abs() < 1e-35);
        assert!((r.im.clone().abs() - &y).abs().to_f64() < 1e-35);
        // cos(arccos z) = z in all four quadrants
        for (re, im) in [(0.5, 0.5), (-1.5, 0.7), (-0.3, -2.0), (2.5, -0.1)] {
            let z = c(re, im);
            let back = complex_arccos(&z).cos();
            assert!(back.sub(&z).abs() < ctx().tol(), "z={z}");
        }
        let _ = p;
    }
}

//! Regime classification of the quadratic differential `-Q_lambda dz^2`
//! through the sign of `Im xi(z*)`.

use rug::Float;
use serde_json::{json, Value};

use crate::error::Result;
use crate::io::float_to_decimal;
use crate::potential::scalar::{h_of_lambda, z_star};
use crate::precision::{MPComplex, PrecisionContext};

/// Zero-attracting topology of the problem at a given coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `lambda < lambda0`: a single arc joins `-1` and `1`.
    SingleArc,
    /// `lambda = lambda0` to tolerance: the level set passes through `z*`.
    Critical,
    /// `lambda > lambda0`: the critical trajectories diverge; two arcs.
    TwoArc,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::SingleArc => "SINGLE_ARC",
            Regime::Critical => "CRITICAL",
            Regime::TwoArc => "TWO_ARC",
        }
    }
}

/// Classification record: regime, double zero, and the deciding quantity.
#[derive(Debug, Clone)]
pub struct QDClassification {
    pub lambda: Float,
    pub regime: Regime,
    /// `2i/lambda`, absent at `lambda = 0`
    pub z_star: Option<MPComplex>,
    /// `Im xi(z*) = h(lambda)/2`; `+inf` at `lambda = 0`
    pub im_xi_zstar: Float,
}

/// Classify the coupling by `Im xi(z*) = log((sqrt(lambda^2+4)+2)/lambda) - sqrt(lambda^2+4)/2`.
///
/// Positive (or `lambda = 0`) means a single arc, zero to tolerance is
/// critical, negative means two arcs.
pub fn classify(lambda: &Float, ctx: &PrecisionContext) -> Result<QDClassification> {
    let p = ctx.prec();
    if lambda.is_zero() {
        return Ok(QDClassification {
            lambda: Float::new(p),
            regime: Regime::SingleArc,
            z_star: None,
            im_xi_zstar: Float::with_val(p, rug::float::Special::Infinity),
        });
    }
    let im = h_of_lambda(lambda, ctx)? / 2u32;
    let regime = if im.clone().abs() < ctx.tol() {
        Regime::Critical
    } else if im.is_sign_positive() {
        Regime::SingleArc
    } else {
        Regime::TwoArc
    };
    Ok(QDClassification {
        lambda: Float::with_val(p, lambda),
        regime,
        z_star: Some(z_star(lambda, ctx)?),
        im_xi_zstar: im,
    })
}

impl QDClassification {
    pub fn to_json(&self, ctx: &PrecisionContext) -> Value {
        let d = ctx.roundtrip_digits();
        json!({
            "lambda": float_to_decimal(&self.lambda, d),
            "regime": self.regime.as_str(),
            "z_star": self.z_star.as_ref().map(|z| crate::io::complex_to_json(z, ctx)),
            "im_xi_zstar": float_to_decimal(&self.im_xi_zstar, d),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::scalar::{solve_lambda0, xi};
    use crate::precision::BranchMode;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    #[test]
    fn regimes_on_reference_couplings() {
        let c = ctx();
        assert_eq!(classify(&c.float(0.5), &c).unwrap().regime, Regime::SingleArc);
        assert_eq!(classify(&c.float(1.5), &c).unwrap().regime, Regime::TwoArc);
        assert_eq!(classify(&c.float(0.0), &c).unwrap().regime, Regime::SingleArc);
        let l0 = solve_lambda0(&c);
        assert_eq!(classify(&l0, &c).unwrap().regime, Regime::Critical);
    }

    #[test]
    fn deciding_quantity_is_im_xi_at_zstar() {
        let c = ctx();
        for lam in [0.4, 0.9, 1.3, 1.8] {
            let l = c.float(lam);
            let cls = classify(&l, &c).unwrap();
            let zs = cls.z_star.clone().unwrap();
            let direct = xi(&zs, &l, BranchMode::Principal, &c).unwrap().im;
            let gap = Float::with_val(c.prec(), &cls.im_xi_zstar - &direct).abs();
            assert!(gap < c.tol(), "lambda={lam} gap={}", gap.to_f64());
        }
    }

    #[test]
    fn json_record_shape() {
        let c = ctx();
        let v = classify(&c.float(1.5), &c).unwrap().to_json(&c);
        assert_eq!(v["regime"], "TWO_ARC");
        assert!(v["z_star"].is_object());
    }
}

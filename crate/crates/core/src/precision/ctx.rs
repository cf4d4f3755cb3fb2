use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bits per decimal digit.
const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Decimal-digit based working precision.
///
/// `digits` is the requested decimal precision, `guard` the number of extra
/// digits carried internally. The certified tolerance of results produced
/// under this context is `tol = 10^(guard - digits)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
}

impl PrecisionContext {
    pub const DEFAULT_GUARD: u32 = 10;

    /// Context with the default guard. Fails for `digits < 20`.
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, Self::DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < 20 {
            return Err(Error::DomainError(format!(
                "precision must be at least 20 decimal digits, got {digits}"
            )));
        }
        if guard >= digits {
            return Err(Error::DomainError(format!(
                "guard digits ({guard}) must be smaller than working digits ({digits})"
            )));
        }
        Ok(Self { digits, guard })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Binary working precision.
    pub fn prec(&self) -> u32 {
        (((self.digits + self.guard) as f64) * LOG2_10).ceil() as u32 + 16
    }

    /// Certified tolerance `10^(guard - digits)`.
    pub fn tol(&self) -> Float {
        Float::with_val(self.prec(), 10u32).pow(-((self.digits - self.guard) as i32))
    }

    pub fn tol_f64(&self) -> f64 {
        10f64.powi(-((self.digits - self.guard) as i32))
    }

    /// Same context with `extra` additional working digits (guard unchanged).
    pub fn boosted(&self, extra: u32) -> Self {
        Self {
            digits: self.digits + extra,
            guard: self.guard,
        }
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.prec(), v)
    }

    pub fn float_i(&self, v: i64) -> Float {
        Float::with_val(self.prec(), v)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec(), rug::float::Constant::Pi)
    }

    /// `10^e` at working precision.
    pub fn ten_pow(&self, e: i32) -> Float {
        Float::with_val(self.prec(), 10u32).pow(e)
    }

    /// Parse a decimal string at working precision.
    pub fn parse(&self, s: &str) -> Result<Float> {
        let incomplete = Float::parse(s)
            .map_err(|e| Error::DomainError(format!("bad decimal literal {s:?}: {e}")))?;
        Ok(Float::with_val(self.prec(), incomplete))
    }

    /// Significant decimal digits that guarantee exact binary round-trip.
    pub fn roundtrip_digits(&self) -> usize {
        (self.prec() as f64 / LOG2_10).ceil() as usize + 2
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            digits: 30,
            guard: Self::DEFAULT_GUARD,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_too_few_digits() {
        assert!(PrecisionContext::new(19).is_err());
        assert!(PrecisionContext::new(20).is_ok());
    }

    #[test]
    fn tol_matches_digit_count() {
        let ctx = PrecisionContext::with_guard(30, 10).unwrap();
        let t = ctx.tol();
        assert!((t.to_f64().log10() - (-20.0)).abs() < 1e-9);
    }

    #[test]
    fn parse_roundtrip_is_exact() {
        let ctx = PrecisionContext::new(40).unwrap();
        let x = ctx.float(2.0).sqrt();
        let s = crate::io::float_to_decimal(&x, ctx.roundtrip_digits());
        let y = ctx.parse(&s).unwrap();
        assert_eq!(x, y);
    }
}

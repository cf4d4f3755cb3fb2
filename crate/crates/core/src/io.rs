//! Decimal-string serialization for multiprecision values.
//!
//! Complex scalars serialize as `{"re": "<decimal>", "im": "<decimal>"}` with
//! enough digits that re-parsing under the same precision context is
//! bit-exact. Binary floating point never appears in artifacts.

use rug::Float;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::precision::{MPComplex, PrecisionContext};

/// Render a float as a decimal literal with `sig` significant digits.
pub fn float_to_decimal(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(sig))
}

/// Encode a complex value with round-trip-exact decimal strings.
pub fn complex_to_json(z: &MPComplex, ctx: &PrecisionContext) -> Value {
    let d = ctx.roundtrip_digits();
    json!({
        "re": float_to_decimal(&z.re, d),
        "im": float_to_decimal(&z.im, d),
    })
}

/// Decode a complex value under the given context.
pub fn complex_from_json(v: &Value, ctx: &PrecisionContext) -> Result<MPComplex> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::DomainError("expected complex object".into()))?;
    let field = |k: &str| -> Result<Float> {
        let s = obj
            .get(k)
            .and_then(Value::as_str)
            .ok_or_else(|| Error::DomainError(format!("missing decimal field {k:?}")))?;
        ctx.parse(s)
    };
    Ok(MPComplex::new(field("re")?, field("im")?))
}

/// Encode a slice of complex values.
pub fn complex_seq_to_json(zs: &[MPComplex], ctx: &PrecisionContext) -> Value {
    Value::Array(zs.iter().map(|z| complex_to_json(z, ctx)).collect())
}

pub fn complex_seq_from_json(v: &Value, ctx: &PrecisionContext) -> Result<Vec<MPComplex>> {
    v.as_array()
        .ok_or_else(|| Error::DomainError("expected array of complex values".into()))?
        .iter()
        .map(|e| complex_from_json(e, ctx))
        .collect()
}

/// One CSV cell per real component, decimal strings at round-trip precision.
pub fn float_to_csv_cell(x: &Float, ctx: &PrecisionContext) -> String {
    float_to_decimal(x, ctx.roundtrip_digits())
}

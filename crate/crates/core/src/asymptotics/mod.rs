//! Closed-form strong asymptotics for the oscillatory-weight orthogonal
//! polynomials: the outer/near-curve/endpoint formulas for `p_n`, the model
//! matrix `N(z)`, the endpoint jump corrections and the first two orders of
//! the correction expansion at infinity, the recurrence-coefficient
//! asymptotics they imply, and the fixed-frequency Szego function.
//!
//! Everything here is a pure formula evaluation against a traced curve; the
//! ground truth these predictions are judged against lives in `orthopoly`.

mod formulas;
mod matrix;
mod rexpansion;

pub use formulas::{
    endpoint_pn, governing_formula, inner_pn, n_matrix, outer_pn, predict, remark_phase, szego_d,
    weight_w, AsymptoticPrediction, FormulaId, RegionConfig,
};
pub use matrix::Matrix2;
pub use rexpansion::{
    delta_k, mu_moments, r_expansion, recurrence_asymptotics, recurrence_from_r,
};

use rug::Float;

use crate::io::{complex_to_json, float_to_decimal};
use crate::precision::{MPComplex, PrecisionContext};

/// One prediction-versus-ground-truth comparison.
#[derive(Debug, Clone)]
pub struct ComparisonRecord {
    pub z: MPComplex,
    pub n: usize,
    pub lambda: Float,
    pub formula: FormulaId,
    pub predicted: MPComplex,
    pub computed: MPComplex,
}

impl ComparisonRecord {
    /// `|predicted - computed| / |computed|` (absolute error if the ground
    /// truth vanishes).
    pub fn rel_err(&self) -> Float {
        let gap = self.predicted.sub(&self.computed).abs();
        let scale = self.computed.abs();
        if scale.is_zero() {
            gap
        } else {
            gap / scale
        }
    }

    pub fn to_json(&self, ctx: &PrecisionContext) -> serde_json::Value {
        serde_json::json!({
            "schema": crate::SCHEMA_TAG,
            "kind": "comparison",
            "z": complex_to_json(&self.z, ctx),
            "n": self.n,
            "lambda": float_to_decimal(&self.lambda, ctx.roundtrip_digits()),
            "formula": self.formula.as_str(),
            "predicted": complex_to_json(&self.predicted, ctx),
            "computed": complex_to_json(&self.computed, ctx),
            "rel_err": self.rel_err().to_f64(),
        })
    }

    pub fn csv_header() -> &'static str {
        "z_re,z_im,n,lambda,formula,pred_re,pred_im,comp_re,comp_im,rel_err"
    }

    pub fn to_csv_row(&self, ctx: &PrecisionContext) -> String {
        let d = ctx.roundtrip_digits();
        format!(
            "{},{},{},{},{},{},{},{},{},{:e}",
            float_to_decimal(&self.z.re, d),
            float_to_decimal(&self.z.im, d),
            self.n,
            float_to_decimal(&self.lambda, d),
            self.formula.as_str(),
            float_to_decimal(&self.predicted.re, d),
            float_to_decimal(&self.predicted.im, d),
            float_to_decimal(&self.computed.re, d),
            float_to_decimal(&self.computed.im, d),
            self.rel_err().to_f64(),
        )
    }
}

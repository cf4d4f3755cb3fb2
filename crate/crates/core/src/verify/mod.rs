//! Ground-truth-versus-prediction harness: zero/curve geometry reports,
//! weak-* convergence diagnostics for the zero counting measure, and
//! convergence-order tables for the asymptotic formulas and recurrence
//! coefficients.
//!
//! Every report is a deterministic pure function of its inputs; rows that
//! fail with an existence problem are flagged rather than aborting a table.

use rug::Float;

use crate::asymptotics::{
    endpoint_pn, inner_pn, outer_pn, recurrence_asymptotics, FormulaId, RegionConfig,
};
use crate::error::{Error, Result};
use crate::io::{complex_to_json, float_to_csv_cell, float_to_decimal};
use crate::orthopoly::{build_recurrence, eval_poly, ProblemParams};
use crate::potential::{trace_scurve, SCurve};
use crate::precision::{MPComplex, PrecisionContext};

pub use crate::orthopoly::orthogonality_residual;

/// One zero with its exact distance to the curve polyline and the arclength
/// parameter of the nearest projection.
#[derive(Debug, Clone)]
pub struct ZeroEntry {
    pub zero: MPComplex,
    pub dist: Float,
    /// arclength parameter `s_j` of the nearest curve point
    pub s: Float,
    /// cumulative equilibrium mass at the nearest curve point
    pub mass: Float,
}

/// Distances of a zero set to the traced curve.
#[derive(Debug, Clone)]
pub struct ZeroCurveReport {
    pub n: usize,
    pub lambda: Float,
    pub max_dist: Float,
    pub mean_dist: Float,
    pub entries: Vec<ZeroEntry>,
}

/// Exact nearest-segment distances of each zero to the polyline, with
/// projected arclength parameters; one entry per zero, input order.
pub fn zero_curve_report(zeros: &[MPComplex], curve: &SCurve) -> Result<ZeroCurveReport> {
    if zeros.is_empty() {
        return Err(Error::DomainError("zero_curve_report needs zeros".into()));
    }
    let p = zeros[0].prec();
    let mut entries = Vec::with_capacity(zeros.len());
    let mut max_dist = Float::new(p);
    let mut sum = Float::new(p);
    for z in zeros {
        let (dist, seg, t) = curve.nearest(z);
        let (s, mass) = curve.interp_at(seg, &t);
        if dist > max_dist {
            max_dist = dist.clone();
        }
        sum += &dist;
        entries.push(ZeroEntry {
            zero: z.clone(),
            dist,
            s,
            mass,
        });
    }
    let mean_dist = sum / Float::with_val(p, zeros.len() as f64);
    Ok(ZeroCurveReport {
        n: zeros.len(),
        lambda: Float::with_val(p, curve.lambda()),
        max_dist,
        mean_dist,
        entries,
    })
}

impl ZeroCurveReport {
    pub fn to_json(&self, ctx: &PrecisionContext) -> serde_json::Value {
        let d = ctx.roundtrip_digits();
        serde_json::json!({
            "schema": crate::SCHEMA_TAG,
            "kind": "zero_curve",
            "n": self.n,
            "lambda": float_to_decimal(&self.lambda, d),
            "max_dist": float_to_decimal(&self.max_dist, d),
            "mean_dist": float_to_decimal(&self.mean_dist, d),
            "entries": self.entries.iter().map(|e| serde_json::json!({
                "zero": complex_to_json(&e.zero, ctx),
                "dist": float_to_decimal(&e.dist, d),
                "s": float_to_decimal(&e.s, d),
                "mass": float_to_decimal(&e.mass, d),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn csv_header() -> &'static str {
        "zero_re,zero_im,dist,s,mass"
    }

    pub fn to_csv(&self, ctx: &PrecisionContext) -> String {
        let mut out = String::from(Self::csv_header());
        out.push('\n');
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                float_to_csv_cell(&e.zero.re, ctx),
                float_to_csv_cell(&e.zero.im, ctx),
                float_to_csv_cell(&e.dist, ctx),
                float_to_csv_cell(&e.s, ctx),
                float_to_csv_cell(&e.mass, ctx),
            ));
        }
        out
    }
}

/// Kolmogorov–Smirnov-style comparison of the empirical zero distribution
/// (projected onto the curve) against the equilibrium cumulative mass.
#[derive(Debug, Clone)]
pub struct CdfReport {
    pub n: usize,
    pub lambda: Float,
    /// `max_j |j/n - mass(s_(j))|` over the sorted projected parameters
    pub ks_stat: Float,
    /// sorted cumulative-mass values at the projections
    pub masses: Vec<Float>,
}

/// Project the zeros onto the curve, sort by cumulative mass, and compare the
/// empirical CDF `j/n` against the equilibrium CDF.
pub fn cdf_report(zeros: &[MPComplex], curve: &SCurve) -> Result<CdfReport> {
    let base = zero_curve_report(zeros, curve)?;
    let p = zeros[0].prec();
    let mut masses: Vec<Float> = base.entries.iter().map(|e| e.mass.clone()).collect();
    masses.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let nf = Float::with_val(p, zeros.len() as f64);
    let mut ks = Float::new(p);
    for (j, m) in masses.iter().enumerate() {
        let emp = Float::with_val(p, (j + 1) as f64) / &nf;
        let gap = Float::with_val(p, &emp - m).abs();
        if gap > ks {
            ks = gap;
        }
    }
    Ok(CdfReport {
        n: zeros.len(),
        lambda: base.lambda,
        ks_stat: ks,
        masses,
    })
}

impl CdfReport {
    pub fn to_json(&self, ctx: &PrecisionContext) -> serde_json::Value {
        let d = ctx.roundtrip_digits();
        serde_json::json!({
            "schema": crate::SCHEMA_TAG,
            "kind": "cdf",
            "n": self.n,
            "lambda": float_to_decimal(&self.lambda, d),
            "ks_stat": float_to_decimal(&self.ks_stat, d),
            "masses": self.masses.iter().map(|m| float_to_decimal(m, d)).collect::<Vec<_>>(),
        })
    }

    pub fn csv_header() -> &'static str {
        "j,empirical,mass"
    }

    pub fn to_csv(&self, ctx: &PrecisionContext) -> String {
        let mut out = String::from(Self::csv_header());
        out.push('\n');
        for (j, m) in self.masses.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{}\n",
                j + 1,
                (j + 1) as f64 / self.n as f64,
                float_to_csv_cell(m, ctx),
            ));
        }
        out
    }
}

/// Quantities a [`convergence_table`] can track.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantityId {
    /// recurrence coefficient `a_n^2` versus its closed-form asymptotics
    ASq,
    /// recurrence coefficient `b_n` versus its closed-form asymptotics
    B,
    /// the outer formula at `z = 2 + i`
    Outer,
    /// the near-curve formula at the curve apex
    Inner,
    /// the endpoint formula at `z = 1 + 0.03 i`
    Endpoint,
}

impl QuantityId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "a2" | "a_sq" => Ok(QuantityId::ASq),
            "b" => Ok(QuantityId::B),
            "outer" => Ok(QuantityId::Outer),
            "inner" => Ok(QuantityId::Inner),
            "endpoint" => Ok(QuantityId::Endpoint),
            other => Err(Error::DomainError(format!(
                "unknown quantity {other:?}; expected a2, b, outer, inner or endpoint"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            QuantityId::ASq => "a2",
            QuantityId::B => "b",
            QuantityId::Outer => "outer",
            QuantityId::Inner => "inner",
            QuantityId::Endpoint => "endpoint",
        }
    }
}

/// One row of a convergence table. A failed ground-truth computation leaves
/// `computed`/`rel_err` empty and records the failure in `note`.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub n: usize,
    pub computed: Option<MPComplex>,
    pub predicted: MPComplex,
    pub rel_err: Option<f64>,
    pub note: Option<String>,
}

/// Computed-versus-predicted values over an `n` grid with a fitted
/// convergence order from log-log regression of `|computed - predicted|`.
#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    pub quantity: QuantityId,
    pub lambda: Float,
    pub rows: Vec<ConvergenceRow>,
    /// `None` when fewer than two rows produced a nonzero deviation
    pub fitted_order: Option<f64>,
}

/// Build the ground-truth-versus-prediction table for `quantity` over the
/// strictly increasing grid `ns` (at least three values) at fixed coupling.
pub fn convergence_table(
    quantity: QuantityId,
    ns: &[usize],
    lambda: &Float,
    ctx: &PrecisionContext,
) -> Result<ConvergenceTable> {
    if ns.len() < 3 || ns.windows(2).any(|w| w[0] >= w[1]) || ns[0] == 0 {
        return Err(Error::DomainError(
            "convergence_table needs >= 3 strictly increasing positive n values".into(),
        ));
    }
    let p = ctx.prec();
    let curve = match quantity {
        QuantityId::ASq | QuantityId::B => None,
        _ => Some(trace_scurve(lambda, 5e-3, &ctx.ten_pow(-20), ctx)?),
    };
    let cfg = RegionConfig::default();
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let omega = Float::with_val(p, lambda) * Float::with_val(p, n as f64);
        let ground = ProblemParams::new(n + 2, omega, *ctx)
            .and_then(|params| build_recurrence(&params));
        let (predicted, computed) = match quantity {
            QuantityId::ASq => {
                let (a_sq, _) = recurrence_asymptotics(n, lambda, ctx)?;
                (a_sq, ground.map(|(_, rec)| rec.a_sq()[n - 1].clone()))
            }
            QuantityId::B => {
                let (_, b) = recurrence_asymptotics(n, lambda, ctx)?;
                (b, ground.map(|(_, rec)| rec.b()[n].clone()))
            }
            QuantityId::Outer => {
                let curve = curve.as_ref().unwrap();
                let z = MPComplex::from_f64(p, 2.0, 1.0);
                let pred = outer_pn(&z, n, lambda, curve, &cfg, ctx)?;
                (pred, ground.and_then(|(_, rec)| eval_poly(&rec, n, &z)))
            }
            QuantityId::Inner => {
                let curve = curve.as_ref().unwrap();
                let z = curve.points()[curve.apex_index()].clone();
                let pred = inner_pn(&z, n, lambda, curve, &cfg, ctx)?;
                (pred, ground.and_then(|(_, rec)| eval_poly(&rec, n, &z)))
            }
            QuantityId::Endpoint => {
                let curve = curve.as_ref().unwrap();
                let z = MPComplex::from_f64(p, 1.0, 0.03);
                let pred = endpoint_pn(&z, n, lambda, curve, 1, &cfg, ctx)?;
                (pred, ground.and_then(|(_, rec)| eval_poly(&rec, n, &z)))
            }
        };
        let row = match computed {
            Ok(value) => {
                let gap = predicted.sub(&value).abs().to_f64();
                let scale = value.abs().to_f64();
                let rel = if scale > 0.0 { gap / scale } else { gap };
                ConvergenceRow {
                    n,
                    computed: Some(value),
                    predicted,
                    rel_err: Some(rel),
                    note: None,
                }
            }
            Err(e) => ConvergenceRow {
                n,
                computed: None,
                predicted,
                rel_err: None,
                note: Some(e.to_string()),
            },
        };
        rows.push(row);
    }
    let fitted_order = fit_order(&rows);
    Ok(ConvergenceTable {
        quantity,
        lambda: Float::with_val(p, lambda),
        rows,
        fitted_order,
    })
}

/// Least-squares slope of `log rel_err` against `log n`, negated: the
/// empirical convergence order. Relative error is the right scale-free
/// deviation here because the pointwise quantities grow exponentially in `n`.
fn fit_order(rows: &[ConvergenceRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| {
            let dev = r.rel_err?;
            if dev > 0.0 && dev.is_finite() {
                Some(((r.n as f64).ln(), dev.ln()))
            } else {
                None
            }
        })
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    Some(-((n * sxy - sx * sy) / (n * sxx - sx * sx)))
}

impl ConvergenceTable {
    pub fn to_json(&self, ctx: &PrecisionContext) -> serde_json::Value {
        let d = ctx.roundtrip_digits();
        serde_json::json!({
            "schema": crate::SCHEMA_TAG,
            "kind": "convergence",
            "quantity": self.quantity.as_str(),
            "lambda": float_to_decimal(&self.lambda, d),
            "fitted_order": self.fitted_order,
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "n": r.n,
                "computed": r.computed.as_ref().map(|c| complex_to_json(c, ctx)),
                "predicted": complex_to_json(&r.predicted, ctx),
                "rel_err": r.rel_err,
                "note": r.note,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn csv_header() -> &'static str {
        "n,quantity,comp_re,comp_im,pred_re,pred_im,rel_err,note"
    }

    pub fn to_csv(&self, ctx: &PrecisionContext) -> String {
        let mut out = String::from(Self::csv_header());
        out.push('\n');
        for r in &self.rows {
            let (cre, cim) = match &r.computed {
                Some(c) => (
                    float_to_csv_cell(&c.re, ctx),
                    float_to_csv_cell(&c.im, ctx),
                ),
                None => (String::new(), String::new()),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.n,
                self.quantity.as_str(),
                cre,
                cim,
                float_to_csv_cell(&r.predicted.re, ctx),
                float_to_csv_cell(&r.predicted.im, ctx),
                r.rel_err.map(|e| format!("{e:e}")).unwrap_or_default(),
                r.note.clone().unwrap_or_default(),
            ));
        }
        out
    }
}

/// The asymptotic formula a table quantity exercises, when it is one of the
/// pointwise ones.
pub fn quantity_formula(q: QuantityId) -> Option<FormulaId> {
    match q {
        QuantityId::Outer => Some(FormulaId::Outer),
        QuantityId::Inner => Some(FormulaId::Inner),
        QuantityId::Endpoint => Some(FormulaId::EndpointP1),
        _ => None,
    }
}

//! Complex Gaussian quadrature for `int_{-1}^{1} f(x) e^{i omega x} dx`.

use rug::Float;

use crate::error::{Error, Result};
use crate::io::{complex_seq_to_json, float_to_csv_cell};
use crate::numutil::gauss_legendre;
use crate::orthopoly::recurrence::{eval_poly, eval_poly_with_deriv, RecurrenceTable};
use crate::orthopoly::zeros::zeros;
use crate::potential::SCurve;
use crate::precision::{MPComplex, PrecisionContext};

/// An `n`-point Gaussian rule for the oscillatory weight: exact on
/// polynomials of degree `<= 2n-1`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    n: usize,
    omega: Float,
    nodes: Vec<MPComplex>,
    weights: Vec<MPComplex>,
}

impl QuadratureRule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &Float {
        &self.omega
    }

    pub fn nodes(&self) -> &[MPComplex] {
        &self.nodes
    }

    pub fn weights(&self) -> &[MPComplex] {
        &self.weights
    }

    pub fn to_json(&self, ctx: &PrecisionContext) -> serde_json::Value {
        serde_json::json!({
            "schema": crate::SCHEMA_TAG,
            "kind": "quadrature",
            "n": self.n,
            "omega": crate::io::float_to_decimal(&self.omega, ctx.roundtrip_digits()),
            "nodes": complex_seq_to_json(&self.nodes, ctx),
            "weights": complex_seq_to_json(&self.weights, ctx),
        })
    }

    /// CSV rows `index,node_re,node_im,weight_re,weight_im`.
    pub fn to_csv(&self, ctx: &PrecisionContext) -> String {
        let mut out = String::from("index,node_re,node_im,weight_re,weight_im\n");
        for (j, (x, w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                j,
                float_to_csv_cell(&x.re, ctx),
                float_to_csv_cell(&x.im, ctx),
                float_to_csv_cell(&w.re, ctx),
                float_to_csv_cell(&w.im, ctx),
            ));
        }
        out
    }
}

/// Gaussian rule from the recurrence: nodes are the zeros of `p_n`, weights
/// the Christoffel quotient `w_j = h[n-1] / (p_{n-1}(x_j) p_n'(x_j))`, which
/// stays within formal (unconjugated) orthogonality and avoids complex
/// square roots of the norms.
pub fn quadrature_rule(
    rec: &RecurrenceTable,
    n: usize,
    omega: &Float,
    ctx: &PrecisionContext,
    init: Option<&SCurve>,
) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::DomainError("quadrature rule needs n >= 1".into()));
    }
    let p = ctx.prec();
    let nodes = zeros(rec, n, ctx, init)?;
    let hn1 = &rec.h()[n - 1];
    let tol = ctx.tol();
    let mut weights = Vec::with_capacity(n);
    for (j, x) in nodes.iter().enumerate() {
        let (_, dpn) = eval_poly_with_deriv(rec, n, x)?;
        let pn1 = eval_poly(rec, n - 1, x)?;
        let denom = pn1.mul(&dpn);
        if denom.abs() < tol {
            return Err(Error::DegenerateNode { index: j });
        }
        weights.push(hn1.div(&denom));
    }
    // node separation certificate: a clustered pair means the rule is
    // numerically a lower-order one
    let sep_floor = ctx.tol().sqrt();
    for i in 0..n {
        for j in (i + 1)..n {
            if nodes[i].sub(&nodes[j]).abs() < sep_floor {
                return Err(Error::DegenerateNode { index: j });
            }
        }
    }
    Ok(QuadratureRule {
        n,
        omega: Float::with_val(p, omega),
        nodes,
        weights,
    })
}

/// `sum_j w_j f(x_j)`, the quadrature approximation of
/// `int_{-1}^{1} f(x) e^{i omega x} dx`.
pub fn integrate<F>(rule: &QuadratureRule, mut f: F) -> Result<MPComplex>
where
    F: FnMut(&MPComplex) -> Result<MPComplex>,
{
    let p = rule.nodes[0].prec();
    let mut acc = MPComplex::zero(p);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc = acc.add(&w.mul(&f(x)?));
    }
    Ok(acc)
}

/// Reference integrator: panel-wise Gauss–Legendre of `f(x) e^{i omega x}`
/// with panel width at most `pi / max(omega, 1)` (a fraction of the
/// oscillation period) and order chosen from the digit budget, certified by
/// panel halving until two successive refinements agree to tolerance.
pub fn oracle_integrate<F>(
    mut f: F,
    omega: &Float,
    ctx: &PrecisionContext,
) -> Result<MPComplex>
where
    F: FnMut(&MPComplex) -> Result<MPComplex>,
{
    let p = ctx.prec();
    let om = omega.to_f64();
    if !om.is_finite() || om < 0.0 {
        return Err(Error::DomainError(format!(
            "oracle integration requires finite nonnegative omega, got {omega}"
        )));
    }
    let order = (ctx.digits() as usize).clamp(16, 256);
    let (gx, gw) = gauss_legendre(order, p);
    let width_cap = std::f64::consts::PI / om.max(1.0);
    let mut panels = (2.0 / width_cap).ceil() as usize;

    let mut eval = |panels: usize| -> Result<MPComplex> {
        let mut acc = MPComplex::zero(p);
        let w_panel = Float::with_val(p, 2) / Float::with_val(p, panels as u32);
        for k in 0..panels {
            let lo = Float::with_val(p, -1) + Float::with_val(p, &w_panel * &Float::with_val(p, k as u32));
            let mid = Float::with_val(p, &lo + &Float::with_val(p, &w_panel / &Float::with_val(p, 2)));
            let half = Float::with_val(p, &w_panel / &Float::with_val(p, 2));
            for (x, w) in gx.iter().zip(&gw) {
                let xx = Float::with_val(p, &mid + &Float::with_val(p, &half * x));
                let zx = MPComplex::from_real(xx.clone());
                let phase = MPComplex::new(Float::new(p), Float::with_val(p, omega * &xx)).exp();
                let term = f(&zx)?.mul(&phase).scale(&Float::with_val(p, &half * w));
                acc = acc.add(&term);
            }
        }
        Ok(acc)
    };

    let mut prev = eval(panels)?;
    for _ in 0..8 {
        panels *= 2;
        let next = eval(panels)?;
        let scale = Float::with_val(p, next.abs()).max(&Float::with_val(p, 1));
        if prev.sub(&next).abs() < ctx.tol() * scale {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::PrecisionExhausted(
        "panel halving did not certify the oracle integral".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::moments::{moments, MomentTable};
    use crate::orthopoly::recurrence::recurrence_from_moments;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    fn setup(omega: f64, n: usize, c: &PrecisionContext) -> (MomentTable, RecurrenceTable) {
        let mom = moments(&c.float(omega), 2 * n, c).unwrap();
        let rec = recurrence_from_moments(&mom, n, c).unwrap();
        (mom, rec)
    }

    #[test]
    fn weights_sum_to_m0() {
        let c = ctx();
        for (omega, n) in [(1.2, 4), (5.0, 7)] {
            let (mom, rec) = setup(omega, n, &c);
            let rule = quadrature_rule(&rec, n, &c.float(omega), &c, None).unwrap();
            let total = rule
                .weights()
                .iter()
                .fold(MPComplex::zero(c.prec()), |acc, w| acc.add(w));
            assert!(
                total.sub(mom.get(0)).abs() < c.tol() * 100_000u32,
                "omega={omega} n={n}"
            );
        }
    }

    #[test]
    fn one_point_rule() {
        let c = ctx();
        let (mom, rec) = setup(2.4, 1, &c);
        let rule = quadrature_rule(&rec, 1, &c.float(2.4), &c, None).unwrap();
        assert!(rule.nodes()[0].sub(&rec.b()[0]).abs() < c.tol() * 10u32);
        assert!(rule.weights()[0].sub(mom.get(0)).abs() < c.tol() * 10u32);
    }

    #[test]
    fn legendre_two_point_rule() {
        let c = ctx();
        let (_, rec) = setup(0.0, 2, &c);
        let rule = quadrature_rule(&rec, 2, &c.float(0.0), &c, None).unwrap();
        let r = (c.float(1.0) / 3u32).sqrt();
        assert!(rule.nodes()[0].add(&MPComplex::from_real(r)).abs() < c.tol() * 100u32);
        for w in rule.weights() {
            assert!(w.sub(&MPComplex::one(c.prec())).abs() < c.tol() * 100u32);
        }
    }

    #[test]
    fn exact_on_monomials_through_2n_minus_1() {
        let c = ctx();
        let n = 5usize;
        let omega = 3.0f64;
        let (mom, rec) = setup(omega, n, &c);
        let rule = quadrature_rule(&rec, n, &c.float(omega), &c, None).unwrap();
        let m0 = mom.get(0).abs();
        for k in 0..(2 * n) {
            let got = integrate(&rule, |x| Ok(x.pow_i(k as i64))).unwrap();
            let gap = got.sub(mom.get(k)).abs();
            assert!(gap < c.tol() * 1_000_000u32 * m0.clone(), "k={k} gap={gap}");
        }
    }

    #[test]
    fn constant_integrand_closed_form() {
        let c = ctx();
        let omega = 2.0f64;
        let (_, rec) = setup(omega, 3, &c);
        let rule = quadrature_rule(&rec, 3, &c.float(omega), &c, None).unwrap();
        let got = integrate(&rule, |_| Ok(MPComplex::one(c.prec()))).unwrap();
        let expect = c.float(omega).sin() * 2u32 / c.float(omega);
        assert!(got.sub(&MPComplex::from_real(expect)).abs() < c.tol() * 1000u32);
    }

    #[test]
    fn legendre_rule_integrates_exp() {
        // omega=0, n=5, f=exp: e - 1/e to 1e-10
        let c = ctx();
        let (_, rec) = setup(0.0, 5, &c);
        let rule = quadrature_rule(&rec, 5, &c.float(0.0), &c, None).unwrap();
        let got = integrate(&rule, |x| Ok(x.exp())).unwrap();
        let e = c.float(1.0).exp();
        let expect = Float::with_val(c.prec(), &e - &e.clone().recip());
        assert!(got.sub(&MPComplex::from_real(expect)).abs() < c.ten_pow(-9));
    }

    #[test]
    fn oracle_closed_forms() {
        let c = ctx();
        // f = 1
        let got = oracle_integrate(|_| Ok(MPComplex::one(c.prec())), &c.float(2.0), &c).unwrap();
        let expect = c.float(2.0).sin() * 2u32 / c.float(2.0);
        assert!(got.sub(&MPComplex::from_real(expect)).abs() < c.tol() * 100u32);
        // f = id at omega = pi: 2i/pi
        let got = oracle_integrate(|x| Ok(x.clone()), &c.pi(), &c).unwrap();
        let expect = MPComplex::new(Float::new(c.prec()), c.float(2.0) / c.pi());
        assert!(got.sub(&expect).abs() < c.tol() * 100u32);
        // omega = 0, f = exp
        let got = oracle_integrate(|x| Ok(x.exp()), &c.float(0.0), &c).unwrap();
        let e = c.float(1.0).exp();
        let expect = Float::with_val(c.prec(), &e - &e.clone().recip());
        assert!(got.sub(&MPComplex::from_real(expect)).abs() < c.tol() * 100u32);
    }

    #[test]
    fn rule_agrees_with_oracle_on_analytic_integrand() {
        let c = ctx();
        let omega = 8.0f64;
        let n = 12usize;
        let (_, rec) = setup(omega, n, &c);
        let rule = quadrature_rule(&rec, n, &c.float(omega), &c, None).unwrap();
        let f = |x: &MPComplex| Ok(x.mul(x).add(&MPComplex::one(x.prec())).recip());
        let got = integrate(&rule, f).unwrap();
        let expect = oracle_integrate(f, &c.float(omega), &c).unwrap();
        // 1/(1+x^2) has poles at +-i: the rule converges geometrically but
        // is not exact; n=12 gives ~1e-11 here
        assert!(got.sub(&expect).abs() < c.ten_pow(-6));
    }
}

//! Three-term recurrence coefficients of the formal orthogonal polynomials,
//! obtained from the moment table by non-Hermitian Hankel elimination.

use rug::Float;

use crate::error::{Error, Result};
use crate::io::complex_seq_to_json;
use crate::orthopoly::moments::{moments, MomentTable};
use crate::precision::{MPComplex, PrecisionContext};

/// A single (n, omega) problem instance.
///
/// The coupling `lambda = omega / n` is stored explicitly because the
/// asymptotic formulas are parametrized by it.
#[derive(Debug, Clone)]
pub struct ProblemParams {
    n: usize,
    omega: Float,
    lambda: Float,
    ctx: PrecisionContext,
}

impl ProblemParams {
    pub fn new(n: usize, omega: Float, ctx: PrecisionContext) -> Result<Self> {
        if n == 0 {
            return Err(Error::DomainError("degree n must be at least 1".into()));
        }
        if !omega.is_finite() || omega.is_sign_negative() && !omega.is_zero() {
            return Err(Error::DomainError(format!(
                "omega must be finite and nonnegative, got {omega}"
            )));
        }
        let lambda = Float::with_val(ctx.prec(), &omega / &Float::with_val(ctx.prec(), n as u32));
        Ok(Self { n, omega, lambda, ctx })
    }

    /// A problem given by its coupling: `omega = lambda * n`.
    pub fn from_lambda(n: usize, lambda: Float, ctx: PrecisionContext) -> Result<Self> {
        let omega = Float::with_val(ctx.prec(), &lambda * &Float::with_val(ctx.prec(), n as u32));
        let mut p = Self::new(n, omega, ctx)?;
        // store the exact lambda rather than the roundtripped quotient
        p.lambda = lambda;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &Float {
        &self.omega
    }

    pub fn lambda(&self) -> &Float {
        &self.lambda
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }
}

/// Monic three-term recurrence data:
/// `p_{k+1}(z) = (z - b_k) p_k(z) - a^2_k p_{k-1}(z)`.
///
/// `h[k]` is the formal norm `<p_k, p_k>` (no conjugation); `kappa_n` is
/// exposed only through `kappa_n^2 = 1/h[n]`, since the complex square root
/// has no canonical branch.
#[derive(Debug, Clone)]
pub struct RecurrenceTable {
    a_sq: Vec<MPComplex>,
    b: Vec<MPComplex>,
    h: Vec<MPComplex>,
    exists: Vec<bool>,
    pivot_floor: f64,
}

impl RecurrenceTable {
    /// `a^2_k` for `k = 1..=len`; index 0 of the slice is `a^2_1`.
    pub fn a_sq(&self) -> &[MPComplex] {
        &self.a_sq
    }

    /// `b_k` for `k = 0..len`.
    pub fn b(&self) -> &[MPComplex] {
        &self.b
    }

    /// Norms `h[k] = <p_k, p_k>` for `k = 0..len`.
    pub fn h(&self) -> &[MPComplex] {
        &self.h
    }

    /// `exists[k]` is true when the degree-`k` monic polynomial exists.
    pub fn exists(&self) -> &[bool] {
        &self.exists
    }

    /// Smallest elimination pivot magnitude encountered (relative to its
    /// row scale).
    pub fn pivot_floor(&self) -> f64 {
        self.pivot_floor
    }

    /// Highest degree whose construction was attempted.
    pub fn degree(&self) -> usize {
        self.exists.len() - 1
    }

    fn require(&self, k: usize) -> Result<()> {
        for (deg, ok) in self.exists.iter().enumerate().take(k + 1) {
            if !ok {
                return Err(Error::ExistenceFailure {
                    degree: deg,
                    pivot: self.pivot_floor,
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self, ctx: &PrecisionContext) -> serde_json::Value {
        serde_json::json!({
            "schema": crate::SCHEMA_TAG,
            "kind": "recurrence",
            "a_sq": complex_seq_to_json(&self.a_sq, ctx),
            "b": complex_seq_to_json(&self.b, ctx),
            "h": complex_seq_to_json(&self.h, ctx),
            "exists": self.exists,
            "pivot_floor": self.pivot_floor,
        })
    }
}

/// A monic polynomial in the coefficient basis, ascending powers.
#[derive(Debug, Clone)]
pub struct MonicPolynomial {
    coeffs: Vec<MPComplex>,
}

impl MonicPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MPComplex] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &MPComplex) -> MPComplex {
        let p = z.prec();
        let mut acc = MPComplex::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }

    /// Horner evaluation of the derivative.
    pub fn eval_deriv(&self, z: &MPComplex) -> MPComplex {
        let p = z.prec();
        let mut acc = MPComplex::zero(p);
        for (j, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc.mul(z).add(&c.scale(&Float::with_val(p, j as u32)));
        }
        acc
    }
}

/// Recurrence coefficients through degree `n` by the moment-to-recurrence
/// elimination (modified Chebyshev with the monomial basis): the quantities
/// `sigma[k][l] = <p_k, x^l>` satisfy
/// `sigma[k][l] = sigma[k-1][l+1] - b_{k-1} sigma[k-1][l] - a^2_{k-1} sigma[k-2][l]`,
/// which is exactly row elimination of the Hankel moment matrix without any
/// conjugation. Pivots are `h[k] = sigma[k][k]`; a pivot below
/// `10^{-digits/2}` of its row scale raises `ExistenceFailure` for degree
/// `k+1`.
pub fn recurrence_from_moments(
    mom: &MomentTable,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<RecurrenceTable> {
    if n == 0 {
        return Err(Error::DomainError("recurrence table needs n >= 1".into()));
    }
    if mom.kmax() < 2 * n {
        return Err(Error::DomainError(format!(
            "moment table covers k <= {}, need k <= {}",
            mom.kmax(),
            2 * n
        )));
    }
    let p = ctx.prec();
    let threshold = ctx.ten_pow(-(ctx.digits() as i32) / 2);

    let mut a_sq: Vec<MPComplex> = Vec::new();
    let mut b: Vec<MPComplex> = Vec::new();
    let mut h: Vec<MPComplex> = Vec::new();
    let mut exists = vec![true]; // degree 0 (p_0 = 1) always exists
    let mut pivot_floor = f64::INFINITY;

    // sigma rows for degrees k-1 and k; row k holds l = k..=2n-k
    let mut prev: Vec<MPComplex> = Vec::new();
    let mut cur: Vec<MPComplex> = mom.all()[..=2 * n].to_vec();

    for k in 0..n {
        // pivot for constructing degree k+1: h[k] = sigma[k][k]
        let pivot = cur[0].clone();
        let row_scale = cur
            .iter()
            .map(|v| v.abs())
            .fold(Float::new(p), |acc, v| acc.max(&v));
        let rel = if row_scale.is_zero() {
            0.0
        } else {
            (pivot.abs() / &row_scale).to_f64()
        };
        if rel < pivot_floor {
            pivot_floor = rel;
        }
        h.push(pivot.clone());
        if Float::with_val(p, pivot.abs())
            < Float::with_val(p, &threshold * &row_scale.clone().max(&ctx.tol()))
        {
            exists.push(false);
            // coefficients from this degree on are undefined
            return Ok(RecurrenceTable {
                a_sq,
                b,
                h,
                exists,
                pivot_floor,
            });
        }

        // b_k = sigma[k][k+1]/sigma[k][k] - sigma[k-1][k]/sigma[k-1][k-1]
        let mut bk = cur[1].div(&pivot);
        if k > 0 {
            bk = bk.sub(&prev[1].div(&prev[0]));
        }
        // a^2_k = sigma[k][k]/sigma[k-1][k-1]
        if k > 0 {
            a_sq.push(pivot.div(&prev[0]));
        }
        b.push(bk.clone());
        exists.push(true);

        // next row: l = (k+1)..=(2n-k-1)
        let mut next: Vec<MPComplex> = Vec::with_capacity(2 * n - 2 * k - 1);
        for l in 0..(2 * n - 2 * k - 1) {
            // rows are stored from their own diagonal: cur[i] = sigma[k][k+i],
            // so sigma[k+1][k+1+l] pulls cur[l+2], cur[l+1] and prev[l+2]
            let mut v = cur[l + 2].sub(&bk.mul(&cur[l + 1]));
            if k > 0 {
                let ak_sq = a_sq.last().unwrap();
                v = v.sub(&ak_sq.mul(&prev[l + 2]));
            }
            next.push(v);
        }
        prev = std::mem::take(&mut cur);
        cur = next;
    }
    // h[n] = sigma[n][n]
    h.push(cur[0].clone());
    Ok(RecurrenceTable {
        a_sq,
        b,
        h,
        exists,
        pivot_floor,
    })
}

/// `p_k(z)` by the forward recurrence.
pub fn eval_poly(rec: &RecurrenceTable, k: usize, z: &MPComplex) -> Result<MPComplex> {
    rec.require(k)?;
    let p = z.prec();
    let mut pm1 = MPComplex::zero(p);
    let mut pk = MPComplex::one(p);
    for j in 0..k {
        let mut next = z.sub(&rec.b[j]).mul(&pk);
        if j > 0 {
            next = next.sub(&rec.a_sq[j - 1].mul(&pm1));
        }
        pm1 = pk;
        pk = next;
    }
    Ok(pk)
}

/// `p_k(z)` and `p_k'(z)` together, by differentiating the recurrence.
pub fn eval_poly_with_deriv(
    rec: &RecurrenceTable,
    k: usize,
    z: &MPComplex,
) -> Result<(MPComplex, MPComplex)> {
    rec.require(k)?;
    let p = z.prec();
    let mut pm1 = MPComplex::zero(p);
    let mut pk = MPComplex::one(p);
    let mut dm1 = MPComplex::zero(p);
    let mut dk = MPComplex::zero(p);
    for j in 0..k {
        let zb = z.sub(&rec.b[j]);
        let mut next = zb.mul(&pk);
        let mut dnext = pk.add(&zb.mul(&dk));
        if j > 0 {
            next = next.sub(&rec.a_sq[j - 1].mul(&pm1));
            dnext = dnext.sub(&rec.a_sq[j - 1].mul(&dm1));
        }
        pm1 = pk;
        pk = next;
        dm1 = dk;
        dk = dnext;
    }
    Ok((pk, dk))
}

/// Coefficient expansion of `p_n` from the recurrence (ascending powers,
/// leading coefficient exactly 1).
pub fn monic_coefficients(rec: &RecurrenceTable, n: usize, ctx: &PrecisionContext) -> Result<MonicPolynomial> {
    rec.require(n)?;
    let p = ctx.prec();
    let mut pm1: Vec<MPComplex> = vec![];
    let mut pk: Vec<MPComplex> = vec![MPComplex::one(p)];
    for j in 0..n {
        // next = (x - b_j) * pk - a^2_{j-1} * pm1
        let mut next = vec![MPComplex::zero(p); pk.len() + 1];
        for (i, c) in pk.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&rec.b[j].mul(c));
        }
        if j > 0 {
            for (i, c) in pm1.iter().enumerate() {
                next[i] = next[i].sub(&rec.a_sq[j - 1].mul(c));
            }
        }
        pm1 = std::mem::take(&mut pk);
        pk = next;
    }
    // pin the leading coefficient to exactly one
    let last = pk.len() - 1;
    pk[last] = MPComplex::one(p);
    Ok(MonicPolynomial { coeffs: pk })
}

/// Orthogonality residual of the computed `p_n`:
/// `max_{k<n} |sum_j coeffs[j] m[j+k]| / |h[n-1]|`.
pub fn orthogonality_residual(
    rec: &RecurrenceTable,
    mom: &MomentTable,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let p = ctx.prec();
    if n == 0 {
        return Ok(Float::new(p));
    }
    rec.require(n)?;
    if mom.kmax() < 2 * n - 1 {
        return Err(Error::DomainError(format!(
            "moment table covers k <= {}, need k <= {}",
            mom.kmax(),
            2 * n - 1
        )));
    }
    let poly = monic_coefficients(rec, n, ctx)?;
    let scale = rec.h[n - 1].abs();
    let mut worst = Float::new(p);
    for k in 0..n {
        let mut acc = MPComplex::zero(p);
        for (j, c) in poly.coeffs().iter().enumerate() {
            acc = acc.add(&c.mul(mom.get(j + k)));
        }
        let r = acc.abs() / &scale;
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

/// Full construction pipeline under the precision policy
/// `digits(n) = max(user, 40 + 2n)`: moments and elimination at policy
/// digits, then the orthogonality residual is checked against
/// `10^{-digits/3}` and the digits are doubled once on failure before
/// erroring with `PrecisionExhausted`.
pub fn build_recurrence(params: &ProblemParams) -> Result<(MomentTable, RecurrenceTable)> {
    let n = params.n();
    let user = params.ctx().digits();
    let mut digits = user.max(40 + 2 * n as u32);
    for attempt in 0..2 {
        let wctx = PrecisionContext::new(digits)?;
        let mom = moments(&Float::with_val(wctx.prec(), params.omega()), 2 * n, &wctx)?;
        let rec = recurrence_from_moments(&mom, n, &wctx)?;
        if rec.exists().iter().any(|e| !e) {
            // a genuine nonexistence is not a precision problem
            return Ok((mom, rec));
        }
        let residual = orthogonality_residual(&rec, &mom, n, &wctx)?;
        let bound = wctx.ten_pow(-(wctx.digits() as i32) / 3);
        if residual < bound {
            return Ok((mom, rec));
        }
        if attempt == 0 {
            digits *= 2;
        } else {
            return Err(Error::PrecisionExhausted(format!(
                "orthogonality residual {residual} exceeds {bound} even after doubling to {digits} digits"
            )));
        }
    }
    unreachable!()
}

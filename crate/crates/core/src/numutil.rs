//! Small shared numerical helpers (internal).

use rug::Float;

/// Gauss–Legendre nodes and weights of order `m` on `[-1, 1]`, computed at
/// binary precision `prec` by Newton iteration on the Legendre recurrence.
pub(crate) fn gauss_legendre(m: usize, prec: u32) -> (Vec<Float>, Vec<Float>) {
    assert!(m >= 1);
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    // machine-resolution stopping threshold with headroom
    let eps = Float::with_val(prec, 1) >> (prec - 4);
    for k in 0..m {
        let guess = {
            let t = Float::with_val(prec, &pi * &Float::with_val(prec, k as f64 + 0.75))
                / Float::with_val(prec, m as f64 + 0.5);
            t.cos()
        };
        let mut x = guess;
        let mut dp = Float::new(prec);
        for _ in 0..200 {
            let (p, d) = legendre_pair(m, &x, prec);
            dp = d;
            let dx = Float::with_val(prec, &p / &dp);
            x -= &dx;
            if dx.abs() < eps {
                break;
            }
        }
        let one_minus = Float::with_val(prec, 1) - Float::with_val(prec, &x * &x);
        let w = Float::with_val(prec, 2) / (one_minus * Float::with_val(prec, &dp * &dp));
        nodes.push(x);
        weights.push(w);
    }
    (nodes, weights)
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre_pair(m: usize, x: &Float, prec: u32) -> (Float, Float) {
    let mut p_prev = Float::with_val(prec, 1);
    let mut p = Float::with_val(prec, x);
    if m == 0 {
        return (p_prev, Float::new(prec));
    }
    for j in 1..m {
        let a = Float::with_val(prec, 2 * j as u32 + 1);
        let b = Float::with_val(prec, j as u32);
        let c = Float::with_val(prec, j as u32 + 1);
        let next = (Float::with_val(prec, &a * x) * &p - b * &p_prev) / c;
        p_prev = p;
        p = next;
    }
    // P_m'(x) = m (x P_m - P_{m-1}) / (x^2 - 1)
    let num = Float::with_val(prec, m as u32)
        * (Float::with_val(prec, x * &p) - &p_prev);
    let den = Float::with_val(prec, x * x) - 1u32;
    (p, num / den)
}

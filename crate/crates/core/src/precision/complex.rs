use std::fmt;

use rug::Float;

/// Arbitrary-precision complex scalar.
///
/// The binary precision is carried by the component floats; operations
/// produce results at the larger precision of their operands. Branch
/// conventions for multivalued functions are principal unless stated.
#[derive(Debug, Clone, PartialEq)]
pub struct MPComplex {
    pub re: Float,
    pub im: Float,
}

impl MPComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::with_val(re.prec(), 0);
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    /// The imaginary unit.
    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    /// `-conj(z)`, the reflection across the imaginary axis.
    pub fn reflect(&self) -> Self {
        Self {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: self.im.clone(),
        }
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec().max(s.prec());
        Self {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn unscale(&self, s: &Float) -> Self {
        let p = self.prec().max(s.prec());
        Self {
            re: Float::with_val(p, &self.re / s),
            im: Float::with_val(p, &self.im / s),
        }
    }

    /// Multiplication by the imaginary unit.
    pub fn mul_i(&self) -> Self {
        Self {
            re: Float::with_val(self.im.prec(), -&self.im),
            im: self.re.clone(),
        }
    }

    /// Multiplication by `-i`.
    pub fn mul_neg_i(&self) -> Self {
        Self {
            re: self.im.clone(),
            im: Float::with_val(self.re.prec(), -&self.re),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, &self.re * &self.re) + Float::with_val(p, &self.im * &self.im)
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.clone().hypot(&self.im))
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.clone().atan2(&self.re))
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        self.conj().unscale(&n)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let re = Float::with_val(p, &self.re * &rhs.re) - Float::with_val(p, &self.im * &rhs.im);
        let im = Float::with_val(p, &self.re * &rhs.im) + Float::with_val(p, &self.im * &rhs.re);
        Self { re, im }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let n = rhs.norm_sqr();
        self.mul(&rhs.conj()).unscale(&n)
    }

    /// Principal square root (cut on the negative real axis; `sqrt(-1) = i`).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self::zero(p);
        }
        let r = self.abs().sqrt();
        let half = Float::with_val(p, &self.arg() / 2u32);
        let (sin, cos) = half.sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &r * &cos),
            im: Float::with_val(p, &r * &sin),
        }
    }

    /// Principal logarithm (cut on the negative real axis).
    pub fn ln(&self) -> Self {
        Self {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &m * &cos),
            im: Float::with_val(p, &m * &sin),
        }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (sin, cos) = self.re.clone().sin_cos(Float::new(p));
        let (sinh, cosh) = self.im.clone().sinh_cosh(Float::new(p));
        Self {
            re: Float::with_val(p, &cos * &cosh),
            im: -Float::with_val(p, &sin * &sinh),
        }
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (sin, cos) = self.re.clone().sin_cos(Float::new(p));
        let (sinh, cosh) = self.im.clone().sinh_cosh(Float::new(p));
        Self {
            re: Float::with_val(p, &sin * &cosh),
            im: Float::with_val(p, &cos * &sinh),
        }
    }

    /// Integer power by binary exponentiation.
    pub fn pow_i(&self, e: i64) -> Self {
        if e < 0 {
            return self.recip().pow_i(-e);
        }
        let mut acc = Self::one(self.prec());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Principal power `z^a` for real `a`, via `exp(a ln z)`.
    pub fn pow_f(&self, a: &Float) -> Self {
        self.ln().scale(a).exp()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait<&MPComplex> for &MPComplex {
            type Output = MPComplex;
            fn $method(self, rhs: &MPComplex) -> MPComplex {
                MPComplex::$inner(self, rhs)
            }
        }
        impl std::ops::$trait<MPComplex> for &MPComplex {
            type Output = MPComplex;
            fn $method(self, rhs: MPComplex) -> MPComplex {
                MPComplex::$inner(self, &rhs)
            }
        }
        impl std::ops::$trait<&MPComplex> for MPComplex {
            type Output = MPComplex;
            fn $method(self, rhs: &MPComplex) -> MPComplex {
                MPComplex::$inner(&self, rhs)
            }
        }
        impl std::ops::$trait<MPComplex> for MPComplex {
            type Output = MPComplex;
            fn $method(self, rhs: MPComplex) -> MPComplex {
                MPComplex::$inner(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);
forward_binop!(Div, div, div);

impl std::ops::Neg for &MPComplex {
    type Output = MPComplex;
    fn neg(self) -> MPComplex {
        MPComplex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

impl std::ops::Neg for MPComplex {
    type Output = MPComplex;
    fn neg(self) -> MPComplex {
        -&self
    }
}

impl fmt::Display for MPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64s();
        if im >= 0.0 {
            write!(f, "{re}+{im}i")
        } else {
            write!(f, "{re}{im}i")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::PrecisionContext;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    fn close(a: &MPComplex, b: &MPComplex, tol: f64) -> bool {
        a.sub(b).abs().to_f64() < tol
    }

    #[test]
    fn sqrt_of_minus_one_is_i() {
        let p = ctx().prec();
        let z = MPComplex::from_f64(p, -1.0, 0.0);
        assert!(close(&z.sqrt(), &MPComplex::i(p), 1e-30));
    }

    #[test]
    fn exp_ln_roundtrip() {
        let p = ctx().prec();
        for (re, im) in [(0.5, 0.3), (-1.2, 2.0), (3.0, -0.7)] {
            let z = MPComplex::from_f64(p, re, im);
            assert!(close(&z.ln().exp(), &z, 1e-30));
        }
    }

    #[test]
    fn cos_sin_pythagoras() {
        let p = ctx().prec();
        let z = MPComplex::from_f64(p, 0.7, -1.1);
        let c = z.cos();
        let s = z.sin();
        let one = c.mul(&c).add(&s.mul(&s));
        assert!(close(&one, &MPComplex::one(p), 1e-30));
    }

    #[test]
    fn pow_i_matches_repeated_mul() {
        let p = ctx().prec();
        let z = MPComplex::from_f64(p, 1.3, -0.4);
        let mut acc = MPComplex::one(p);
        for _ in 0..7 {
            acc = acc.mul(&z);
        }
        assert!(close(&z.pow_i(7), &acc, 1e-28));
        assert!(close(&z.pow_i(-2), &z.mul(&z).recip(), 1e-28));
    }
}

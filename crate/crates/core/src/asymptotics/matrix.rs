//! Minimal 2x2 complex matrices for the Riemann--Hilbert coefficient algebra.

use rug::Float;

use crate::error::{Error, Result};
use crate::io::complex_to_json;
use crate::precision::{MPComplex, PrecisionContext};

/// A 2x2 complex matrix, row-major: `[[m11, m12], [m21, m22]]`.
#[derive(Debug, Clone)]
pub struct Matrix2 {
    pub m11: MPComplex,
    pub m12: MPComplex,
    pub m21: MPComplex,
    pub m22: MPComplex,
}

impl Matrix2 {
    pub fn new(m11: MPComplex, m12: MPComplex, m21: MPComplex, m22: MPComplex) -> Self {
        Matrix2 { m11, m12, m21, m22 }
    }

    pub fn zero(prec: u32) -> Self {
        Matrix2::new(
            MPComplex::zero(prec),
            MPComplex::zero(prec),
            MPComplex::zero(prec),
            MPComplex::zero(prec),
        )
    }

    pub fn identity(prec: u32) -> Self {
        Matrix2::new(
            MPComplex::one(prec),
            MPComplex::zero(prec),
            MPComplex::zero(prec),
            MPComplex::one(prec),
        )
    }

    /// The Pauli matrix `sigma_2 = [[0, -i], [i, 0]]`.
    pub fn sigma2(prec: u32) -> Self {
        Matrix2::new(
            MPComplex::zero(prec),
            -MPComplex::i(prec),
            MPComplex::i(prec),
            MPComplex::zero(prec),
        )
    }

    /// The Pauli matrix `sigma_3 = [[1, 0], [0, -1]]`.
    pub fn sigma3(prec: u32) -> Self {
        Matrix2::new(
            MPComplex::one(prec),
            MPComplex::zero(prec),
            MPComplex::zero(prec),
            -MPComplex::one(prec),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.m11.is_finite() && self.m12.is_finite() && self.m21.is_finite() && self.m22.is_finite()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Matrix2::new(
            self.m11.add(&rhs.m11),
            self.m12.add(&rhs.m12),
            self.m21.add(&rhs.m21),
            self.m22.add(&rhs.m22),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Matrix2::new(
            self.m11.sub(&rhs.m11),
            self.m12.sub(&rhs.m12),
            self.m21.sub(&rhs.m21),
            self.m22.sub(&rhs.m22),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Matrix2::new(
            self.m11.mul(&rhs.m11).add(&self.m12.mul(&rhs.m21)),
            self.m11.mul(&rhs.m12).add(&self.m12.mul(&rhs.m22)),
            self.m21.mul(&rhs.m11).add(&self.m22.mul(&rhs.m21)),
            self.m21.mul(&rhs.m12).add(&self.m22.mul(&rhs.m22)),
        )
    }

    /// Entrywise multiplication by a complex scalar.
    pub fn scale(&self, s: &MPComplex) -> Self {
        Matrix2::new(
            self.m11.mul(s),
            self.m12.mul(s),
            self.m21.mul(s),
            self.m22.mul(s),
        )
    }

    /// Entrywise multiplication by a real scalar.
    pub fn scale_f(&self, s: &Float) -> Self {
        Matrix2::new(
            self.m11.scale(s),
            self.m12.scale(s),
            self.m21.scale(s),
            self.m22.scale(s),
        )
    }

    /// Entrywise division by a real scalar.
    pub fn unscale_f(&self, s: &Float) -> Self {
        Matrix2::new(
            self.m11.unscale(s),
            self.m12.unscale(s),
            self.m21.unscale(s),
            self.m22.unscale(s),
        )
    }

    pub fn det(&self) -> MPComplex {
        self.m11.mul(&self.m22).sub(&self.m12.mul(&self.m21))
    }

    pub fn inv(&self) -> Result<Self> {
        let d = self.det();
        if d.is_zero() || !d.is_finite() {
            return Err(Error::DomainError(format!(
                "matrix inverse requires a finite nonzero determinant, got {d}"
            )));
        }
        Ok(Matrix2::new(
            self.m22.div(&d),
            -self.m12.div(&d),
            -self.m21.div(&d),
            self.m11.div(&d),
        ))
    }

    /// Largest entry magnitude (for error measurements in tests).
    pub fn max_abs(&self) -> Float {
        self.m11
            .abs()
            .max(&self.m12.abs())
            .max(&self.m21.abs())
            .max(&self.m22.abs())
    }

    pub fn to_json(&self, ctx: &PrecisionContext) -> serde_json::Value {
        serde_json::json!([
            [complex_to_json(&self.m11, ctx), complex_to_json(&self.m12, ctx)],
            [complex_to_json(&self.m21, ctx), complex_to_json(&self.m22, ctx)],
        ])
    }
}

impl std::ops::Neg for &Matrix2 {
    type Output = Matrix2;
    fn neg(self) -> Matrix2 {
        Matrix2::new(-&self.m11, -&self.m12, -&self.m21, -&self.m22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> MPComplex {
        MPComplex::from_f64(128, re, im)
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix2::new(c(1.0, 2.0), c(0.5, -1.0), c(3.0, 0.0), c(-2.0, 0.25));
        let inv = m.inv().unwrap();
        let prod = m.mul(&inv);
        let gap = prod.sub(&Matrix2::identity(128)).max_abs();
        assert!(gap.to_f64() < 1e-30);
    }

    #[test]
    fn pauli_relations() {
        // sigma_2^2 = sigma_3^2 = I
        let s2 = Matrix2::sigma2(128);
        let s3 = Matrix2::sigma3(128);
        assert!(s2.mul(&s2).sub(&Matrix2::identity(128)).max_abs().is_zero());
        assert!(s3.mul(&s3).sub(&Matrix2::identity(128)).max_abs().is_zero());
        // anti-commutation: sigma_2 sigma_3 + sigma_3 sigma_2 = 0
        let anti = s2.mul(&s3).add(&s3.mul(&s2));
        assert!(anti.max_abs().is_zero());
    }

    #[test]
    fn singular_inverse_rejected() {
        let m = Matrix2::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0));
        assert!(m.inv().is_err());
    }
}

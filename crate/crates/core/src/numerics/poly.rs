use num_complex::Complex;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `A(t) = Σ_j A_j t^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatPoly<T> {
    coeffs: Vec<Matrix<T>>,
}

impl<T: Real> MatPoly<T> {
    pub fn new(coeffs: Vec<Matrix<T>>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidDocument("matrix polynomial needs a coefficient".into()));
        };
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        if let Some(bad) = coeffs.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: bad.dim(),
            });
        }
        if coeffs.iter().any(|m| !m.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(MatPoly { coeffs })
    }

    pub fn constant(a0: Matrix<T>) -> Self {
        MatPoly { coeffs: vec![a0] }
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Matrix<T>] {
        &self.coeffs
    }

    pub fn eval(&self, t: T) -> Matrix<T> {
        let mut acc = self.coeffs[self.degree()].clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &acc.scale_real(t) + c;
        }
        acc
    }

    /// Coefficients of `s ↦ A(t0 + s)`.
    pub fn shifted(&self, t0: T) -> Self {
        let p = self.degree();
        let mut out = vec![Matrix::zeros(self.dim()); p + 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            // (t0 + s)^j = Σ_i C(j,i) t0^{j−i} s^i
            let mut binom = 1f64;
            for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
                slot.add_scaled(a, T::lit(binom) * t0.powi((j - i) as i32));
                binom = binom * (j - i) as f64 / (i + 1) as f64;
            }
        }
        MatPoly { coeffs: out }
    }

    /// Coefficientwise product `A(t) B(t)`.
    pub fn mul(&self, other: &MatPoly<T>) -> MatPoly<T> {
        let mut out = vec![Matrix::zeros(self.dim()); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        MatPoly { coeffs: out }
    }

    /// `s ↦ ∫_0^s A(u) du`.
    pub fn integral(&self) -> MatPoly<T> {
        let mut out = vec![Matrix::zeros(self.dim())];
        for (j, a) in self.coeffs.iter().enumerate() {
            out.push(a.scale_real(T::one() / T::lit((j + 1) as f64)));
        }
        MatPoly { coeffs: out }
    }

    pub fn adjoint(&self) -> MatPoly<T> {
        MatPoly {
            coeffs: self.coeffs.iter().map(Matrix::adjoint).collect(),
        }
    }

    /// Multiplies every coefficient by `i`.
    pub fn times_i(&self) -> MatPoly<T> {
        let i = Complex::new(T::zero(), T::one());
        MatPoly {
            coeffs: self.coeffs.iter().map(|m| m.scale(i)).collect(),
        }
    }
}

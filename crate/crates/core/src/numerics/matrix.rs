//! Dense complex square matrices with the handful of matrix functions the
//! verification layer needs: exponential, logarithm and square root.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major `d × d` matrix over `Complex<T>`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let data = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Matrix { dim, data }
    }

    /// Real matrix from row-major entries; `entries.len()` must be a square.
    pub fn from_real(entries: &[f64]) -> Self {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        assert_eq!(dim * dim, entries.len(), "not a square number of entries");
        Self::from_fn(dim, |i, j| Complex::new(T::lit(entries[i * dim + j]), T::zero()))
    }

    pub fn from_complex(dim: usize, entries: Vec<Complex<T>>) -> Self {
        assert_eq!(dim * dim, entries.len());
        Matrix { dim, data: entries }
    }

    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        Self::from_fn(entries.len(), |i, j| if i == j { entries[i] } else { Complex::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| Complex::new(z.re * s, z.im * s)).collect(),
        }
    }

    /// `self += s · other`.
    pub fn add_scaled(&mut self, other: &Matrix<T>, s: T) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + Complex::new(b.re * s, b.im * s);
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> T {
        (0..self.dim)
            .map(|j| (0..self.dim).fold(T::zero(), |acc, i| acc + self.get(i, j).norm()))
            .fold(T::zero(), T::max)
    }

    pub fn checked_mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    fn same_dim(&self, other: &Matrix<T>) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// `‖M†M − I‖_F`.
    pub fn unitarity_defect(&self) -> T {
        (&(&self.adjoint() * self) - &Matrix::identity(self.dim)).frobenius_norm()
    }

    /// `‖M† + M‖_F`, zero for skew-Hermitian matrices.
    pub fn skew_hermitian_defect(&self) -> T {
        (&self.adjoint() + self).frobenius_norm()
    }

    /// Solves `self · X = rhs` by LU factorization with partial pivoting.
    pub fn solve(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        self.same_dim(rhs)?;
        let n = self.dim;
        let mut a = self.data.clone();
        let mut b = rhs.data.clone();
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&r, &s| a[r * n + col].norm().partial_cmp(&a[s * n + col].norm()).unwrap())
                .unwrap();
            let pivot = a[pivot_row * n + col];
            if pivot.norm() == T::zero() || !pivot.norm().is_finite() {
                return Err(Error::Singular);
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                    b.swap(col * n + j, pivot_row * n + j);
                }
            }
            for row in col + 1..n {
                let factor = a[row * n + col] / pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[row * n + j] = a[row * n + j] - factor * a[col * n + j];
                }
                for j in 0..n {
                    b[row * n + j] = b[row * n + j] - factor * b[col * n + j];
                }
            }
        }
        for col in (0..n).rev() {
            let pivot = a[col * n + col];
            for j in 0..n {
                let mut acc = b[col * n + j];
                for k in col + 1..n {
                    acc = acc - a[col * n + k] * b[k * n + j];
                }
                b[col * n + j] = acc / pivot;
            }
        }
        Ok(Matrix { dim: n, data: b })
    }

    pub fn inverse(&self) -> Result<Matrix<T>> {
        self.solve(&Matrix::identity(self.dim))
    }

    /// Matrix exponential by scaling and squaring with the `[13/13]` Padé
    /// approximant.
    pub fn exp(&self) -> Result<Matrix<T>> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let norm = self.one_norm().as_f64();
        let squarings = if norm > PADE13_THETA {
            (norm / PADE13_THETA).log2().ceil() as i32
        } else {
            0
        };
        let scaled = self.scale_real(T::lit(0.5f64.powi(squarings)));
        let mut result = pade13(&scaled)?;
        for _ in 0..squarings {
            result = &result * &result;
        }
        Ok(result)
    }

    /// Principal square root by the Denman–Beavers iteration.
    pub fn sqrt(&self) -> Result<Matrix<T>> {
        let mut y = self.clone();
        let mut z = Matrix::identity(self.dim);
        let half = T::lit(0.5);
        for _ in 0..100 {
            let y_inv = y.inverse()?;
            let z_inv = z.inverse()?;
            let y_next = (&y + &z_inv).scale_real(half);
            let z_next = (&z + &y_inv).scale_real(half);
            let change = (&y_next - &y).frobenius_norm();
            y = y_next;
            z = z_next;
            if change <= T::epsilon() * T::lit(4.0) * y.frobenius_norm() {
                break;
            }
        }
        Ok(y)
    }

    /// Principal logarithm by inverse scaling and squaring: square roots until
    /// the matrix is close to the identity, then the series of `log(I + W)`.
    pub fn log(&self) -> Result<Matrix<T>> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let id = Matrix::identity(self.dim);
        let mut m = self.clone();
        let mut roots = 0;
        while (&m - &id).one_norm() > T::lit(0.25) {
            if roots == 60 {
                return Err(Error::Singular);
            }
            m = m.sqrt()?;
            roots += 1;
        }
        let w = &m - &id;
        let mut power = w.clone();
        let mut sum = w.clone();
        for k in 2..200 {
            power = &power * &w;
            let sign = if k % 2 == 0 { -T::one() } else { T::one() };
            let term = power.scale_real(sign / T::lit(k as f64));
            sum += &term;
            if term.frobenius_norm() <= T::epsilon() * T::lit(0.01) * sum.frobenius_norm() {
                break;
            }
        }
        Ok(sum.scale_real(T::lit(2f64.powi(roots))))
    }
}

/// `XY − YX`.
pub fn commutator<T: Real>(x: &Matrix<T>, y: &Matrix<T>) -> Result<Matrix<T>> {
    Ok(&x.checked_mul(y)? - &y.checked_mul(x)?)
}

const PADE13_THETA: f64 = 5.371_920_351_148_152;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

fn pade13<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let b = |k: usize| T::lit(PADE13[k]);
    let id = Matrix::identity(a.dim());
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let combo = |terms: &[(&Matrix<T>, usize)]| {
        let mut acc = Matrix::zeros(a.dim());
        for (m, k) in terms {
            acc.add_scaled(m, b(*k));
        }
        acc
    };
    let u_inner = &(&a6 * &combo(&[(&a6, 13), (&a4, 11), (&a2, 9)])) + &combo(&[(&a6, 7), (&a4, 5), (&a2, 3), (&id, 1)]);
    let u = a * &u_inner;
    let v = &(&a6 * &combo(&[(&a6, 12), (&a4, 10), (&a2, 8)])) + &combo(&[(&a6, 6), (&a4, 4), (&a2, 2), (&id, 0)]);
    (&v - &u).solve(&(&v + &u))
}

impl<T: Real> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl<T: Real> AddAssign<&Matrix<T>> for Matrix<T> {
    fn add_assign(&mut self, rhs: &Matrix<T>) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a = *a + b;
        }
    }
}

/// Sum by pairwise reduction in the given order; the result does not depend
/// on how the inputs were produced, only on their order.
pub fn pairwise_sum<T: Real>(dim: usize, mut items: Vec<Matrix<T>>) -> Matrix<T> {
    if items.is_empty() {
        return Matrix::zeros(dim);
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        items = next;
    }
    items.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn unit(i: usize, j: usize) -> M {
        M::from_fn(2, |r, s| if (r, s) == (i, j) { c(1.0, 0.0) } else { c(0.0, 0.0) })
    }

    #[test]
    fn commutators() {
        let x = M::from_real(&[1.0, 2.0, -3.0, 0.5]);
        assert_eq!(commutator(&x, &x).unwrap(), M::zeros(2));
        assert_eq!(commutator(&M::identity(2), &x).unwrap(), M::zeros(2));
        let d = commutator(&unit(0, 1), &unit(1, 0)).unwrap();
        assert_eq!(d, M::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]));
        assert_eq!(
            commutator(&M::identity(2), &M::identity(3)),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn exponential_of_zero_is_exact_identity() {
        assert_eq!(M::zeros(3).exp().unwrap(), M::identity(3));
    }

    #[test]
    fn exponential_of_diagonal() {
        for (a, b) in [(0.3, -1.2), (4.0, -7.5), (9.0, 0.1)] {
            let e = M::diagonal(&[c(a, 0.0), c(b, 0.0)]).exp().unwrap();
            assert!((e.get(0, 0).re - a.exp()).abs() <= 1e-13 * a.exp());
            assert!((e.get(1, 1).re - b.exp()).abs() <= 1e-13 * b.exp());
            assert!(e.get(0, 1).norm() == 0.0);
        }
    }

    #[test]
    fn exponential_of_skew_hermitian_is_unitary() {
        let h = M::from_complex(3, vec![
            c(0.0, 1.3), c(0.4, -2.0), c(-1.0, 0.7),
            c(-0.4, -2.0), c(0.0, -0.2), c(0.9, 3.1),
            c(1.0, 0.7), c(-0.9, 3.1), c(0.0, 2.2),
        ]);
        assert!(h.skew_hermitian_defect() < 1e-15);
        let u = h.exp().unwrap();
        assert!(u.unitarity_defect() <= 1e-12, "{}", u.unitarity_defect());
    }

    #[test]
    fn exponential_matches_rotation() {
        let theta = 2.5;
        let g = M::from_real(&[0.0, -theta, theta, 0.0]);
        let r = g.exp().unwrap();
        let expected = M::from_real(&[theta.cos(), -theta.sin(), theta.sin(), theta.cos()]);
        assert!((&r - &expected).frobenius_norm() < 1e-14);
    }

    #[test]
    fn non_finite_input() {
        let m = M::from_real(&[f64::NAN, 0.0, 0.0, 1.0]);
        assert_eq!(m.exp(), Err(Error::NonFinite));
    }

    #[test]
    fn logarithm_inverts_exponential() {
        let x = M::from_real(&[0.3, -0.8, 0.1, 0.5, 0.2, -0.4, -0.6, 0.7, -0.1]);
        let back = x.exp().unwrap().log().unwrap();
        assert!((&back - &x).frobenius_norm() < 1e-13);
    }

    #[test]
    fn solve_and_inverse() {
        let a = M::from_real(&[0.0, 2.0, 1.0, 1.0, 1.0, 0.0, 3.0, 0.0, 1.0]);
        let inv = a.inverse().unwrap();
        assert!((&(&a * &inv) - &M::identity(3)).frobenius_norm() < 1e-14);
        assert_eq!(M::zeros(2).inverse(), Err(Error::Singular));
    }

    #[test]
    fn single_precision_exponential() {
        let m = Matrix::<f32>::from_real(&[0.0, 1.0, -1.0, 0.0]);
        let e = m.exp().unwrap();
        assert!((e.get(0, 0).re - 1f32.cos()).abs() < 1e-6);
    }
}

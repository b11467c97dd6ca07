//! Reference solutions of `Y′ = A(t) Y`, `Y(0) = I`, independent of the
//! Magnus machinery.

use super::integrals::TimeFn;
use super::matrix::Matrix;
use super::poly::MatPoly;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest Neumann order accepted.
pub const NEUMANN_ORDER_CAP: usize = 64;
/// Largest step count accepted by the dense stepper.
pub const DENSE_STEP_CAP: usize = 1 << 20;
/// Error estimate the dense reference aims for.
pub const DENSE_TOLERANCE: f64 = 1e-12;

/// `n`-th Neumann term `P_n(s) = ∫_0^s A(u) P_{n−1}(u) du` as a polynomial.
pub fn neumann_terms<T: Real>(a: &MatPoly<T>, order: usize) -> Vec<MatPoly<T>> {
    let mut terms = vec![MatPoly::constant(Matrix::identity(a.dim()))];
    for _ in 0..order {
        let next = a.mul(terms.last().unwrap()).integral();
        terms.push(next);
    }
    terms
}

/// `I + Σ_{k ≤ order} P_k(t)`.
pub fn neumann_reference<T: Real>(a: &MatPoly<T>, t: T, order: usize) -> Result<Matrix<T>> {
    if order > NEUMANN_ORDER_CAP {
        return Err(Error::OutOfRange {
            what: "Neumann order",
            value: order,
            min: 0,
            max: NEUMANN_ORDER_CAP,
        });
    }
    let mut sum = Matrix::zeros(a.dim());
    for term in neumann_terms(a, order) {
        sum += &term.eval(t);
    }
    Ok(sum)
}

/// Dense-stepper result with its Richardson error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseSolution<T> {
    pub value: Matrix<T>,
    pub error_estimate: T,
    pub steps: usize,
    /// Whether the estimate reached [`DENSE_TOLERANCE`].
    pub converged: bool,
}

fn rk4<T: Real>(a: TimeFn<'_, T>, t: T, steps: usize) -> Matrix<T> {
    let dim = a(T::zero()).dim();
    let h = t / T::lit(steps as f64);
    let half = T::lit(0.5);
    let mut y = Matrix::identity(dim);
    for k in 0..steps {
        let s = h * T::lit(k as f64);
        let a0 = a(s);
        let am = a(s + half * h);
        let a1 = a(s + h);
        let k1 = &a0 * &y;
        let mut y2 = y.clone();
        y2.add_scaled(&k1, half * h);
        let k2 = &am * &y2;
        let mut y3 = y.clone();
        y3.add_scaled(&k2, half * h);
        let k3 = &am * &y3;
        let mut y4 = y.clone();
        y4.add_scaled(&k3, h);
        let k4 = &a1 * &y4;
        let sixth = h / T::lit(6.0);
        y.add_scaled(&k1, sixth);
        y.add_scaled(&k2, sixth + sixth);
        y.add_scaled(&k3, sixth + sixth);
        y.add_scaled(&k4, sixth);
    }
    y
}

/// Classical fourth-order Runge–Kutta with `steps` and `2·steps` steps,
/// combined by Richardson extrapolation.
pub fn dense_reference<T: Real>(a: TimeFn<'_, T>, t: T, steps: usize) -> Result<DenseSolution<T>> {
    if steps == 0 || steps > DENSE_STEP_CAP {
        return Err(Error::OutOfRange {
            what: "step count",
            value: steps,
            min: 1,
            max: DENSE_STEP_CAP,
        });
    }
    let coarse = rk4(a, t, steps);
    let fine = rk4(a, t, 2 * steps);
    let diff = &fine - &coarse;
    let mut value = fine;
    value.add_scaled(&diff, T::one() / T::lit(15.0));
    let error_estimate = diff.frobenius_norm() / T::lit(15.0);
    Ok(DenseSolution {
        value,
        error_estimate,
        steps,
        converged: error_estimate.as_f64() <= DENSE_TOLERANCE,
    })
}

/// Doubles the step count from a size-based start until the estimate reaches
/// [`DENSE_TOLERANCE`] or the cap; a non-converged result is flagged, not an
/// error.
pub fn dense_reference_auto<T: Real>(a: TimeFn<'_, T>, t: T) -> Result<DenseSolution<T>> {
    let mut steps = ((t.as_f64().abs() / 1e-3).ceil() as usize).max(16);
    loop {
        let sol = dense_reference(a, t, steps)?;
        if sol.converged || 4 * steps > DENSE_STEP_CAP {
            return Ok(sol);
        }
        steps *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear() -> MatPoly<f64> {
        MatPoly::new(vec![
            Matrix::from_real(&[0.3, -1.0, 0.2, 0.7, 0.2, 0.5, -0.4, 0.1, -0.6]),
            Matrix::from_real(&[-0.5, 0.4, 0.8, 0.9, -0.8, 0.3, 0.2, -0.7, 0.6]),
        ])
        .unwrap()
    }

    #[test]
    fn constant_matches_exponential() {
        let a0 = Matrix::from_real(&[0.0, 1.5, -0.5, 0.3]);
        let a = MatPoly::constant(a0.clone());
        let t = 0.5;
        let expected = a0.scale_real(t).exp().unwrap();
        let n = neumann_reference(&a, t, 30).unwrap();
        assert!((&n - &expected).frobenius_norm() < 1e-12);
        let f = |s: f64| a.eval(s);
        let d = dense_reference_auto(&f, t).unwrap();
        assert!(d.converged);
        assert!((&d.value - &expected).frobenius_norm() < 1e-12);
    }

    #[test]
    fn time_zero_is_identity() {
        let a = linear();
        assert_eq!(neumann_reference(&a, 0.0, 8).unwrap(), Matrix::identity(3));
        let f = |s: f64| a.eval(s);
        assert_eq!(dense_reference(&f, 0.0, 10).unwrap().value, Matrix::identity(3));
    }

    #[test]
    fn references_agree() {
        let a = linear();
        let f = |s: f64| a.eval(s);
        let n = neumann_reference(&a, 0.2, 12).unwrap();
        let d = dense_reference_auto(&f, 0.2).unwrap();
        assert!(d.converged);
        assert!((&n - &d.value).frobenius_norm() < 1e-12);
    }
}

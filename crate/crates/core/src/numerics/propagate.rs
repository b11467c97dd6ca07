//! Builtin test problems and propagation with truncated Magnus series.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::integrals::TimeFn;
use super::matrix::{pairwise_sum, Matrix};
use super::poly::MatPoly;
use super::reference::dense_reference_auto;
use super::series::{evaluate_series, truncated_magnus_step, Evaluator, Operator, Series, WordKernel};
use crate::error::{Error, Result};
use crate::magnus::{omega_word, OrderCap};
use crate::perm::Permutation;
use crate::combination::Combination;
use crate::scalar::{Rational, Real};

/// Seed of the entries of the `linear3` builtin.
pub const LINEAR3_SEED: u64 = 20_020_212;

/// Names accepted by [`Problem::builtin`].
pub const BUILTIN_PROBLEMS: [&str; 4] = ["linear3", "skew2", "constant", "rabi2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureTag {
    None,
    SkewHermitian,
}

#[derive(Clone, Debug)]
pub enum ProblemOperator<T> {
    Polynomial(MatPoly<T>),
    /// Non-polynomial builtin, identified by name.
    Function { tag: &'static str, f: fn(T) -> Matrix<T> },
}

#[derive(Clone, Debug)]
pub struct Problem<T> {
    pub name: String,
    pub operator: ProblemOperator<T>,
    pub horizon: T,
    pub structure: StructureTag,
}

impl<T: Real> Problem<T> {
    /// Validates the structure tag on eleven equally spaced times in
    /// `[0, horizon]`.
    pub fn new(name: &str, operator: ProblemOperator<T>, horizon: T, structure: StructureTag) -> Result<Self> {
        let p = Problem {
            name: name.to_string(),
            operator,
            horizon,
            structure,
        };
        if structure == StructureTag::SkewHermitian {
            for k in 0..=10 {
                let t = horizon * T::lit(k as f64 / 10.0);
                let a = p.eval(t);
                let scale = a.frobenius_norm().max(T::one());
                if a.skew_hermitian_defect() > T::lit(1e-14) * scale {
                    return Err(Error::NotSkewHermitian {
                        name: name.to_string(),
                        t: t.as_f64(),
                    });
                }
            }
        }
        Ok(p)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let c = |re: f64, im: f64| Complex::new(T::lit(re), T::lit(im));
        match name {
            "linear3" => {
                let mut rng = ChaCha8Rng::seed_from_u64(LINEAR3_SEED);
                let mut entries = || -> Vec<f64> { (0..9).map(|_| rng.random_range(-1.0..=1.0)).collect() };
                let a0 = Matrix::from_real(&entries());
                let a1 = Matrix::from_real(&entries());
                Problem::new(
                    name,
                    ProblemOperator::Polynomial(MatPoly::new(vec![a0, a1])?),
                    T::lit(0.5),
                    StructureTag::None,
                )
            }
            "skew2" => {
                // A(t) = −i H(t) with H(t) = H_0 + t H_1 + t² H_2 Hermitian.
                let h0 = Matrix::from_complex(2, vec![c(1.0, 0.0), c(0.5, -0.3), c(0.5, 0.3), c(-1.0, 0.0)]);
                let h1 = Matrix::from_complex(2, vec![c(0.5, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-0.5, 0.0)]);
                let h2 = Matrix::from_complex(2, vec![c(0.0, 0.0), c(0.0, 0.8), c(0.0, -0.8), c(0.3, 0.0)]);
                let minus_i = c(0.0, -1.0);
                let poly = MatPoly::new(vec![h0.scale(minus_i), h1.scale(minus_i), h2.scale(minus_i)])?;
                Problem::new(name, ProblemOperator::Polynomial(poly), T::lit(0.5), StructureTag::SkewHermitian)
            }
            "constant" => {
                let a0 = Matrix::from_real(&[0.0, 1.0, 0.0, -1.0, 0.2, 0.5, 0.3, -0.5, -0.1]);
                Problem::new(
                    name,
                    ProblemOperator::Polynomial(MatPoly::constant(a0)),
                    T::one(),
                    StructureTag::None,
                )
            }
            "rabi2" => Problem::new(
                name,
                ProblemOperator::Function { tag: "rabi2", f: rabi2 },
                T::one(),
                StructureTag::SkewHermitian,
            ),
            other => Err(Error::UnknownProblem(other.to_string())),
        }
    }

    pub fn eval(&self, t: T) -> Matrix<T> {
        match &self.operator {
            ProblemOperator::Polynomial(p) => p.eval(t),
            ProblemOperator::Function { f, .. } => f(t),
        }
    }

    pub fn dim(&self) -> usize {
        self.eval(T::zero()).dim()
    }

    pub fn polynomial(&self) -> Option<&MatPoly<T>> {
        match &self.operator {
            ProblemOperator::Polynomial(p) => Some(p),
            ProblemOperator::Function { .. } => None,
        }
    }

    pub fn operator(&self) -> Operator<'_, T> {
        match &self.operator {
            ProblemOperator::Polynomial(p) => Operator::Polynomial(p),
            ProblemOperator::Function { f, .. } => Operator::Function(f),
        }
    }
}

/// `A(t) = −i (σ_z + cos(4t) σ_x)`.
fn rabi2<T: Real>(t: T) -> Matrix<T> {
    let drive = (T::lit(4.0) * t).cos();
    let z = T::zero();
    Matrix::from_complex(2, vec![
        Complex::new(z, -T::one()),
        Complex::new(z, -drive),
        Complex::new(z, -drive),
        Complex::new(z, T::one()),
    ])
}

/// Result of [`magnus_propagate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Propagation<T> {
    pub value: Matrix<T>,
    pub steps: usize,
    /// Root-sum-square of the Monte Carlo standard errors of all `Ω_k`.
    pub std_error: Option<T>,
}

/// `Y(t) ≈ Π_steps exp(Σ_{k ≤ order} Ω_k)` with `⌈t/h⌉` equal substeps.
///
/// With the exact evaluator `A` is re-expanded about each substep origin, so
/// the same compiled kernels serve every step. The Monte Carlo evaluator uses
/// seed `seed ^ (step << 8 | k)` for `Ω_k` on a given step.
pub fn magnus_propagate<T: Real>(
    problem: &Problem<T>,
    t: T,
    h: T,
    order: usize,
    cap: OrderCap,
    evaluator: Evaluator,
) -> Result<Propagation<T>> {
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidStep(h.as_f64()));
    }
    if order == 0 {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    let omegas: Vec<Combination<Permutation, Rational>> =
        (1..=order).map(|k| omega_word(k, cap)).collect::<Result<_>>()?;
    let dim = problem.dim();
    let steps = if t == T::zero() {
        0
    } else {
        ((t / h).as_f64() * (1.0 - 1e-12)).ceil().max(1.0) as usize
    };
    let dt = if steps == 0 { T::zero() } else { t / T::lit(steps as f64) };
    let mut y = Matrix::identity(dim);
    match evaluator {
        Evaluator::Exact => {
            let Some(poly) = problem.polynomial() else {
                return Err(Error::Evaluator(format!(
                    "problem '{}' has a non-polynomial A; the exact evaluator needs a matrix polynomial",
                    problem.name
                )));
            };
            let kernels: Vec<WordKernel> = omegas
                .iter()
                .map(|w| WordKernel::compile(w, poly.degree()))
                .collect::<Result<_>>()?;
            for i in 0..steps {
                let local = poly.shifted(dt * T::lit(i as f64));
                y = &truncated_magnus_step(&kernels, &local, dt)? * &y;
            }
            Ok(Propagation {
                value: y,
                steps,
                std_error: None,
            })
        }
        Evaluator::MonteCarlo { samples, seed } => {
            let mut variance = T::zero();
            for i in 0..steps {
                let t0 = dt * T::lit(i as f64);
                let local = |s: T| problem.eval(t0 + s);
                let f: TimeFn<'_, T> = &local;
                let mut parts = Vec::with_capacity(order);
                for (k, w) in omegas.iter().enumerate() {
                    let step_seed = seed ^ (((i as u64) << 8) | (k as u64 + 1));
                    let v = evaluate_series(
                        Series::Words(w),
                        Operator::Function(f),
                        dt,
                        Evaluator::MonteCarlo { samples, seed: step_seed },
                    )?;
                    let se = v.std_error.unwrap_or(T::zero());
                    variance = variance + se * se;
                    parts.push(v.value);
                }
                y = &pairwise_sum(dim, parts).exp()? * &y;
            }
            Ok(Propagation {
                value: y,
                steps,
                std_error: Some(variance.sqrt()),
            })
        }
    }
}

/// Single-step errors of the truncated series against the dense reference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderFit {
    pub order: usize,
    pub times: Vec<f64>,
    pub errors: Vec<f64>,
    /// Least-squares slope of `log error` against `log t` over all points.
    pub slope: f64,
    /// Number of points whose error exceeds [`NOISE_FLOOR`].
    pub resolved_points: usize,
    /// Slope over the points above the floor; `None` with fewer than two.
    pub resolved_slope: Option<f64>,
}

/// Errors below this are treated as roundoff when fitting slopes.
pub const NOISE_FLOOR: f64 = 1e-13;

/// Errors of `exp(Σ_{k ≤ order} Ω_k(t))` for `t = t_max · 2^{−k}`,
/// `k = 0..levels`, and the fitted log-log slope.
pub fn order_fit<T: Real>(problem: &Problem<T>, order: usize, t_max: T, levels: usize, cap: OrderCap) -> Result<OrderFit> {
    let Some(poly) = problem.polynomial() else {
        return Err(Error::Evaluator("order fitting needs a polynomial problem".into()));
    };
    let kernels: Vec<WordKernel> = (1..=order)
        .map(|k| WordKernel::compile(&omega_word::<Rational>(k, cap)?, poly.degree()))
        .collect::<Result<_>>()?;
    let f = |s: T| poly.eval(s);
    let mut times = Vec::with_capacity(levels);
    let mut errors = Vec::with_capacity(levels);
    for k in 0..levels {
        let t = t_max * T::lit(0.5f64.powi(k as i32));
        let approx = truncated_magnus_step(&kernels, poly, t)?;
        let reference = dense_reference_auto(&f, t)?;
        times.push(t.as_f64());
        errors.push((&approx - &reference.value).frobenius_norm().as_f64());
    }
    let slope = loglog_slope(&times, &errors);
    let (rt, re): (Vec<f64>, Vec<f64>) = times
        .iter()
        .zip(&errors)
        .filter(|(_, e)| **e > NOISE_FLOOR)
        .map(|(t, e)| (*t, *e))
        .unzip();
    let resolved_slope = (rt.len() >= 2).then(|| loglog_slope(&rt, &re));
    Ok(OrderFit {
        order,
        times,
        errors,
        slope,
        resolved_points: rt.len(),
        resolved_slope,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

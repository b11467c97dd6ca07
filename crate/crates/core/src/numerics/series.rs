//! Evaluation of whole series of iterated integrals and truncated Magnus
//! exponentials.

use std::collections::BTreeMap;

use super::integrals::{
    degree_assignments, evaluate_assignments, simplex_mc, simplex_weight, variable_powers, word_product, TimeFn,
};
use super::matrix::{commutator, pairwise_sum, Matrix};
use super::poly::MatPoly;
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::magnus::rnested::{BracketSum, RNestedCombination};
use crate::perm::Permutation;
use crate::scalar::{Field, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluator {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

impl Evaluator {
    pub fn name(&self) -> &'static str {
        match self {
            Evaluator::Exact => "exact",
            Evaluator::MonteCarlo { .. } => "mc",
        }
    }
}

/// The coefficient function `A(t)`.
#[derive(Clone, Copy)]
pub enum Operator<'a, T> {
    Polynomial(&'a MatPoly<T>),
    Function(TimeFn<'a, T>),
}

impl<T: Real> Operator<'_, T> {
    pub fn eval(&self, t: T) -> Matrix<T> {
        match self {
            Operator::Polynomial(p) => p.eval(t),
            Operator::Function(f) => f(t),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Operator::Polynomial(p) => p.dim(),
            Operator::Function(f) => f(T::zero()).dim(),
        }
    }
}

/// A homogeneous series in one of the supported bases.
#[derive(Clone, Copy)]
pub enum Series<'a, C> {
    Words(&'a Combination<Permutation, C>),
    RNested(&'a RNestedCombination<C>),
    Brackets(&'a BracketSum<C>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesValue<T> {
    pub value: Matrix<T>,
    /// Standard error for Monte Carlo evaluation.
    pub std_error: Option<T>,
}

/// A word-basis series precompiled for a polynomial of fixed degree: one
/// coefficient per degree assignment `(j_1, …, j_n)`, accumulated exactly and
/// rounded once.
#[derive(Clone, Debug)]
pub struct WordKernel {
    grade: usize,
    terms: Vec<(Vec<usize>, f64)>,
}

impl WordKernel {
    pub fn compile<C: Field>(x: &Combination<Permutation, C>, degree: usize) -> Result<Self> {
        let grade = x.homogeneous_grade()?.unwrap_or(0);
        let mut acc: BTreeMap<Vec<usize>, C> = BTreeMap::new();
        if grade > 0 {
            let assignments = degree_assignments(grade, degree);
            for (sigma, c) in x.iter() {
                for js in &assignments {
                    let w = C::from_rational(&simplex_weight(&variable_powers(sigma, js)));
                    let slot = acc.entry(js.clone()).or_insert_with(C::zero);
                    *slot = slot.clone() + c.clone() * w;
                }
            }
        }
        Ok(WordKernel {
            grade,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(js, c)| (js, c.to_f64()))
                .collect(),
        })
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    /// `Σ w_j t^{n+Σj} A_{j_1} ⋯ A_{j_n}`.
    pub fn evaluate<T: Real>(&self, a: &MatPoly<T>, t: T) -> Matrix<T> {
        evaluate_assignments(&self.terms, self.grade, a, t)
    }
}

fn nested_commutator<T: Real>(indices: &[u32], mats: &[Matrix<T>]) -> Matrix<T> {
    let mut acc = mats[*indices.last().unwrap() as usize - 1].clone();
    for &i in indices.iter().rev().skip(1) {
        acc = commutator(&mats[i as usize - 1], &acc).expect("equal dimensions");
    }
    acc
}

/// `Σ coeff · term` at time `t`.
///
/// The exact evaluator expands brackets into words and integrates every
/// monomial; it needs a polynomial operator. The Monte Carlo evaluator
/// samples the integrand directly, with nested commutators of the sampled
/// matrices for bracket bases.
pub fn evaluate_series<T: Real, C: Field>(
    x: Series<'_, C>,
    a: Operator<'_, T>,
    t: T,
    evaluator: Evaluator,
) -> Result<SeriesValue<T>> {
    match evaluator {
        Evaluator::Exact => {
            let Operator::Polynomial(p) = a else {
                return Err(Error::Evaluator(
                    "the exact evaluator requires a matrix polynomial".into(),
                ));
            };
            let words = match x {
                Series::Words(w) => w.clone(),
                Series::RNested(r) => r.expand(),
                Series::Brackets(b) => b.expand(),
            };
            let kernel = WordKernel::compile(&words, p.degree())?;
            let value = if kernel.grade() == 0 {
                Matrix::identity(p.dim()).scale_real(T::lit(words.coeff(&Permutation::empty()).to_f64()))
            } else {
                kernel.evaluate(p, t)
            };
            Ok(SeriesValue {
                value,
                std_error: None,
            })
        }
        Evaluator::MonteCarlo { samples, seed } => {
            let dim = a.dim();
            let f = move |s: T| a.eval(s);
            let estimate = match x {
                Series::Words(w) => {
                    let grade = w.homogeneous_grade()?.unwrap_or(0);
                    if grade == 0 {
                        return mc_grade_zero(dim, w.coeff(&Permutation::empty()).to_f64());
                    }
                    let terms: Vec<(Permutation, T)> =
                        w.iter().map(|(p, c)| (p.clone(), T::lit(c.to_f64()))).collect();
                    simplex_mc(grade, &f, t, samples, seed, &|mats| {
                        let mut acc = Matrix::zeros(dim);
                        for (sigma, c) in &terms {
                            acc.add_scaled(&word_product(sigma, mats), *c);
                        }
                        acc
                    })
                }
                Series::RNested(r) => {
                    let sum = BracketSum::from(r);
                    bracket_mc(&sum, &f, dim, t, samples, seed)
                }
                Series::Brackets(b) => bracket_mc(b, &f, dim, t, samples, seed),
            };
            Ok(SeriesValue {
                value: estimate.value,
                std_error: Some(estimate.std_error),
            })
        }
    }
}

fn mc_grade_zero<T: Real>(dim: usize, c: f64) -> Result<SeriesValue<T>> {
    Ok(SeriesValue {
        value: Matrix::identity(dim).scale_real(T::lit(c)),
        std_error: Some(T::zero()),
    })
}

fn bracket_mc<T: Real, C: Field>(
    b: &BracketSum<C>,
    f: TimeFn<'_, T>,
    dim: usize,
    t: T,
    samples: u64,
    seed: u64,
) -> super::integrals::McEstimate<T> {
    let terms: Vec<(Vec<u32>, T)> = b
        .terms
        .iter()
        .map(|term| (term.indices.clone(), T::lit(term.coeff.to_f64())))
        .collect();
    simplex_mc(b.grade.max(1), f, t, samples, seed, &|mats| {
        let mut acc = Matrix::zeros(dim);
        for (indices, c) in &terms {
            acc.add_scaled(&nested_commutator(indices, mats), *c);
        }
        acc
    })
}

/// `exp(Σ_k Ω_k(h))` for a polynomial operator, from precompiled kernels.
pub fn truncated_magnus_step<T: Real>(
    kernels: &[WordKernel],
    a: &MatPoly<T>,
    h: T,
) -> Result<Matrix<T>> {
    let parts: Vec<Matrix<T>> = kernels.iter().map(|k| k.evaluate(a, h)).collect();
    pairwise_sum(a.dim(), parts).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::star;
    use crate::magnus::rnested::{omega_rnested, Anchor};
    use crate::magnus::{omega_word, OrderCap};
    use crate::numerics::integrals::iterated_integral_exact;
    use crate::perm::perm;
    use crate::scalar::Rational;

    fn linear() -> MatPoly<f64> {
        MatPoly::new(vec![
            Matrix::from_real(&[0.3, -1.0, 0.2, 0.7, 0.2, 0.5, -0.4, 0.1, -0.6]),
            Matrix::from_real(&[-0.5, 0.4, 0.8, 0.9, -0.8, 0.3, 0.2, -0.7, 0.6]),
        ])
        .unwrap()
    }

    #[test]
    fn first_order_term() {
        let a = linear();
        let t = 0.8;
        let w1 = omega_word::<Rational>(1, OrderCap::default()).unwrap();
        let got = evaluate_series(Series::Words(&w1), Operator::Polynomial(&a), t, Evaluator::Exact).unwrap();
        let expected = &a.coeffs()[0].scale_real(t) + &a.coeffs()[1].scale_real(t * t / 2.0);
        assert!((&got.value - &expected).frobenius_norm() < 1e-15);
    }

    #[test]
    fn word_and_rnested_forms_agree() {
        let a = linear();
        for n in 2..=4 {
            let w = omega_word::<Rational>(n, OrderCap::default()).unwrap();
            let x = evaluate_series(Series::Words(&w), Operator::Polynomial(&a), 0.6, Evaluator::Exact).unwrap();
            for anchor in [Anchor::First, Anchor::Last] {
                let r = omega_rnested::<Rational>(n, anchor, OrderCap::default()).unwrap();
                let y = evaluate_series(Series::RNested(&r), Operator::Polynomial(&a), 0.6, Evaluator::Exact).unwrap();
                assert!((&x.value - &y.value).frobenius_norm() < 1e-12);
            }
        }
    }

    #[test]
    fn product_of_integrals() {
        let a = linear();
        let t = 0.9;
        let sigma = perm(&[2, 1]);
        let tau = perm(&[1]);
        let lhs = &iterated_integral_exact(&sigma, &a, t) * &iterated_integral_exact(&tau, &a, t);
        let prod: Combination<Permutation, Rational> = star(&sigma, &tau);
        let rhs = evaluate_series(Series::Words(&prod), Operator::Polynomial(&a), t, Evaluator::Exact).unwrap();
        assert!((&lhs - &rhs.value).frobenius_norm() < 1e-12);
    }

    #[test]
    fn exact_needs_polynomial() {
        let f = |_: f64| Matrix::identity(2);
        let w = omega_word::<Rational>(2, OrderCap::default()).unwrap();
        let r = evaluate_series(Series::Words(&w), Operator::Function(&f), 0.1, Evaluator::Exact);
        assert!(matches!(r, Err(Error::Evaluator(_))));
    }

    #[test]
    fn monte_carlo_brackets_match_exact() {
        let a = linear();
        let f = |s: f64| a.eval(s);
        let r = omega_rnested::<Rational>(3, Anchor::Last, OrderCap::default()).unwrap();
        let exact = evaluate_series(Series::RNested(&r), Operator::Polynomial(&a), 1.0, Evaluator::Exact).unwrap();
        let mc = evaluate_series(
            Series::RNested(&r),
            Operator::Function(&f),
            1.0,
            Evaluator::MonteCarlo { samples: 200_000, seed: 11 },
        )
        .unwrap();
        let err = (&exact.value - &mc.value).frobenius_norm();
        assert!(err <= 4.0 * mc.std_error.unwrap(), "err {err} se {:?}", mc.std_error);
    }
}

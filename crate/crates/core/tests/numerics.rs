use magnus_core::magnus::rnested::{omega_rnested, BracketSum, RNestedTerm};
use magnus_core::magnus::{omega_word, OrderCap};
use magnus_core::numerics::propagate::{loglog_slope, order_fit};
use magnus_core::numerics::series::{truncated_magnus_step, WordKernel};
use magnus_core::numerics::{
    dense_reference_auto, evaluate_series, magnus_propagate, neumann_reference, Evaluator, MatPoly,
    Operator, Problem, Series, BUILTIN_PROBLEMS,
};
use magnus_core::{Anchor, Rational};

const CAP: OrderCap = OrderCap(9);

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn polynomial_builtins() -> Vec<Problem<f64>> {
    BUILTIN_PROBLEMS
        .iter()
        .map(|n| Problem::builtin(n).unwrap())
        .filter(|p| p.polynomial().is_some())
        .collect()
}

#[test]
fn omega3_two_term_form() {
    // (1/6)([A(t_1),[A(t_2),A(t_3)]] + [A(t_3),[A(t_2),A(t_1)]])
    let two_term = BracketSum {
        grade: 3,
        terms: vec![
            RNestedTerm { indices: vec![1, 2, 3], coeff: r(1, 6) },
            RNestedTerm { indices: vec![3, 2, 1], coeff: r(1, 6) },
        ],
    };
    let basis = omega_rnested::<Rational>(3, Anchor::Last, CAP).unwrap();
    for p in polynomial_builtins() {
        let a = Operator::Polynomial(p.polynomial().unwrap());
        let x = evaluate_series(Series::RNested(&basis), a, p.horizon, Evaluator::Exact).unwrap();
        let y = evaluate_series(Series::Brackets(&two_term), a, p.horizon, Evaluator::Exact).unwrap();
        assert!((&x.value - &y.value).frobenius_norm() <= 1e-12, "{}", p.name);
    }
}

#[test]
fn word_and_bracket_forms_of_omega2() {
    let w = omega_word::<Rational>(2, CAP).unwrap();
    let b = omega_rnested::<Rational>(2, Anchor::First, CAP).unwrap();
    for p in polynomial_builtins() {
        let a = Operator::Polynomial(p.polynomial().unwrap());
        let x = evaluate_series(Series::Words(&w), a, 0.4, Evaluator::Exact).unwrap();
        let y = evaluate_series(Series::RNested(&b), a, 0.4, Evaluator::Exact).unwrap();
        assert!((&x.value - &y.value).frobenius_norm() <= 1e-12, "{}", p.name);
    }
}

#[test]
fn constant_problem_propagates_exactly() {
    let p = Problem::<f64>::builtin("constant").unwrap();
    let expected = p.eval(0.0).scale_real(p.horizon).exp().unwrap();
    for n in 1..=5 {
        let y = magnus_propagate(&p, p.horizon, 0.3, n, CAP, Evaluator::Exact).unwrap();
        assert!((&y.value - &expected).frobenius_norm() <= 1e-12);
    }
}

#[test]
fn propagation_converges_to_reference() {
    let p = Problem::<f64>::builtin("linear3").unwrap();
    let f = |s: f64| p.eval(s);
    let reference = dense_reference_auto(&f, 0.5).unwrap();
    assert!(reference.converged);
    let coarse = magnus_propagate(&p, 0.5, 0.1, 4, CAP, Evaluator::Exact).unwrap();
    let fine = magnus_propagate(&p, 0.5, 0.05, 4, CAP, Evaluator::Exact).unwrap();
    let e1 = (&coarse.value - &reference.value).frobenius_norm();
    let e2 = (&fine.value - &reference.value).frobenius_norm();
    // Global error of an order-4 method.
    assert!(e2 < e1 / 10.0, "{e1:e} {e2:e}");
}

#[test]
fn monte_carlo_propagation_is_close() {
    let p = Problem::<f64>::builtin("linear3").unwrap();
    let exact = magnus_propagate(&p, 0.2, 0.1, 3, CAP, Evaluator::Exact).unwrap();
    let mc = magnus_propagate(
        &p,
        0.2,
        0.1,
        3,
        CAP,
        Evaluator::MonteCarlo { samples: 100_000, seed: 9 },
    )
    .unwrap();
    let err = (&exact.value - &mc.value).frobenius_norm();
    assert!(err <= 4.0 * mc.std_error.unwrap() + 1e-12, "{err:e} {:?}", mc.std_error);
}

/// Truncation error under `A → εA` at fixed `t`: the omitted terms start at
/// `Ω_{N+1} = O(ε^{N+1})`.
#[test]
fn truncation_error_scales_with_order() {
    let p = Problem::<f64>::builtin("linear3").unwrap();
    let base = p.polynomial().unwrap();
    let t = 0.5;
    for n in 1..=5 {
        let kernels: Vec<WordKernel> = (1..=n)
            .map(|k| WordKernel::compile(&omega_word::<Rational>(k, CAP).unwrap(), base.degree()).unwrap())
            .collect();
        let mut eps = Vec::new();
        let mut errors = Vec::new();
        for k in 0..4 {
            let e = 0.5 * 0.5f64.powi(k);
            let a = MatPoly::new(base.coeffs().iter().map(|m| m.scale_real(e)).collect()).unwrap();
            let approx = truncated_magnus_step(&kernels, &a, t).unwrap();
            let reference = neumann_reference(&a, t, 40).unwrap();
            eps.push(e);
            errors.push((&approx - &reference).frobenius_norm());
        }
        let slope = loglog_slope(&eps, &errors);
        let target = (n + 1) as f64;
        assert!((slope - target).abs() <= 0.25, "N={n}: slope {slope} errors {errors:?}");
    }
}

/// In `t` the local error is at least `O(t^{N+1})`; for linear `A` it is
/// higher for odd `N`, since the even terms start one order late. Points
/// below the roundoff floor are excluded from the fit.
#[test]
fn local_error_order_in_time() {
    let p = Problem::<f64>::builtin("linear3").unwrap();
    for n in 1..=5 {
        let fit = order_fit(&p, n, 0.4, 5, CAP).unwrap();
        let (times, errors): (Vec<f64>, Vec<f64>) = fit
            .times
            .iter()
            .zip(&fit.errors)
            .filter(|(_, e)| **e > 1e-12)
            .map(|(t, e)| (*t, *e))
            .unzip();
        assert!(times.len() >= 3, "N={n}: too few points above roundoff");
        let slope = loglog_slope(&times, &errors);
        assert!(slope >= (n + 1) as f64 - 0.25, "N={n}: slope {slope}");
    }
}

#[test]
fn neumann_truncation_loses_unitarity() {
    let p = Problem::<f64>::builtin("skew2").unwrap();
    let a = p.polynomial().unwrap();
    for n in 1..=5 {
        let neumann = neumann_reference(a, 0.5, n).unwrap();
        let magnus = magnus_propagate(&p, 0.5, 0.5, n, CAP, Evaluator::Exact).unwrap();
        assert!(neumann.unitarity_defect() >= 1e-6);
        assert!(magnus.value.unitarity_defect() <= 1e-12);
    }
}

#[test]
fn single_precision_pipeline() {
    let p = Problem::<f32>::builtin("skew2").unwrap();
    let y = magnus_propagate(&p, 0.5f32, 0.1, 3, CAP, Evaluator::Exact).unwrap();
    assert!(y.value.unitarity_defect() < 1e-5);
    let reference = Problem::<f64>::builtin("skew2").unwrap();
    let z = magnus_propagate(&reference, 0.5, 0.1, 3, CAP, Evaluator::Exact).unwrap();
    let diff = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| {
            let a = y.value.get(i, j);
            let b = z.value.get(i, j);
            ((a.re as f64 - b.re).powi(2) + (a.im as f64 - b.im).powi(2)).sqrt()
        })
        .fold(0.0, f64::max);
    assert!(diff < 1e-5);
}

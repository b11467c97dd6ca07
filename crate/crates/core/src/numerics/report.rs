//! End-to-end verification run on a builtin problem.

use serde::{Deserialize, Serialize};

use super::propagate::{magnus_propagate, order_fit, OrderFit, Problem, StructureTag, NOISE_FLOOR};
use super::reference::{dense_reference_auto, neumann_reference};
use super::series::Evaluator;
use crate::error::Result;
use crate::magnus::OrderCap;

/// Tolerance for identities that hold up to roundoff.
pub const ROUNDOFF_TOLERANCE: f64 = 1e-12;
/// Allowed deviation of a fitted convergence slope.
pub const SLOPE_TOLERANCE: f64 = 0.25;
/// Number of halvings of `t` in an order fit.
pub const FIT_LEVELS: usize = 5;
/// Default substep length.
pub const DEFAULT_STEP: f64 = 0.1;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub problem: String,
    pub order: usize,
    /// Final time; the problem horizon when absent.
    pub t: Option<f64>,
    /// Substep length; `min(t, 0.1)` when absent.
    pub step: Option<f64>,
    pub evaluator: Evaluator,
    pub cap: OrderCap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceInfo {
    pub method: String,
    pub steps: usize,
    pub error_estimate: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub problem: String,
    pub structure: StructureTag,
    pub order: usize,
    pub t: f64,
    pub step: f64,
    pub steps: usize,
    pub evaluator: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// `‖Y − Y_ref‖_F`.
    pub error: f64,
    /// `‖Y†Y − I‖_F`.
    pub unitarity_defect: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neumann_unitarity_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    pub reference: ReferenceInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<OrderFit>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn check(name: &str, value: f64, bound: f64, passed: bool) -> Check {
    Check {
        name: name.to_string(),
        value,
        bound,
        passed,
    }
}

/// Propagates a builtin problem, compares with the dense reference and
/// collects the checks that apply:
///
/// * the reference reached its error target;
/// * constant `A`: error within roundoff, since the series ends at `Ω_1`;
/// * skew-Hermitian `A`: unitarity defect within roundoff;
/// * exact evaluator on non-constant polynomial `A`: single-step errors at
///   `t · 2^{−k}` decay at least like `t^{N+1}`. Points at the roundoff
///   floor are left out of the fitted slope; the all-points slope is
///   reported alongside.
pub fn verify(cfg: &VerifyConfig) -> Result<EvalReport> {
    let problem = Problem::<f64>::builtin(&cfg.problem)?;
    let t = cfg.t.unwrap_or(problem.horizon);
    let step = cfg.step.unwrap_or(if t > 0.0 { t.min(DEFAULT_STEP) } else { DEFAULT_STEP });
    let prop = magnus_propagate(&problem, t, step, cfg.order, cfg.cap, cfg.evaluator)?;
    let f = |s: f64| problem.eval(s);
    let reference = dense_reference_auto(&f, t)?;
    let error = (&prop.value - &reference.value).frobenius_norm();
    let unitarity_defect = prop.value.unitarity_defect();

    let mut checks = vec![check(
        "reference_error_estimate",
        reference.error_estimate,
        ROUNDOFF_TOLERANCE,
        reference.converged,
    )];
    let poly = problem.polynomial();
    if poly.is_some_and(|p| p.degree() == 0) {
        checks.push(check("error", error, ROUNDOFF_TOLERANCE, error <= ROUNDOFF_TOLERANCE));
    }
    let skew = problem.structure == StructureTag::SkewHermitian;
    if skew {
        checks.push(check(
            "unitarity_defect",
            unitarity_defect,
            ROUNDOFF_TOLERANCE,
            unitarity_defect <= ROUNDOFF_TOLERANCE,
        ));
    }
    let neumann_unitarity_defect = match (skew, poly) {
        (true, Some(p)) => Some(neumann_reference(p, t, cfg.order)?.unitarity_defect()),
        _ => None,
    };
    let fit = match (cfg.evaluator, poly) {
        (Evaluator::Exact, Some(p)) if p.degree() > 0 && t > 0.0 => {
            let fit = order_fit(&problem, cfg.order, t, FIT_LEVELS, cfg.cap)?;
            let bound = (cfg.order + 1) as f64 - SLOPE_TOLERANCE;
            match fit.resolved_slope {
                Some(slope) => checks.push(check("order_slope_min", slope, bound, slope >= bound)),
                None => {
                    let worst = fit.errors.iter().cloned().fold(0.0, f64::max);
                    checks.push(check("truncation_below_noise_floor", worst, NOISE_FLOOR, worst <= NOISE_FLOOR));
                }
            }
            Some(fit)
        }
        _ => None,
    };
    let (samples, seed) = match cfg.evaluator {
        Evaluator::MonteCarlo { samples, seed } => (Some(samples), Some(seed)),
        Evaluator::Exact => (None, None),
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(EvalReport {
        problem: problem.name.clone(),
        structure: problem.structure,
        order: cfg.order,
        t,
        step,
        steps: prop.steps,
        evaluator: cfg.evaluator.name().to_string(),
        samples,
        seed,
        error,
        unitarity_defect,
        neumann_unitarity_defect,
        std_error: prop.std_error,
        reference: ReferenceInfo {
            method: "rk4-richardson".to_string(),
            steps: reference.steps,
            error_estimate: reference.error_estimate,
            converged: reference.converged,
        },
        fit,
        checks,
        passed,
    })
}

//! Matrix-valued evaluation of iterated integrals, truncated Magnus
//! propagation and the reference solvers it is checked against.
//!
//! Generic over [`Real`](crate::scalar::Real); matrices have complex entries.

pub mod integrals;
pub mod matrix;
pub mod poly;
pub mod propagate;
pub mod reference;
pub mod report;
pub mod series;

pub use integrals::{iterated_integral_exact, iterated_integral_mc, simplex_weight, McEstimate};
pub use matrix::{commutator, Matrix};
pub use poly::MatPoly;
pub use propagate::{magnus_propagate, order_fit, Problem, StructureTag, BUILTIN_PROBLEMS};
pub use reference::{dense_reference, dense_reference_auto, neumann_reference};
pub use report::{verify, EvalReport, VerifyConfig};
pub use series::{evaluate_series, Evaluator, Operator, Series};

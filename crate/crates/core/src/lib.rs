//! Exact Magnus expansion terms via the Malvenuto–Reutenauer Hopf algebra of
//! permutations, with numerical verification.
//!
//! * [`perm`]: words, permutations, standardization and descent statistics.
//! * [`combination`]: sparse linear combinations over a coefficient ring.
//! * [`hopf`]: the products `∗`, `∗′`, coproducts `δ`, `δ′`, the involution
//!   `θ`, and exhaustive/randomized axiom checks.
//! * [`magnus`]: `Ω_n` in the word and right-nested bases, DSW projection and
//!   BCH polynomials.
//! * [`numerics`]: matrix evaluation of iterated integrals, propagation and
//!   reference solvers.
//! * [`format`]: text, LaTeX and JSON renderings.
//!
//! The algebra is generic over [`scalar::Ring`]/[`scalar::Field`] and the
//! numerics over [`scalar::Real`]; the aliases below fix the usual choices.

pub mod combination;
pub mod error;
pub mod format;
pub mod hopf;
pub mod magnus;
pub mod numerics;
pub mod perm;
pub mod scalar;

pub use combination::Combination;
pub use error::{Error, Result};
pub use magnus::rnested::{Anchor, BracketSum, RNestedCombination};
pub use magnus::OrderCap;
pub use perm::{Permutation, Word};
pub use scalar::Rational;

/// Exact combination of permutations.
pub type PermCombination = Combination<Permutation, Rational>;
/// Element of the permutation Hopf algebra with exact coefficients.
pub type HopfElement = hopf::HopfElement<Rational>;
/// Element of the tensor square with exact coefficients.
pub type TensorCombination = hopf::Tensor<Rational>;
/// Exact right-nested combination.
pub type RNested = RNestedCombination<Rational>;
/// Double-precision complex square matrix.
pub type SquareMatrix = numerics::Matrix<f64>;
/// Double-precision matrix polynomial.
pub type MatrixPolynomial = numerics::MatPoly<f64>;

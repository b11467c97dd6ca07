//! Exact terms `Ω_n` of the Magnus expansion.
//!
//! In the word basis, `A(σ)` stands for the iterated integral over
//! `t > t_1 > ⋯ > t_n > 0` of `A(t_{σ(1)}) ⋯ A(t_{σ(n)})`, so `Ω_n` is a
//! rational combination of the permutations of grade `n`. Two independent
//! routes produce it:
//!
//! * [`omega_word`] evaluates the closed descent formula
//!   `(−1)^{d_b} d_a! d_b! / n!` term by term;
//! * [`omega_via_log`] expands `log(I + Σ P_k)` with `P_k = A(1 2 … k)` and
//!   multiplies iterated integrals with the `∗` product of permutations.
//!
//! [`rnested`] rewrites `Ω_n` over `(n−1)!` independent right-nested
//! commutators, and [`bch`] specializes the series to the
//! Baker–Campbell–Hausdorff polynomials.

pub mod bch;
pub mod rnested;

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::hopf::star;
use crate::perm::Permutation;
use crate::scalar::{binomial, factorial, Field, Rational};

/// Default largest order generated without an explicit override (9! terms).
pub const DEFAULT_ORDER_CAP: usize = 9;

/// Largest order a generator will produce. Generation cost grows like `n!`,
/// so exceeding the cap is an error rather than a slow computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderCap(pub usize);

impl Default for OrderCap {
    fn default() -> Self {
        OrderCap(DEFAULT_ORDER_CAP)
    }
}

impl OrderCap {
    /// Unlimited; callers take responsibility for the factorial blowup.
    pub const NONE: OrderCap = OrderCap(usize::MAX);

    pub fn check(self, order: usize) -> Result<()> {
        if order > self.0 {
            return Err(Error::CapExceeded {
                order,
                cap: self.0,
                terms: factorial(order).to_string(),
            });
        }
        Ok(())
    }
}

pub(crate) fn check_order(order: usize, cap: OrderCap) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    cap.check(order)
}

/// `P_n = A(1 2 … n)`, the n-th Neumann term; `n = 0` gives the unit `( )`.
pub fn neumann_p(n: usize) -> Permutation {
    Permutation::identity(n)
}

/// Coefficient of a grade-`n` permutation with `descents` descents in `Ω_n`:
/// `(−1)^{d_b} d_a! d_b! / n!`.
pub fn word_coefficient(n: usize, descents: usize) -> Rational {
    assert!(n >= 1 && descents < n);
    let ascents = n - 1 - descents;
    let num = factorial(ascents) * factorial(descents);
    let r = Rational::new(num, factorial(n));
    if descents % 2 == 1 {
        -r
    } else {
        r
    }
}

/// The same coefficient written as `(1/n) (−1)^{d_b} / C(n−1, d_b)`.
pub fn word_coefficient_binomial(n: usize, descents: usize) -> Rational {
    let r = Rational::new(BigInt::from(1), BigInt::from(n) * binomial(n - 1, descents));
    if descents % 2 == 1 {
        -r
    } else {
        r
    }
}

/// `Ω_n` in the word basis from the descent formula.
pub fn omega_word<C: Field>(n: usize, cap: OrderCap) -> Result<Combination<Permutation, C>> {
    check_order(n, cap)?;
    let by_descents: Vec<C> = (0..n)
        .map(|d| C::from_rational(&word_coefficient(n, d)))
        .collect();
    Ok(Permutation::all(n)
        .map(|p| {
            let c = by_descents[p.descents()].clone();
            (p, c)
        })
        .collect())
}

/// `Ω_n = Σ_j ((−1)^{j+1}/j) Σ_{i_1+⋯+i_j=n} P_{i_1} ∗ ⋯ ∗ P_{i_j}`.
///
/// The inner sums are accumulated as integer multiplicities: `S[j][m]` holds
/// the sum over all compositions of `m` into `j` parts, built left to right as
/// `S[j][m] = Σ_i S[j−1][m−i] ∗ P_i`, so every composition prefix is
/// multiplied out once.
pub fn omega_via_log<C: Field>(n: usize, cap: OrderCap) -> Result<Combination<Permutation, C>> {
    check_order(n, cap)?;
    type Counts = HashMap<Permutation, i64>;

    // sums[j][m], j parts summing to m; only m ≤ n is needed.
    let mut sums: Vec<Vec<Counts>> = vec![vec![Counts::new(); n + 1]; n + 1];
    for m in 1..=n {
        sums[1][m].insert(neumann_p(m), 1);
    }
    for j in 2..=n {
        for m in j..=n {
            let mut acc = Counts::new();
            for i in 1..=m - (j - 1) {
                let p_i = neumann_p(i);
                for (prefix, &count) in &sums[j - 1][m - i] {
                    let product: Combination<Permutation, i64> = star(prefix, &p_i);
                    for (perm, &c) in product.iter() {
                        *acc.entry(perm.clone()).or_insert(0) += c * count;
                    }
                }
            }
            sums[j][m] = acc;
        }
    }

    let mut omega: HashMap<Permutation, Rational> = HashMap::new();
    for (j, row) in sums.iter().enumerate().skip(1) {
        let sign: i64 = if j % 2 == 1 { 1 } else { -1 };
        for (perm, &count) in &row[n] {
            let term = Rational::new(BigInt::from(sign * count), BigInt::from(j));
            let slot = omega.entry(perm.clone()).or_default();
            *slot += term;
        }
    }
    Ok(omega
        .into_iter()
        .map(|(p, c)| (p, C::from_rational(&c)))
        .collect())
}

/// Which generator produced a word-basis series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordRoute {
    Formula,
    Logarithm,
}

pub fn omega<C: Field>(n: usize, route: WordRoute, cap: OrderCap) -> Result<Combination<Permutation, C>> {
    match route {
        WordRoute::Formula => omega_word(n, cap),
        WordRoute::Logarithm => omega_via_log(n, cap),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;
    use num_rational::Ratio;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn series(terms: &[(&[u32], Rational)]) -> Combination<Permutation, Rational> {
        terms.iter().map(|(p, c)| (perm(p), c.clone())).collect()
    }

    #[test]
    fn omega_two_and_three() {
        let w2 = series(&[(&[1, 2], r(1, 2)), (&[2, 1], r(-1, 2))]);
        let w3 = series(&[
            (&[1, 2, 3], r(1, 3)),
            (&[1, 3, 2], r(-1, 6)),
            (&[2, 1, 3], r(-1, 6)),
            (&[2, 3, 1], r(-1, 6)),
            (&[3, 1, 2], r(-1, 6)),
            (&[3, 2, 1], r(1, 3)),
        ]);
        for route in [WordRoute::Formula, WordRoute::Logarithm] {
            assert_eq!(omega::<Rational>(2, route, OrderCap::default()).unwrap(), w2);
            assert_eq!(omega::<Rational>(3, route, OrderCap::default()).unwrap(), w3);
        }
        let w1 = omega_via_log::<Rational>(1, OrderCap::default()).unwrap();
        assert_eq!(w1, series(&[(&[1], r(1, 1))]));
    }

    #[test]
    fn neumann_terms() {
        assert_eq!(neumann_p(1), perm(&[1]));
        assert_eq!(neumann_p(3), perm(&[1, 2, 3]));
        assert_eq!(neumann_p(0), Permutation::empty());
    }

    #[test]
    fn invalid_orders() {
        assert_eq!(
            omega_word::<Rational>(0, OrderCap::default()),
            Err(Error::InvalidOrder { order: 0, min: 1 })
        );
        match omega_word::<Rational>(10, OrderCap::default()) {
            Err(Error::CapExceeded { order: 10, cap: 9, terms }) => assert_eq!(terms, "3628800"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(omega_via_log::<Rational>(4, OrderCap(3)).is_err());
    }

    #[test]
    fn coefficient_forms_agree() {
        for n in 1..=12 {
            for d in 0..n {
                assert_eq!(word_coefficient(n, d), word_coefficient_binomial(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn generic_coefficients() {
        let exact = omega_word::<Rational>(5, OrderCap::default()).unwrap();
        let small = omega_via_log::<Ratio<i64>>(5, OrderCap::default()).unwrap();
        let float = omega_word::<f64>(5, OrderCap::default()).unwrap();
        assert_eq!(exact.len(), 120);
        for (p, c) in exact.iter() {
            let s = small.coeff(p);
            assert_eq!(Rational::new((*s.numer()).into(), (*s.denom()).into()), *c);
            assert!((float.coeff(p) - Field::to_f64(c)).abs() < 1e-15);
        }
    }
}

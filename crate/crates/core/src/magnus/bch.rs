//! Baker–Campbell–Hausdorff polynomials from the Magnus series.
//!
//! Take `A(t) = Y` on `[0, 1)` and `A(t) = X` on `[1, 2]`; then the solution
//! at `t = 2` is `e^X e^Y` and `Ω(2) = log(e^X e^Y)`. In `A(σ)` with `j` of the
//! ordered times in `[1, 2]`, the variables `t_1 … t_j` carry `X`, the rest
//! carry `Y`, and the region has volume `1/(j! (n−j)!)`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::rnested::{bracket_words, omega_rnested, Anchor};
use super::{omega_word, OrderCap};
use crate::combination::{Combination, Graded};
use crate::error::Result;
use crate::scalar::{factorial, Field, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    X,
    Y,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::X => "X",
            Letter::Y => "Y",
        })
    }
}

/// Noncommutative monomial in `X` and `Y`, ordered by length then
/// lexicographically with `X < Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BchWord(pub Vec<Letter>);

impl BchWord {
    pub fn parse(s: &str) -> Option<BchWord> {
        s.chars()
            .map(|c| match c {
                'X' => Some(Letter::X),
                'Y' => Some(Letter::Y),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(BchWord)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl Ord for BchWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BchWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Graded for BchWord {
    fn grade(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for BchWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{l}"))
    }
}

/// Right-nested bracket `[l_1, [l_2, … [l_{n−1}, l_n]]]` over `{X, Y}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterBracket(pub Vec<Letter>);

impl fmt::Display for LetterBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        for (i, l) in self.0.iter().enumerate() {
            if i + 1 < n {
                write!(f, "[{l},")?;
            } else {
                write!(f, "{l}")?;
            }
        }
        for _ in 1..n {
            f.write_str("]")?;
        }
        Ok(())
    }
}

pub type BchSeries<C> = Combination<BchWord, C>;

/// `1/(j! (n−j)!)` for `j = 0..=n`.
fn region_volumes(n: usize) -> Vec<Rational> {
    (0..=n)
        .map(|j| Rational::new(BigInt::from(1), factorial(j) * factorial(n - j)))
        .collect()
}

fn specialize(indices: &[u32], j: usize) -> Vec<Letter> {
    indices
        .iter()
        .map(|&i| if (i as usize) <= j { Letter::X } else { Letter::Y })
        .collect()
}

/// `Z_n(X, Y)` as a combination of words, from `Ω_n` in the word basis.
pub fn bch_words<C: Field>(n: usize, cap: OrderCap) -> Result<BchSeries<C>> {
    let omega = omega_word::<Rational>(n, cap)?;
    let volumes = region_volumes(n);
    let mut out = Combination::<BchWord, Rational>::new();
    for (sigma, c) in omega.iter() {
        for (j, vol) in volumes.iter().enumerate() {
            out.add_term(BchWord(specialize(sigma.image(), j)), c * vol);
        }
    }
    Ok(out.map_coeffs(C::from_rational))
}

/// `Z_n(X, Y)` as right-nested brackets, from the right-nested form of `Ω_n`
/// anchored at the last time. Identical brackets are merged, but the result
/// is not reduced to a basis.
pub fn bch_brackets<C: Field>(n: usize, cap: OrderCap) -> Result<Combination<LetterBracket, C>> {
    let omega = omega_rnested::<Rational>(n, Anchor::Last, cap)?;
    let volumes = region_volumes(n);
    let mut out = Combination::<LetterBracket, Rational>::new();
    for (indices, c) in omega.iter() {
        for (j, vol) in volumes.iter().enumerate() {
            let letters = specialize(indices, j);
            // Brackets with equal innermost pair vanish identically.
            if n >= 2 && letters[n - 1] == letters[n - 2] {
                continue;
            }
            out.add_term(LetterBracket(letters), c * vol);
        }
    }
    Ok(out.map_coeffs(C::from_rational))
}

/// Word expansion of a combination of letter brackets.
pub fn expand_letter_brackets<C: Ring>(brackets: &Combination<LetterBracket, C>) -> BchSeries<C> {
    let mut out = BchSeries::new();
    for (b, c) in brackets.iter() {
        for (w, negative) in bracket_words(&b.0) {
            out.add_term(BchWord(w), if negative { -c.clone() } else { c.clone() });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn words(terms: &[(&str, Rational)]) -> BchSeries<Rational> {
        terms
            .iter()
            .map(|(w, c)| (BchWord::parse(w).unwrap(), c.clone()))
            .collect()
    }

    fn brackets(terms: &[(&str, Rational)]) -> Combination<LetterBracket, Rational> {
        terms
            .iter()
            .map(|(w, c)| (LetterBracket(BchWord::parse(w).unwrap().0), c.clone()))
            .collect()
    }

    #[test]
    fn first_grades() {
        let cap = OrderCap::default();
        assert_eq!(
            bch_words::<Rational>(1, cap).unwrap(),
            words(&[("X", r(1, 1)), ("Y", r(1, 1))])
        );
        assert_eq!(
            bch_words::<Rational>(2, cap).unwrap(),
            words(&[("XY", r(1, 2)), ("YX", r(-1, 2))])
        );
        // 1/12 [X,[X,Y]] + 1/12 [Y,[Y,X]]
        let z3 = expand_letter_brackets(&brackets(&[("XXY", r(1, 12)), ("YYX", r(1, 12))]));
        assert_eq!(bch_words::<Rational>(3, cap).unwrap(), z3);
    }

    #[test]
    fn bracket_route_matches_word_route() {
        for n in 1..=6 {
            let via_brackets = expand_letter_brackets(&bch_brackets::<Rational>(n, OrderCap::default()).unwrap());
            assert_eq!(via_brackets, bch_words::<Rational>(n, OrderCap::default()).unwrap(), "n={n}");
        }
    }

    #[test]
    fn swap_symmetry() {
        // log(e^{−Y} e^{−X}) = −log(e^X e^Y) gives Z_n(Y, X) = (−1)^{n+1} Z_n(X, Y).
        for n in 2..=6 {
            let z = bch_words::<Rational>(n, OrderCap::default()).unwrap();
            let swapped: BchSeries<Rational> = z.map_keys(|w| {
                BchWord(
                    w.0.iter()
                        .map(|l| if *l == Letter::X { Letter::Y } else { Letter::X })
                        .collect(),
                )
            });
            let sign = if n % 2 == 1 { r(1, 1) } else { r(-1, 1) };
            assert_eq!(swapped, z.scale(&sign), "n={n}");
        }
    }

    #[test]
    fn bracket_display() {
        assert_eq!(LetterBracket(vec![Letter::X, Letter::X, Letter::Y]).to_string(), "[X,[X,Y]]");
        assert_eq!(LetterBracket(vec![Letter::Y]).to_string(), "Y");
        assert_eq!(BchWord::parse("XYY").unwrap().to_string(), "XYY");
    }
}

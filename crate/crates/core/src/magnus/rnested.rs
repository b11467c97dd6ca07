//! `Ω_n` over right-nested commutators.
//!
//! `A[i_1, …, i_n]` is the iterated integral of
//! `[A(t_{i_1}), [A(t_{i_2}), … [A(t_{i_{n−1}}), A(t_{i_n})] … ]]`. The
//! `(n−1)!` brackets whose innermost-right index is a fixed anchor form a basis
//! of the multilinear Lie elements, and the coefficient of the bracket
//! `[k, …, i, a]` equals the coefficient of the word `(k … i a)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{check_order, OrderCap};
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::{factorial, Field, Rational, Ring};

/// Index held fixed in the innermost-right slot of every bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Anchor {
    /// `A(t_1)`.
    First,
    /// `A(t_n)`.
    Last,
}

impl Anchor {
    pub fn letter(self, grade: usize) -> u32 {
        match self {
            Anchor::First => 1,
            Anchor::Last => grade as u32,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Anchor::First => "first",
            Anchor::Last => "last",
        }
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RNestedTerm<C> {
    pub indices: Vec<u32>,
    pub coeff: C,
}

/// Combination of anchored right-nested brackets of one grade.
///
/// Indices are permutations of `{1, …, n}` ending in the anchor, so there are
/// at most `(n−1)!` terms and they are linearly independent.
#[derive(Clone, Debug, PartialEq)]
pub struct RNestedCombination<C> {
    grade: usize,
    anchor: Anchor,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Ring> RNestedCombination<C> {
    pub fn new(grade: usize, anchor: Anchor) -> Self {
        RNestedCombination {
            grade,
            anchor,
            terms: BTreeMap::new(),
        }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn anchor(&self) -> Anchor {
        self.anchor
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · A[indices]`; rejects sequences that are not permutations
    /// of the grade or do not end in the anchor.
    pub fn add_term(&mut self, indices: Vec<u32>, coeff: C) -> Result<()> {
        let p = Permutation::new(indices)?;
        if p.grade() != self.grade {
            return Err(Error::MixedGrades {
                first: self.grade,
                second: p.grade(),
            });
        }
        let anchor = self.anchor.letter(self.grade);
        if p.image().last() != Some(&anchor) {
            return Err(Error::NotDecomposable { anchor });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let indices: Vec<u32> = p.into();
        match self.terms.remove(&indices) {
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(indices, sum);
                }
            }
            None => {
                self.terms.insert(indices, coeff);
            }
        }
        Ok(())
    }

    pub fn coeff(&self, indices: &[u32]) -> C {
        self.terms.get(indices).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in lexicographic order of their index sequences.
    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn terms(&self) -> Vec<RNestedTerm<C>> {
        self.iter()
            .map(|(i, c)| RNestedTerm {
                indices: i.to_vec(),
                coeff: c.clone(),
            })
            .collect()
    }

    /// Word-basis image, see [`expand_rnested`].
    pub fn expand(&self) -> Combination<Permutation, C> {
        expand_rnested(self)
    }
}

/// Adds `coeff` times the word expansion of `[i_1, [i_2, … [i_{n−1}, i_n]]]`
/// to `out`: `2^{n−1}` signed words.
pub fn expand_bracket<C: Ring>(indices: &[u32], coeff: &C, out: &mut Combination<Permutation, C>) {
    for (word, negative) in bracket_words(indices) {
        let c = if negative { -coeff.clone() } else { coeff.clone() };
        out.add_term(Permutation::from_image_unchecked(word), c);
    }
}

/// Signed words of a right-nested bracket over arbitrary letters, built from
/// the inside out with `[x, W] = xW − Wx`.
pub(crate) fn bracket_words<T: Copy>(letters: &[T]) -> Vec<(Vec<T>, bool)> {
    let Some((&innermost, rest)) = letters.split_last() else {
        return vec![(Vec::new(), false)];
    };
    let mut words = vec![(vec![innermost], false)];
    for &x in rest.iter().rev() {
        let mut next = Vec::with_capacity(words.len() * 2);
        for (w, neg) in words {
            let mut left = Vec::with_capacity(w.len() + 1);
            left.push(x);
            left.extend_from_slice(&w);
            let mut right = w;
            right.push(x);
            next.push((left, neg));
            next.push((right, !neg));
        }
        words = next;
    }
    words
}

/// Distributes every bracket `[X, Y] = XY − YX` down to words.
pub fn expand_rnested<C: Ring>(c: &RNestedCombination<C>) -> Combination<Permutation, C> {
    let mut out = Combination::new();
    for (indices, coeff) in c.iter() {
        expand_bracket(indices, coeff, &mut out);
    }
    out
}

/// `Ω_n` with `(n−1)!` right-nested brackets.
///
/// With anchor `First` the brackets are `A[σ(2), …, σ(n), 1]` for `σ` a
/// permutation of `{2, …, n}` with coefficient `(−1)^{d_b+1} d_a! (d_b+1)! / n!`;
/// with anchor `Last` they are `A[σ(1), …, σ(n−1), n]` with coefficient
/// `(1/n) (−1)^{d_b} / C(n−1, d_b)`, where `d_a`, `d_b` count the ascents and
/// descents of `σ`.
pub fn omega_rnested<C: Field>(n: usize, anchor: Anchor, cap: OrderCap) -> Result<RNestedCombination<C>> {
    check_order(n, cap)?;
    let mut out = RNestedCombination::new(n, anchor);
    if n == 1 {
        out.add_term(vec![1], C::one())?;
        return Ok(out);
    }
    let coeffs: Vec<C> = (0..n - 1)
        .map(|d| C::from_rational(&rnested_coefficient(n, anchor, d)))
        .collect();
    for sigma in Permutation::all(n - 1) {
        let c = coeffs[sigma.descents()].clone();
        let indices: Vec<u32> = match anchor {
            Anchor::First => sigma.image().iter().map(|&a| a + 1).chain([1]).collect(),
            Anchor::Last => sigma.image().iter().copied().chain([n as u32]).collect(),
        };
        out.add_term(indices, c)?;
    }
    Ok(out)
}

/// Coefficient of a basis bracket whose free part has `descents` descents.
pub fn rnested_coefficient(n: usize, anchor: Anchor, descents: usize) -> Rational {
    match anchor {
        Anchor::First => {
            let ascents = n - 2 - descents;
            let r = Rational::new(
                factorial(ascents) * factorial(descents + 1),
                factorial(n),
            );
            if descents % 2 == 0 {
                -r
            } else {
                r
            }
        }
        Anchor::Last => super::word_coefficient_binomial(n, descents),
    }
}

/// Reads off right-nested coefficients from a word-basis Lie element: the
/// coefficient of `A[k, j, …, i, a]` is the coefficient of the word
/// `(k j … i a)` where `a` is the anchor.
///
/// The result is verified by expanding it back; a mismatch means `x` was not
/// a combination of commutators.
pub fn dragt_forest_extract<C: Ring>(
    x: &Combination<Permutation, C>,
    anchor: Anchor,
) -> Result<RNestedCombination<C>> {
    let Some(n) = x.homogeneous_grade()? else {
        return Err(Error::InvalidOrder { order: 0, min: 1 });
    };
    let a = anchor.letter(n);
    let mut out = RNestedCombination::new(n, anchor);
    for (p, c) in x.iter().filter(|(p, _)| p.image().last() == Some(&a)) {
        out.add_term(p.image().to_vec(), c.clone())?;
    }
    if expand_rnested(&out) != *x {
        return Err(Error::NotDecomposable { anchor: a });
    }
    Ok(out)
}

/// Unreduced list of right-nested brackets with arbitrary index sequences.
///
/// Unlike [`RNestedCombination`] the brackets need not share an anchor, and
/// they are in general linearly dependent (antisymmetry, Jacobi).
#[derive(Clone, Debug, PartialEq)]
pub struct BracketSum<C> {
    pub grade: usize,
    pub terms: Vec<RNestedTerm<C>>,
}

impl<C: Ring> BracketSum<C> {
    pub fn expand(&self) -> Combination<Permutation, C> {
        let mut out = Combination::new();
        for t in &self.terms {
            expand_bracket(&t.indices, &t.coeff, &mut out);
        }
        out
    }
}

impl<C: Ring> From<&RNestedCombination<C>> for BracketSum<C> {
    fn from(c: &RNestedCombination<C>) -> Self {
        BracketSum {
            grade: c.grade(),
            terms: c.terms(),
        }
    }
}

/// Dynkin–Specht–Wever projection: every word `σ` becomes `(1/n)` times the
/// right-nested bracket of its letters. Fixes Lie elements; no reduction.
pub fn dsw_project<C: Field>(x: &Combination<Permutation, C>) -> Result<BracketSum<C>> {
    let n = x.homogeneous_grade()?.unwrap_or(0);
    let inv_n = if n == 0 {
        C::one()
    } else {
        C::from_rational(&Rational::new(BigInt::from(1), BigInt::from(n)))
    };
    Ok(BracketSum {
        grade: n,
        terms: x
            .iter()
            .map(|(p, c)| RNestedTerm {
                indices: p.image().to_vec(),
                coeff: c.clone() * inv_n.clone(),
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::omega_word;
    use crate::perm::perm;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn rn(n: usize, anchor: Anchor, terms: &[(&[u32], Rational)]) -> RNestedCombination<Rational> {
        let mut c = RNestedCombination::new(n, anchor);
        for (i, v) in terms {
            c.add_term(i.to_vec(), v.clone()).unwrap();
        }
        c
    }

    fn cap() -> OrderCap {
        OrderCap::default()
    }

    #[test]
    fn low_orders_anchor_first() {
        assert_eq!(
            omega_rnested::<Rational>(2, Anchor::First, cap()).unwrap(),
            rn(2, Anchor::First, &[(&[2, 1], r(-1, 2))])
        );
        assert_eq!(
            omega_rnested::<Rational>(3, Anchor::First, cap()).unwrap(),
            rn(3, Anchor::First, &[(&[3, 2, 1], r(1, 3)), (&[2, 3, 1], r(-1, 6))])
        );
        let one = omega_rnested::<Rational>(1, Anchor::Last, cap()).unwrap();
        assert_eq!(one.terms(), vec![RNestedTerm { indices: vec![1], coeff: r(1, 1) }]);
    }

    #[test]
    fn omega_four_anchor_first() {
        let expected = rn(
            4,
            Anchor::First,
            &[
                (&[4, 3, 2, 1], r(-1, 4)),
                (&[4, 2, 3, 1], r(1, 12)),
                (&[3, 2, 4, 1], r(1, 12)),
                (&[3, 4, 2, 1], r(1, 12)),
                (&[2, 4, 3, 1], r(1, 12)),
                (&[2, 3, 4, 1], r(-1, 12)),
            ],
        );
        assert_eq!(omega_rnested::<Rational>(4, Anchor::First, cap()).unwrap(), expected);
    }

    #[test]
    fn single_commutator_expansion() {
        let c = rn(2, Anchor::First, &[(&[2, 1], r(1, 1))]);
        let expected: Combination<Permutation, Rational> =
            [(perm(&[2, 1]), r(1, 1)), (perm(&[1, 2]), r(-1, 1))].into_iter().collect();
        assert_eq!(expand_rnested(&c), expected);

        let half = rn(2, Anchor::First, &[(&[2, 1], r(-1, 2))]);
        assert_eq!(expand_rnested(&half), omega_word::<Rational>(2, cap()).unwrap());
    }

    #[test]
    fn expansion_has_two_to_the_n_minus_one_words() {
        let c = rn(5, Anchor::First, &[(&[3, 5, 2, 4, 1], r(1, 1))]);
        assert_eq!(expand_rnested(&c).len(), 16);
    }

    #[test]
    fn bracket_validation() {
        let mut c = RNestedCombination::<Rational>::new(3, Anchor::First);
        assert!(c.add_term(vec![1, 2, 3], r(1, 1)).is_err());
        assert!(c.add_term(vec![2, 1], r(1, 1)).is_err());
        assert!(c.add_term(vec![2, 2, 1], r(1, 1)).is_err());
        c.add_term(vec![2, 3, 1], r(1, 2)).unwrap();
        c.add_term(vec![2, 3, 1], r(-1, 2)).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn extraction() {
        let w3 = omega_word::<Rational>(3, cap()).unwrap();
        assert_eq!(
            dragt_forest_extract(&w3, Anchor::First).unwrap(),
            rn(3, Anchor::First, &[(&[3, 2, 1], r(1, 3)), (&[2, 3, 1], r(-1, 6))])
        );
        let w2 = omega_word::<Rational>(2, cap()).unwrap();
        assert_eq!(
            dragt_forest_extract(&w2, Anchor::First).unwrap(),
            rn(2, Anchor::First, &[(&[2, 1], r(-1, 2))])
        );

        let symmetric: Combination<Permutation, Rational> =
            [(perm(&[1, 2]), r(1, 2)), (perm(&[2, 1]), r(1, 2))].into_iter().collect();
        assert_eq!(
            dragt_forest_extract(&symmetric, Anchor::First),
            Err(Error::NotDecomposable { anchor: 1 })
        );

        let mut mixed = w2.clone();
        mixed.add_term(perm(&[1]), r(1, 1));
        assert!(matches!(
            dragt_forest_extract(&mixed, Anchor::First),
            Err(Error::MixedGrades { .. })
        ));
    }

    #[test]
    fn dsw_projection() {
        let w2 = omega_word::<Rational>(2, cap()).unwrap();
        let d = dsw_project(&w2).unwrap();
        assert_eq!(
            d.terms,
            vec![
                RNestedTerm { indices: vec![1, 2], coeff: r(1, 4) },
                RNestedTerm { indices: vec![2, 1], coeff: r(-1, 4) },
            ]
        );
        assert_eq!(d.expand(), w2);

        let w3 = omega_word::<Rational>(3, cap()).unwrap();
        assert_eq!(dsw_project(&w3).unwrap().expand(), w3);

        let not_lie: Combination<Permutation, Rational> =
            [(perm(&[1, 2]), r(1, 1)), (perm(&[2, 1]), r(1, 1))].into_iter().collect();
        assert_ne!(dsw_project(&not_lie).unwrap().expand(), not_lie);
    }

    #[test]
    fn both_anchors_round_trip() {
        for n in 1..=6 {
            let w = omega_word::<Rational>(n, cap()).unwrap();
            for anchor in [Anchor::First, Anchor::Last] {
                let c = omega_rnested::<Rational>(n, anchor, cap()).unwrap();
                assert_eq!(c.len(), (1..n).product::<usize>().max(1));
                assert_eq!(expand_rnested(&c), w, "n={n} {anchor}");
                assert_eq!(dragt_forest_extract(&w, anchor).unwrap(), c);
            }
        }
    }
}

//! Words without repeated letters and permutations in one-line notation.
//!
//! A permutation of grade `n` is stored as its image `(σ(1) … σ(n))`, 1-indexed.
//! The empty permutation `( )` has grade 0 and is the unit of both products in
//! [`crate::hopf`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite sequence of distinct positive letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        check_distinct(&letters)?;
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Order-isomorphic permutation: applies the unique increasing bijection
    /// from the letter set onto `{1, …, len}`.
    pub fn standardize(&self) -> Permutation {
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_unstable_by_key(|&i| self.0[i]);
        let mut image = vec![0u32; self.0.len()];
        for (rank, &pos) in order.iter().enumerate() {
            image[pos] = rank as u32 + 1;
        }
        Permutation(image)
    }

    /// Subsequence keeping exactly the letters accepted by `keep`, order preserved.
    pub fn restrict(&self, keep: impl Fn(u32) -> bool) -> Word {
        Word(self.0.iter().copied().filter(|&a| keep(a)).collect())
    }

    /// Concatenation; fails if the two words share a letter.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word::new(letters)
    }

    /// Interprets the word as a permutation if its letters are exactly `{1, …, len}`.
    pub fn to_permutation(&self) -> Result<Permutation> {
        Permutation::new(self.0.clone())
    }
}

impl TryFrom<Vec<u32>> for Word {
    type Error = Error;

    fn try_from(letters: Vec<u32>) -> Result<Self> {
        Word::new(letters)
    }
}

impl From<Word> for Vec<u32> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl From<Permutation> for Word {
    fn from(p: Permutation) -> Self {
        Word(p.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

fn check_distinct(letters: &[u32]) -> Result<()> {
    let mut seen = letters.to_vec();
    seen.sort_unstable();
    if seen.first() == Some(&0) {
        return Err(Error::ZeroLetter);
    }
    match seen.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::RepeatedLetter { letter: w[0] }),
        None => Ok(()),
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[u32]) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("( )");
    }
    f.write_str("(")?;
    for (i, a) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

/// Bijection of `{1, …, n}` in one-line notation.
///
/// Ordered by grade first, then lexicographically on the image, which is the
/// canonical order for every emitted combination.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &a in &image {
            let idx = a as usize;
            if idx == 0 || idx > n || seen[idx - 1] {
                return Err(Error::NotAPermutation { image, grade: n });
            }
            seen[idx - 1] = true;
        }
        Ok(Permutation(image))
    }

    /// Caller guarantees `image` is a bijection of `{1, …, len}`.
    pub(crate) fn from_image_unchecked(image: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(image.clone()).is_ok(), "{image:?}");
        Permutation(image)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn grade(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn ascents(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] < w[1]).count()
    }

    pub fn descents(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &a) in self.0.iter().enumerate() {
            inv[a as usize - 1] = i as u32 + 1;
        }
        Permutation(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.grade() != other.grade() {
            return Err(Error::MixedGrades {
                first: self.grade(),
                second: other.grade(),
            });
        }
        Ok(Permutation(
            other.0.iter().map(|&j| self.0[j as usize - 1]).collect(),
        ))
    }

    /// Letters read right to left.
    pub fn reverse(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    /// Word over `{k+1, …, k+n}` obtained by adding `k` to every letter.
    pub fn shift(&self, k: u32) -> Word {
        Word(self.0.iter().map(|&a| a + k).collect())
    }

    pub fn as_word(&self) -> Word {
        Word(self.0.clone())
    }

    /// All permutations of grade `n` in lexicographic order.
    pub fn all(n: usize) -> Permutations {
        Permutations {
            next: Some(Permutation::identity(n)),
        }
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<u32>) -> Result<Self> {
        Permutation::new(image)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

/// Lexicographic enumeration of one symmetric group.
#[derive(Clone, Debug)]
pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut a = current.0.clone();
        if next_lexicographic(&mut a) {
            self.next = Some(Permutation(a));
        }
        Some(current)
    }
}

/// Advances `a` to its lexicographic successor; false when `a` was the last.
pub(crate) fn next_lexicographic<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Shorthand used throughout the tests: `perm(&[2, 4, 3, 1])`.
///
/// Panics on input that is not a permutation.
pub fn perm(image: &[u32]) -> Permutation {
    Permutation::new(image.to_vec()).expect("valid permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(letters: &[u32]) -> Word {
        Word::new(letters.to_vec()).unwrap()
    }

    #[test]
    fn ascent_descent_counts() {
        let p = perm(&[2, 4, 3, 1]);
        assert_eq!((p.ascents(), p.descents()), (1, 2));
        assert_eq!(perm(&[1, 2, 3]).ascents(), 2);
        assert_eq!(perm(&[1, 2, 3]).descents(), 0);
        assert_eq!(perm(&[3, 2, 1]).descents(), 2);
        let e = Permutation::empty();
        assert_eq!((e.ascents(), e.descents()), (0, 0));
    }

    #[test]
    fn standardization() {
        assert_eq!(word(&[3, 2, 4]).standardize(), perm(&[2, 1, 3]));
        assert_eq!(Word::empty().standardize(), Permutation::empty());
        assert_eq!(word(&[7, 1, 9]).standardize(), perm(&[2, 1, 3]));
    }

    #[test]
    fn invalid_words_are_rejected() {
        assert_eq!(
            Word::new(vec![3, 1, 3]),
            Err(Error::RepeatedLetter { letter: 3 })
        );
        assert_eq!(Word::new(vec![0, 1]), Err(Error::ZeroLetter));
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![2, 2]).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(perm(&[2, 3, 1]).inverse(), perm(&[3, 1, 2]));
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        assert_eq!(perm(&[2, 1, 3]).inverse(), perm(&[2, 1, 3]));
    }

    #[test]
    fn shifts_and_restrictions() {
        assert_eq!(perm(&[1, 2]).shift(1), word(&[2, 3]));
        assert_eq!(perm(&[2, 1]).shift(2), word(&[4, 3]));
        assert_eq!(perm(&[3, 1, 2]).shift(0), word(&[3, 1, 2]));

        let w = word(&[2, 4, 3, 1]);
        assert_eq!(w.restrict(|a| a <= 2), word(&[2, 1]));
        assert_eq!(w.restrict(|_| false), Word::empty());
        assert_eq!(w.restrict(|a| (1..=4).contains(&a)), w);
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let all: Vec<_> = Permutation::all(3).collect();
        let images: Vec<Vec<u32>> = all.iter().map(|p| p.image().to_vec()).collect();
        assert_eq!(
            images,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(6).count(), 720);
    }

    #[test]
    fn display() {
        assert_eq!(perm(&[2, 1, 3]).to_string(), "(2 1 3)");
        assert_eq!(Permutation::empty().to_string(), "( )");
    }

    #[test]
    fn composition_with_inverse_is_identity() {
        for p in Permutation::all(4) {
            assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(4));
        }
    }
}

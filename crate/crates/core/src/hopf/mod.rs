//! The two Hopf algebra structures on the graded span of all permutations.
//!
//! * `∗′` shuffles `σ` with `τ` shifted by `grade(σ)`; `δ′` deconcatenates and
//!   standardizes both halves.
//! * `∗` sums the concatenations `uv` with `st(u) = σ`, `st(v) = τ`; `δ` splits
//!   by value, `α|{1..i} ⊗ st(α|{i+1..n})`.
//!
//! `(∗, δ)` and `(∗′, δ′)` are each a bialgebra, and they are conjugate under
//! `θ(σ) = σ⁻¹`. Under the product of iterated integrals, `∗` is the rule
//! `A(σ)·A(τ) = A(σ ∗ τ)`.

pub mod axioms;

use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::perm::{Permutation, Word};
use crate::scalar::Ring;

/// Element of the Hopf algebra; grades may be mixed.
pub type HopfElement<C> = Combination<Permutation, C>;

/// Element of the two-fold tensor power.
pub type Tensor<C> = Combination<(Permutation, Permutation), C>;

/// Element of the three-fold tensor power (coassociativity checks only).
pub type Tensor3<C> = Combination<(Permutation, Permutation, Permutation), C>;

/// Which of the two conjugate structures to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Structure {
    /// `∗` with coproduct `δ`.
    Star,
    /// `∗′` with coproduct `δ′`.
    StarPrime,
}

impl Structure {
    pub const BOTH: [Structure; 2] = [Structure::Star, Structure::StarPrime];

    pub fn name(self) -> &'static str {
        match self {
            Structure::Star => "star",
            Structure::StarPrime => "starprime",
        }
    }

    pub fn product<C: Ring>(self, a: &Permutation, b: &Permutation) -> HopfElement<C> {
        match self {
            Structure::Star => star(a, b),
            Structure::StarPrime => star_prime(a, b),
        }
    }

    pub fn coproduct<C: Ring>(self, a: &Permutation) -> Tensor<C> {
        match self {
            Structure::Star => coproduct(a),
            Structure::StarPrime => coproduct_prime(a),
        }
    }

    pub fn multiply<C: Ring>(self, x: &HopfElement<C>, y: &HopfElement<C>) -> HopfElement<C> {
        x.bilinear(y, |a, b| self.product(a, b))
    }

    pub fn comultiply<C: Ring>(self, x: &HopfElement<C>) -> Tensor<C> {
        x.map_linear(|a| self.coproduct(a))
    }

    /// Product on the tensor square, computed slot by slot.
    pub fn multiply_tensors<C: Ring>(self, x: &Tensor<C>, y: &Tensor<C>) -> Tensor<C> {
        x.bilinear(y, |(a1, a2), (b1, b2)| {
            let left: HopfElement<C> = self.product(a1, b1);
            let right: HopfElement<C> = self.product(a2, b2);
            tensor(&left, &right)
        })
    }
}

/// `x ⊗ y`.
pub fn tensor<C: Ring>(x: &HopfElement<C>, y: &HopfElement<C>) -> Tensor<C> {
    x.bilinear(y, |a, b| Tensor::basis((a.clone(), b.clone())))
}

/// Lexicographic enumeration of the `k`-element subsets of `{0, …, n-1}`.
pub(crate) fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (k <= n).then(|| (0..k).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut s = current.clone();
        if let Some(i) = (0..k).rev().find(|&i| s[i] < n - k + i) {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            next = Some(s);
        }
        Some(current)
    })
}

/// All interleavings of `u` and `v` that keep the internal order of each.
///
/// Listed by the positions occupied by `u`, in lexicographic order, so the
/// first result is `uv` and the last is `vu`.
pub fn shuffle(u: &Word, v: &Word) -> Result<Vec<Word>> {
    if let Some(&letter) = u.letters().iter().find(|a| v.letters().contains(a)) {
        return Err(Error::OverlappingLetters { letter });
    }
    Ok(shuffle_letters(u.letters(), v.letters())
        .map(|w| Word::new(w).expect("disjoint letters"))
        .collect())
}

fn shuffle_letters<'a>(u: &'a [u32], v: &'a [u32]) -> impl Iterator<Item = Vec<u32>> + 'a {
    let n = u.len() + v.len();
    subsets(n, u.len()).map(move |positions| {
        let mut out = Vec::with_capacity(n);
        let (mut iu, mut iv) = (0, 0);
        for slot in 0..n {
            if iu < positions.len() && positions[iu] == slot {
                out.push(u[iu]);
                iu += 1;
            } else {
                out.push(v[iv]);
                iv += 1;
            }
        }
        out
    })
}

/// `σ ∗′ τ = σ ⧢ τ̄`: shuffle with the letters of `τ` raised by `grade(σ)`.
pub fn star_prime<C: Ring>(sigma: &Permutation, tau: &Permutation) -> HopfElement<C> {
    let shifted = tau.shift(sigma.grade() as u32);
    shuffle_letters(sigma.image(), shifted.letters())
        .map(|w| (Permutation::from_image_unchecked(w), C::one()))
        .collect()
}

/// `σ ∗ τ = Σ uv` over words with `st(u) = σ`, `st(v) = τ` and `uv` a permutation.
pub fn star<C: Ring>(sigma: &Permutation, tau: &Permutation) -> HopfElement<C> {
    let (k, l) = (sigma.grade(), tau.grade());
    let n = k + l;
    let mut out = HopfElement::new();
    for chosen in subsets(n, k) {
        // `chosen` holds the values given to u (0-based); the rest go to v.
        let mut rest = Vec::with_capacity(l);
        let mut c = chosen.iter().peekable();
        for value in 0..n {
            if c.peek() == Some(&&value) {
                c.next();
            } else {
                rest.push(value);
            }
        }
        let image: Vec<u32> = sigma
            .image()
            .iter()
            .map(|&a| chosen[a as usize - 1] as u32 + 1)
            .chain(tau.image().iter().map(|&b| rest[b as usize - 1] as u32 + 1))
            .collect();
        out.add_term(Permutation::from_image_unchecked(image), C::one());
    }
    out
}

/// `δ′(α) = Σ_{α = uv} st(u) ⊗ st(v)` over the `n + 1` cut points.
pub fn coproduct_prime<C: Ring>(alpha: &Permutation) -> Tensor<C> {
    let word = alpha.as_word();
    let letters = word.letters();
    (0..=letters.len())
        .map(|i| {
            let u = Word::new(letters[..i].to_vec()).expect("subword");
            let v = Word::new(letters[i..].to_vec()).expect("subword");
            ((u.standardize(), v.standardize()), C::one())
        })
        .collect()
}

/// `δ(α) = Σ_i α|{1..i} ⊗ st(α|{i+1..n})`.
pub fn coproduct<C: Ring>(alpha: &Permutation) -> Tensor<C> {
    let word = alpha.as_word();
    (0..=alpha.grade() as u32)
        .map(|i| {
            let low = word.restrict(|a| a <= i);
            let high = word.restrict(|a| a > i);
            let low = Permutation::from_image_unchecked(low.letters().to_vec());
            ((low, high.standardize()), C::one())
        })
        .collect()
}

/// `ε`: coefficient of the empty permutation.
pub fn counit<C: Ring>(x: &HopfElement<C>) -> C {
    x.coeff(&Permutation::empty())
}

/// Inner product making the permutation basis orthonormal; on tensors the
/// basis is pairs (triples) of permutations, which is the slotwise extension.
pub fn pairing<K: Ord + Clone, C: Ring>(x: &Combination<K, C>, y: &Combination<K, C>) -> C {
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    small
        .iter()
        .filter_map(|(k, c)| large.get(k).map(|d| c.clone() * d.clone()))
        .fold(C::zero(), |a, b| a + b)
}

/// Linear involution `θ(σ) = σ⁻¹`.
pub fn theta<C: Ring>(x: &HopfElement<C>) -> HopfElement<C> {
    x.map_keys(Permutation::inverse)
}

/// `θ ⊗ θ`.
pub fn theta_tensor<C: Ring>(x: &Tensor<C>) -> Tensor<C> {
    x.map_keys(|(a, b)| (a.inverse(), b.inverse()))
}

/// `(ε ⊗ id)` applied to a tensor.
pub fn counit_left<C: Ring>(x: &Tensor<C>) -> HopfElement<C> {
    x.iter()
        .filter(|((a, _), _)| a.is_empty())
        .map(|((_, b), c)| (b.clone(), c.clone()))
        .collect()
}

/// `(id ⊗ ε)` applied to a tensor.
pub fn counit_right<C: Ring>(x: &Tensor<C>) -> HopfElement<C> {
    x.iter()
        .filter(|((_, b), _)| b.is_empty())
        .map(|((a, _), c)| (a.clone(), c.clone()))
        .collect()
}

/// `(Δ ⊗ id)` applied to a tensor.
pub fn coproduct_left<C: Ring>(s: Structure, x: &Tensor<C>) -> Tensor3<C> {
    x.map_linear(|(a, b)| {
        s.coproduct::<C>(a)
            .map_keys(|(a1, a2)| (a1.clone(), a2.clone(), b.clone()))
    })
}

/// `(id ⊗ Δ)` applied to a tensor.
pub fn coproduct_right<C: Ring>(s: Structure, x: &Tensor<C>) -> Tensor3<C> {
    x.map_linear(|(a, b)| {
        s.coproduct::<C>(b)
            .map_keys(|(b1, b2)| (a.clone(), b1.clone(), b2.clone()))
    })
}

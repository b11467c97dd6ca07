//! Formal linear combinations with canonical (sorted, zero-free) storage.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::Ring;

/// Finite formal sum `Σ c_k · k` over basis keys `K`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// canonical forms, and iteration follows the key order.
#[derive(Clone, Debug, PartialEq)]
pub struct Combination<K: Ord, C> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for Combination<K, C> {
    fn default() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, C: Ring> Combination<K, C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// The basis element `key` with coefficient one.
    pub fn basis(key: K) -> Self {
        Self::term(key, C::one())
    }

    pub fn term(key: K, coeff: C) -> Self {
        let mut c = Self::new();
        c.add_term(key, coeff);
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, C)>) -> Self {
        let mut c = Self::new();
        for (k, v) in terms {
            c.add_term(k, v);
        }
        c
    }

    /// Accumulates `coeff · key`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, key: K, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, key: &K) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn get(&self, key: &K) -> Option<&C> {
        self.terms.get(key)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn scale(&self, factor: &C) -> Self {
        if factor.is_zero() {
            return Self::new();
        }
        Self::from_terms(
            self.terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * factor.clone())),
        )
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &C) {
        if factor.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone() * factor.clone());
        }
    }

    /// Linear map induced by a map on basis elements.
    pub fn map_linear<K2: Ord + Clone>(&self, f: impl Fn(&K) -> Combination<K2, C>) -> Combination<K2, C> {
        let mut out = Combination::new();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }

    /// Re-keys every term; keys that collide are summed.
    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> Combination<K2, C> {
        Combination::from_terms(self.terms.iter().map(|(k, v)| (f(k), v.clone())))
    }

    /// Coefficient conversion, e.g. integer counts into rationals.
    pub fn map_coeffs<C2: Ring>(&self, f: impl Fn(&C) -> C2) -> Combination<K, C2> {
        Combination::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), f(v))))
    }

    /// Sum of all coefficients.
    pub fn coeff_sum(&self) -> C {
        self.terms.values().cloned().fold(C::zero(), |a, b| a + b)
    }

    /// Bilinear extension of a product of basis elements.
    pub fn bilinear<K2: Ord + Clone, K3: Ord + Clone>(
        &self,
        other: &Combination<K2, C>,
        f: impl Fn(&K, &K2) -> Combination<K3, C>,
    ) -> Combination<K3, C> {
        let mut out = Combination::new();
        for (a, ca) in &self.terms {
            for (b, cb) in other.iter() {
                out.add_scaled(&f(a, b), &(ca.clone() * cb.clone()));
            }
        }
        out
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, C)> {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone, C: Ring> FromIterator<(K, C)> for Combination<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<K: Ord + Clone, C: Ring> AddAssign<&Combination<K, C>> for Combination<K, C> {
    fn add_assign(&mut self, rhs: &Combination<K, C>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: Ord + Clone, C: Ring> SubAssign<&Combination<K, C>> for Combination<K, C> {
    fn sub_assign(&mut self, rhs: &Combination<K, C>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), -v.clone());
        }
    }
}

impl<K: Ord + Clone, C: Ring> Add for &Combination<K, C> {
    type Output = Combination<K, C>;

    fn add(self, rhs: Self) -> Combination<K, C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone, C: Ring> Sub for &Combination<K, C> {
    type Output = Combination<K, C>;

    fn sub(self, rhs: Self) -> Combination<K, C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone, C: Ring> Neg for &Combination<K, C> {
    type Output = Combination<K, C>;

    fn neg(self) -> Combination<K, C> {
        self.map_coeffs(|c| -c.clone())
    }
}

/// Basis elements carrying a grade.
pub trait Graded {
    fn grade(&self) -> usize;
}

impl Graded for Permutation {
    fn grade(&self) -> usize {
        Permutation::grade(self)
    }
}

impl<K: Ord + Clone + Graded, C: Ring> Combination<K, C> {
    /// Common grade of all terms: `Ok(None)` for the zero element, an error if
    /// two grades differ.
    pub fn homogeneous_grade(&self) -> Result<Option<usize>> {
        let mut grades = self.terms.keys().map(Graded::grade);
        let Some(first) = grades.next() else {
            return Ok(None);
        };
        match grades.find(|&g| g != first) {
            Some(second) => Err(Error::MixedGrades { first, second }),
            None => Ok(Some(first)),
        }
    }

    /// Part of the element of the given grade.
    pub fn graded_part(&self, grade: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.grade() == grade)
                .map(|(k, v)| (k.clone(), v.clone())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;
    use crate::scalar::Rational;
    use num_traits::Zero;
    use proptest::prelude::*;

    type Comb = Combination<Permutation, i64>;

    #[test]
    fn zero_terms_are_dropped() {
        let mut c = Comb::term(perm(&[1, 2]), 3);
        c.add_term(perm(&[1, 2]), -3);
        assert!(c.is_empty());
        c.add_term(perm(&[2, 1]), 0);
        assert!(c.is_empty());
        let r = Combination::<Permutation, Rational>::basis(perm(&[1]));
        assert!(r.scale(&Rational::zero()).is_empty());
    }

    #[test]
    fn grade_checks() {
        let mut c = Comb::basis(perm(&[1, 2]));
        assert_eq!(c.homogeneous_grade(), Ok(Some(2)));
        c.add_term(perm(&[1]), 1);
        assert_eq!(
            c.homogeneous_grade(),
            Err(Error::MixedGrades { first: 1, second: 2 })
        );
        assert_eq!(Comb::new().homogeneous_grade(), Ok(None));
        assert_eq!(c.graded_part(1), Comb::basis(perm(&[1])));
    }

    fn arb_comb() -> impl Strategy<Value = Comb> {
        prop::collection::vec((0usize..6, -5i64..5), 0..8).prop_map(|v| {
            let all: Vec<_> = Permutation::all(3).collect();
            Comb::from_terms(v.into_iter().map(|(i, c)| (all[i].clone(), c)))
        })
    }

    proptest! {
        #[test]
        fn addition_is_commutative_and_associative(a in arb_comb(), b in arb_comb(), c in arb_comb()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_empty());
            prop_assert!(a.iter().all(|(_, v)| *v != 0));
        }
    }
}

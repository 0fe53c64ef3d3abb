use super::rational::Rational;
use num_traits::{One, Zero};
use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;

/// Module structure shared by everything that can sit inside an `HSeries`.
pub trait Module: Clone + PartialEq {
    fn null() -> Self;
    fn is_null(&self) -> bool;
    fn add_scaled(&mut self, other: &Self, c: &Rational);

    fn add_assign(&mut self, other: &Self) {
        self.add_scaled(other, &Rational::one());
    }
    fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::null();
        out.add_scaled(self, c);
        out
    }
}

impl Module for Rational {
    fn null() -> Self {
        Zero::zero()
    }
    fn is_null(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self += other * c;
    }
}

/// Sparse finite linear combination of basis keys. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut l = Self::new();
        l.add_term(k, c);
        l
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Rational)>>(it: I) -> Self {
        let mut l = Self::new();
        for (k, c) in it {
            l.add_term(k, c);
        }
        l
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if Zero::is_zero(&c) {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if Zero::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    pub fn add_term_ref(&mut self, k: &K, c: &Rational) {
        if Zero::is_zero(c) {
            return;
        }
        if let Some(v) = self.terms.get_mut(k) {
            *v += c;
            if Zero::is_zero(v) {
                self.terms.remove(k);
            }
        } else {
            self.terms.insert(k.clone(), c.clone());
        }
    }

    pub fn get(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, k: &K) -> Option<&Rational> {
        self.terms.get(k)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    pub fn neg(&self) -> Self {
        Lin { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    /// Reindex every key; colliding images are summed.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Lin<K2> {
        let mut out = Lin::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Extend a key-level linear map.
    pub fn apply<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Lin<K2>) -> Lin<K2> {
        let mut out = Lin::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Lin { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    pub fn into_terms(self) -> BTreeMap<K, Rational> {
        self.terms
    }
}

impl<K: Ord + Clone> Module for Lin<K> {
    fn null() -> Self {
        Self::new()
    }
    fn is_null(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if Zero::is_zero(c) {
            return;
        }
        let one = c.is_one();
        for (k, v) in &other.terms {
            if one {
                self.add_term_ref(k, v);
            } else {
                self.add_term_ref(k, &(v * c));
            }
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(it: I) -> Self {
        Self::from_terms(it)
    }
}

impl<'a, K: Ord> IntoIterator for &'a Lin<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::int;

    #[test]
    fn zeros_are_pruned() {
        let mut l: Lin<u8> = Lin::term(1, int(2));
        l.add_term(1, int(-2));
        assert!(l.is_empty());
        l.add_term(3, int(0));
        assert!(l.is_empty());
    }
}

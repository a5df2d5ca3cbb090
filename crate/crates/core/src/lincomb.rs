//! Finite formal linear combinations with `Q(q)` coefficients.

use crate::coeff::RatQ;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    pub terms: BTreeMap<K, RatQ>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        let mut s = Self::new();
        s.terms.insert(k, RatQ::one());
        s
    }

    pub fn single(k: K, c: RatQ) -> Self {
        let mut s = Self::new();
        s.add_term(k, c);
        s
    }

    pub fn add_term(&mut self, k: K, c: RatQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                let nv = &*v + &c;
                if nv.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = nv;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &RatQ) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &o.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (k, v) in &o.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &RatQ::from_int(-1));
        r
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn scale(&self, c: &RatQ) -> Self {
        let mut r = Self::new();
        r.add_scaled(self, c);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> RatQ {
        self.terms.get(k).cloned().unwrap_or_else(RatQ::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &RatQ)> {
        self.terms.iter()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// If `self = c * other` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<RatQ> {
        let (k, v) = other.terms.iter().next()?;
        let c = self.coeff(k).checked_div(v).ok()?;
        if self.sub(&other.scale(&c)).is_zero() {
            Some(c)
        } else {
            None
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, RatQ)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, RatQ)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

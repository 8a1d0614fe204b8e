//! Sparse linear combinations with exact rational coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::rational::{fmt_q, Q};

/// A basis key that can be written out as JSON.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl<A: ToJson, B: ToJson> ToJson for (A, B) {
    fn to_json(&self) -> Value {
        json!([self.0.to_json(), self.1.to_json()])
    }
}

impl<A: ToJson, B: ToJson, C: ToJson> ToJson for (A, B, C) {
    fn to_json(&self) -> Value {
        json!([self.0.to_json(), self.1.to_json(), self.2.to_json()])
    }
}

impl<A: ToJson> ToJson for Vec<A> {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

/// Finite formal sum `Σ c_k · k`. Zero coefficients are never stored and
/// iteration follows the order of `K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Q::one())
    }

    pub fn term(k: K, c: Q) -> Self {
        let mut r = Self::zero();
        r.add_term(k, c);
        r
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Q)>>(it: I) -> Self {
        let mut r = Self::zero();
        for (k, c) in it {
            r.add_term(k, c);
        }
        r
    }

    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &-Q::one());
        r
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut r = Self::zero();
        r.add_scaled(self, s);
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn coeff(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Linear extension of a basis-level map.
    pub fn map<K2: Ord + Clone, F: FnMut(&K) -> LinComb<K2>>(&self, mut f: F) -> LinComb<K2> {
        let mut r = LinComb::zero();
        for (k, c) in &self.terms {
            r.add_scaled(&f(k), c);
        }
        r
    }

    pub fn map_keys<K2: Ord + Clone, F: FnMut(&K) -> K2>(&self, mut f: F) -> LinComb<K2> {
        LinComb::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Applies a linear form.
    pub fn eval<F: FnMut(&K) -> Q>(&self, mut f: F) -> Q {
        let mut r = Q::zero();
        for (k, c) in &self.terms {
            let v = f(k);
            if !v.is_zero() {
                r += c * v;
            }
        }
        r
    }
}

impl<K: Ord + Clone> IntoIterator for LinComb<K> {
    type Item = (K, Q);
    type IntoIter = btree_map::IntoIter<K, Q>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(it: I) -> Self {
        Self::from_terms(it)
    }
}

/// `Σ a_i b_j f(k_i, k_j)`.
pub fn bilinear_extend<K1, K2, K3, F>(a: &LinComb<K1>, b: &LinComb<K2>, mut f: F) -> LinComb<K3>
where
    K1: Ord + Clone,
    K2: Ord + Clone,
    K3: Ord + Clone,
    F: FnMut(&K1, &K2) -> LinComb<K3>,
{
    let mut r = LinComb::zero();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            r.add_scaled(&f(x, y), &(c * d));
        }
    }
    r
}

pub fn tensor<K1: Ord + Clone, K2: Ord + Clone>(a: &LinComb<K1>, b: &LinComb<K2>) -> LinComb<(K1, K2)> {
    bilinear_extend(a, b, |x, y| LinComb::basis((x.clone(), y.clone())))
}

impl<K: Ord + Clone + ToJson> LinComb<K> {
    /// `[{"coeff": "p/q", "key": ...}, ...]` in key order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| json!({"coeff": fmt_q(c), "key": k.to_json()}))
                .collect(),
        )
    }
}

impl<K: Ord + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{} {k}", fmt_q(&a))?;
            }
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (k, c) in &self.terms {
            m.entry(k, &fmt_q(c));
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn lc(ts: &[(&'static str, Q)]) -> LinComb<&'static str> {
        LinComb::from_terms(ts.iter().cloned())
    }

    #[test]
    fn add_cancels_and_sums() {
        assert!(lc(&[("x", q(1))]).add(&lc(&[("x", q(-1))])).is_zero());
        assert_eq!(lc(&[("x", frac(1, 2))]).add(&lc(&[("x", frac(1, 3))])), lc(&[("x", frac(5, 6))]));
        assert_eq!(lc(&[("x", q(1))]).add(&lc(&[("y", q(2))])), lc(&[("x", q(1)), ("y", q(2))]));
    }

    #[test]
    fn scale() {
        assert!(lc(&[("x", q(2))]).scale(&q(0)).is_zero());
        assert_eq!(lc(&[("x", q(2))]).scale(&frac(1, 2)), lc(&[("x", q(1))]));
        assert_eq!(
            lc(&[("x", q(1)), ("y", q(-1))]).scale(&q(-1)),
            lc(&[("x", q(-1)), ("y", q(1))])
        );
    }

    #[test]
    fn bilinear() {
        let t = tensor(&lc(&[("x", q(1))]), &lc(&[("y", q(1))]));
        assert_eq!(t, LinComb::basis(("x", "y")));
        assert!(tensor(&LinComb::<&str>::zero(), &lc(&[("y", q(1))])).is_zero());
    }
}

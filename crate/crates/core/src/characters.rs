//! Characters (multiplicative linear forms) of a connected double bialgebra:
//! the two convolutions, powers, inverses, the right action on morphisms and
//! the universal morphism to set compositions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::algebra::{coproduct_cached, delta_cached, DoubleBialgebra};
use crate::combinat::{subsets_of, LabelSet};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
pub use crate::rational::hilbert;
use crate::rational::Q;
use crate::setcomp::SetComposition;

type Eval<B> = dyn Fn(&B) -> Result<Q> + Send + Sync;

/// A linear form on the basis of `A`, memoized on basis keys. Most values of
/// this type are characters; differences such as `λ - ε` are not, and the
/// type does not enforce multiplicativity.
pub struct Character<A: DoubleBialgebra> {
    eval: Arc<Eval<A::B>>,
    memo: Arc<Mutex<HashMap<A::B, Q>>>,
}

impl<A: DoubleBialgebra> Clone for Character<A> {
    fn clone(&self) -> Self {
        Character { eval: self.eval.clone(), memo: self.memo.clone() }
    }
}

impl<A: DoubleBialgebra> Character<A> {
    pub fn try_new<F: Fn(&A::B) -> Result<Q> + Send + Sync + 'static>(f: F) -> Self {
        Character { eval: Arc::new(f), memo: Arc::new(Mutex::new(HashMap::new())) }
    }

    pub fn new<F: Fn(&A::B) -> Q + Send + Sync + 'static>(f: F) -> Self {
        Self::try_new(move |x| Ok(f(x)))
    }

    /// Evaluates `f` on connected factors and multiplies.
    pub fn from_connected<F: Fn(&A::B) -> Q + Send + Sync + 'static>(f: F) -> Self {
        Self::new(move |x| A::factors(x).iter().map(&f).product())
    }

    pub fn try_eval(&self, x: &A::B) -> Result<Q> {
        if let Some(v) = self.memo.lock().unwrap().get(x) {
            return Ok(v.clone());
        }
        let v = (self.eval)(x)?;
        self.memo.lock().unwrap().insert(x.clone(), v.clone());
        Ok(v)
    }

    /// Panics when the underlying rule fails; see [`Character::try_eval`].
    pub fn eval(&self, x: &A::B) -> Q {
        self.try_eval(x).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn eval_lc(&self, x: &LinComb<A::B>) -> Q {
        x.eval(|k| self.eval(k))
    }

    pub fn try_eval_lc(&self, x: &LinComb<A::B>) -> Result<Q> {
        let mut r = Q::zero();
        for (k, c) in x.iter() {
            r += c * self.try_eval(k)?;
        }
        Ok(r)
    }
}

/// Counit of `Δ`.
pub fn eps<A: DoubleBialgebra>() -> Character<A> {
    Character::new(A::eps)
}

/// Counit of `δ`.
pub fn eps_prime<A: DoubleBialgebra>() -> Character<A> {
    Character::new(A::eps_prime)
}

/// The character equal to 1 on every basis element.
pub fn ones<A: DoubleBialgebra>() -> Character<A> {
    Character::new(|_| Q::one())
}

pub fn sum<A: DoubleBialgebra>(a: &Character<A>, b: &Character<A>, sb: Q) -> Character<A> {
    let (a, b) = (a.clone(), b.clone());
    Character::try_new(move |x| Ok(a.try_eval(x)? + &sb * b.try_eval(x)?))
}

/// `(a * b)(x) = Σ_{I ⊆ ground} a(x_I) b(x_J)` over the terms of `Δ_{I,J}(x)`.
pub fn conv<A: DoubleBialgebra>(a: &Character<A>, b: &Character<A>) -> Character<A> {
    let (a, b) = (a.clone(), b.clone());
    Character::try_new(move |x| {
        let mut r = Q::zero();
        for ((l, rr), c) in coproduct_cached::<A>(x).iter() {
            let av = a.try_eval(l)?;
            if av.is_zero() {
                continue;
            }
            r += c * av * b.try_eval(rr)?;
        }
        Ok(r)
    })
}

/// `(a ⋆ b)(x)` over the terms of `δ(x)`.
pub fn star<A: DoubleBialgebra>(a: &Character<A>, b: &Character<A>) -> Character<A> {
    let (a, b) = (a.clone(), b.clone());
    Character::try_new(move |x| {
        let mut r = Q::zero();
        for ((l, rr), c) in delta_cached::<A>(x).iter() {
            let av = a.try_eval(l)?;
            if av.is_zero() {
                continue;
            }
            r += c * av * b.try_eval(rr)?;
        }
        Ok(r)
    })
}

/// All powers of one character, sharing the layers `(λ - ε)^{*n}`.
pub struct Powers<A: DoubleBialgebra> {
    layers: Arc<Mutex<Vec<Character<A>>>>,
    g: Character<A>,
}

impl<A: DoubleBialgebra> Clone for Powers<A> {
    fn clone(&self) -> Self {
        Powers { layers: self.layers.clone(), g: self.g.clone() }
    }
}

impl<A: DoubleBialgebra> Powers<A> {
    pub fn new(lambda: &Character<A>) -> Self {
        Powers { layers: Arc::new(Mutex::new(vec![eps::<A>()])), g: sum(lambda, &eps::<A>(), -Q::one()) }
    }

    fn upto(&self, n: usize) -> Vec<Character<A>> {
        let mut ls = self.layers.lock().unwrap();
        while ls.len() <= n {
            let next = conv(ls.last().unwrap(), &self.g);
            ls.push(next);
        }
        ls[..=n].to_vec()
    }

    /// `λ^q = Σ_n H_n(q) (λ - ε)^{*n}`, truncated at the size of the ground set.
    pub fn get(&self, q: &Q) -> Character<A> {
        let this = self.clone();
        let q = q.clone();
        Character::try_new(move |x| {
            let mut r = Q::zero();
            for (k, p) in this.upto(A::ground(x).len()).iter().enumerate() {
                let h = hilbert(k, &q);
                if !h.is_zero() {
                    r += h * p.try_eval(x)?;
                }
            }
            Ok(r)
        })
    }
}

pub fn power<A: DoubleBialgebra>(lambda: &Character<A>, q: &Q) -> Character<A> {
    Powers::new(lambda).get(q)
}

/// Inverse for `*`, i.e. `λ^{-1}`.
pub fn inverse_conv<A: DoubleBialgebra>(lambda: &Character<A>) -> Character<A> {
    power(lambda, &-Q::one())
}

fn inverse_star_at<A: DoubleBialgebra>(
    lambda: &Character<A>,
    x: &A::B,
    memo: &Mutex<HashMap<A::B, Q>>,
) -> Result<Q> {
    if let Some(v) = memo.lock().unwrap().get(x) {
        return Ok(v.clone());
    }
    // μ ⋆ λ = ε′, solved for μ(x): the only left leg equal to x carries the
    // discrete right leg; every other left leg has smaller degree.
    let mut diag = Q::zero();
    let mut rest = Q::zero();
    for ((l, r), c) in delta_cached::<A>(x).iter() {
        let lv = lambda.try_eval(r)?;
        if lv.is_zero() {
            continue;
        }
        if l == x {
            diag += c * lv;
        } else {
            if A::degree(l) >= A::degree(x) {
                return Err(Error::Domain(format!("{}: left leg of δ does not decrease degree", A::NAME)));
            }
            rest += c * lv * inverse_star_at(lambda, l, memo)?;
        }
    }
    if diag.is_zero() {
        return Err(Error::NotInvertible(format!(
            "character vanishes on the one-class factors of {x:?}"
        )));
    }
    let v = (A::eps_prime(x) - rest) / diag;
    memo.lock().unwrap().insert(x.clone(), v.clone());
    Ok(v)
}

/// Inverse for `⋆`. Evaluation fails with [`Error::NotInvertible`] when `λ`
/// vanishes on a one-class element met along the way.
pub fn inverse_star<A: DoubleBialgebra>(lambda: &Character<A>) -> Character<A> {
    let lambda = lambda.clone();
    let memo = Arc::new(Mutex::new(HashMap::new()));
    Character::try_new(move |x| inverse_star_at(&lambda, x, &memo))
}

/// `(φ ← λ)(x) = Σ λ(x″) φ(x′)` over the terms of `δ(x)`.
pub fn act_left<A, K, F>(phi: F, lambda: &Character<A>, x: &A::B) -> LinComb<K>
where
    A: DoubleBialgebra,
    K: Ord + Clone,
    F: Fn(&A::B) -> LinComb<K>,
{
    let mut r = LinComb::zero();
    for ((l, rr), c) in delta_cached::<A>(x).iter() {
        let v = lambda.eval(rr);
        if !v.is_zero() {
            r.add_scaled(&phi(l), &(c * v));
        }
    }
    r
}

/// The unique coalgebra morphism to set compositions with `ε′ ∘ φ = λ`:
/// `φ(x) = Σ λ^{⊗k}(Δ_{A_1,…,A_k}(x)) (A_1,…,A_k)`.
pub fn universal_to_comp<A: DoubleBialgebra>(lambda: &Character<A>, x: &A::B) -> LinComb<SetComposition> {
    let g = A::ground(x);
    if g.is_empty() {
        return LinComb::basis(SetComposition::unit()).scale(&lambda.eval(x));
    }
    let mut r = LinComb::zero();
    for first in subsets_of(&g) {
        if first.is_empty() {
            continue;
        }
        for ((l, rest), c) in A::split(x, &first) {
            let v = lambda.eval(&l);
            if v.is_zero() {
                continue;
            }
            let head = SetComposition::single(first.clone());
            let tail = universal_to_comp(lambda, &rest);
            r.add_scaled(&tail.map_keys(|t| head.concat(t)), &(c * v));
        }
    }
    r
}

/// `ε′ ∘ ψ` for a morphism to set compositions.
pub fn character_of<A, F>(psi: F) -> Character<A>
where
    A: DoubleBialgebra,
    F: Fn(&A::B) -> LinComb<SetComposition> + Send + Sync + 'static,
{
    Character::new(move |x| psi(x).eval(crate::setcomp::eps_prime))
}

/// Ground sets used by exhaustive checks: `{1..n}` as labels.
pub fn ground_of_size(n: usize) -> LabelSet {
    (1..=n).map(|i| i.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{BlockGraph, Gr};
    use crate::rational::q;
    use crate::setcomp::Comp;

    #[test]
    fn unit_laws() {
        let one = ones::<Gr>();
        let g = BlockGraph::of(&[&["a"]], &[]);
        assert_eq!(conv(&eps::<Gr>(), &one).eval(&g), q(1));
        assert_eq!(conv(&one, &one).eval(&g), q(2));
        let e = BlockGraph::of(&[&["a"], &["b"]], &[(0, 1)]);
        assert_eq!(star(&one, &one).eval(&e), q(2));
        let c = SetComposition::of(&[&["1"], &["2"]]);
        assert_eq!(conv(&eps_prime::<Comp>(), &eps_prime::<Comp>()).eval(&c), q(1));
    }

    #[test]
    fn powers_and_inverses() {
        let one = ones::<Gr>();
        let g = BlockGraph::of(&[&["a"], &["b"], &["c"]], &[(0, 1)]);
        assert_eq!(power(&one, &q(5)).eval(&g), q(125));
        assert_eq!(power(&one, &q(0)).eval(&g), q(0));
        let c = SetComposition::of(&[&["1"], &["2"]]);
        assert_eq!(power(&eps_prime::<Comp>(), &q(7)).eval(&c), hilbert(2, &q(7)));
        assert_eq!(inverse_star(&eps_prime::<Gr>()).eval(&g), q(0));
        let zero = Character::<Gr>::new(|_| Q::zero());
        assert!(matches!(inverse_star(&zero).try_eval(&g), Err(Error::NotInvertible(_))));
    }
}

//! The interface shared by the concrete twisted double bialgebras.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::combinat::{subsets_of, LabelSet};
use crate::lincomb::LinComb;
use crate::rational::Q;

/// A connected twisted double bialgebra with a combinatorial basis.
///
/// `split(x, I)` is `Δ_{I, ground(x) \ I}(x)`; `delta` is the internal coproduct
/// on the same ground set and `eps_prime` its counit.
pub trait DoubleBialgebra: 'static {
    type B: Clone + Ord + Hash + Debug + Send + Sync + 'static;

    const NAME: &'static str;

    fn ground(x: &Self::B) -> LabelSet;
    fn unit() -> Self::B;
    fn mul(x: &Self::B, y: &Self::B) -> LinComb<Self::B>;
    fn split(x: &Self::B, i: &LabelSet) -> LinComb<(Self::B, Self::B)>;
    fn delta(x: &Self::B) -> LinComb<(Self::B, Self::B)>;
    fn eps_prime(x: &Self::B) -> Q;
    /// Number of blocks or classes.
    fn degree(x: &Self::B) -> usize;
    /// Every basis element on the given ground set.
    fn basis_on(ground: &LabelSet) -> Vec<Self::B>;

    /// Factors of `x` for the product, when the product of basis elements is a basis element.
    fn factors(x: &Self::B) -> Vec<Self::B> {
        vec![x.clone()]
    }

    fn eps(x: &Self::B) -> Q {
        if Self::ground(x).is_empty() {
            Q::one()
        } else {
            Q::zero()
        }
    }
}

pub fn mul_lc<A: DoubleBialgebra>(a: &LinComb<A::B>, b: &LinComb<A::B>) -> LinComb<A::B> {
    crate::lincomb::bilinear_extend(a, b, |x, y| A::mul(x, y))
}

/// Grounds up to this size keep their coproducts in a process-wide cache.
const CACHE_GROUND: usize = 5;

type Pairs<B> = LinComb<(B, B)>;
type Cache<B> = HashMap<B, Arc<Pairs<B>>>;
type Caches = Mutex<HashMap<(TypeId, u8), Box<dyn Any + Send>>>;

fn cached<A: DoubleBialgebra>(slot: u8, x: &A::B, f: impl FnOnce() -> Pairs<A::B>) -> Arc<Pairs<A::B>> {
    if A::ground(x).len() > CACHE_GROUND {
        return Arc::new(f());
    }
    static CACHES: OnceLock<Caches> = OnceLock::new();
    let caches = CACHES.get_or_init(Default::default);
    let key = (TypeId::of::<A>(), slot);
    let lookup = |x: &A::B| {
        let mut guard = caches.lock().unwrap();
        let entry = guard.entry(key).or_insert_with(|| Box::new(Cache::<A::B>::new()));
        entry.downcast_mut::<Cache<A::B>>().expect("cache type").get(x).cloned()
    };
    if let Some(v) = lookup(x) {
        return v;
    }
    let v = Arc::new(f());
    let mut guard = caches.lock().unwrap();
    let entry = guard.get_mut(&key).expect("slot created above");
    entry.downcast_mut::<Cache<A::B>>().expect("cache type").insert(x.clone(), v.clone());
    v
}

/// `δ(x)`, cached for small grounds.
pub fn delta_cached<A: DoubleBialgebra>(x: &A::B) -> Arc<Pairs<A::B>> {
    cached::<A>(0, x, || A::delta(x))
}

/// `Σ_I Δ_{I, ground \ I}(x)`, cached for small grounds.
pub fn coproduct_cached<A: DoubleBialgebra>(x: &A::B) -> Arc<Pairs<A::B>> {
    cached::<A>(1, x, || {
        let mut r = LinComb::zero();
        for i in subsets_of(&A::ground(x)) {
            r.add_assign(&A::split(x, &i));
        }
        r
    })
}

//! Exhaustive identity checks on small instances. Each law walks its
//! instances by increasing ground-set size and stops at the first failure,
//! so the reported counterexample is a smallest one.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_traits::{One, Zero};

use crate::algebra::{delta_cached, DoubleBialgebra};
use crate::characters::{
    act_left, character_of, conv, eps, eps_prime, inverse_conv, inverse_star, ones, power, star, Powers, universal_to_comp,
    Character,
};
use crate::combinat::{subsets_of, LabelSet};
use crate::fock::{
    chromatic_polynomial, ehrhart_polynomial, h_morphism, h_morphism_lc, k_encode, k_encode_lc, khat_encode_lc,
    qsym_deconcat, qsym_delta, qsym_quasi_shuffle, theta_q_qsym, wqsym_delta, wqsym_quasi_shuffle, IntComposition,
    Polynomial,
};
use crate::graphs::{self, BlockGraph, Gr};
use crate::lincomb::LinComb;
use crate::rational::{factorial, frac, pow, q as qi, sign, Q};
use crate::setcomp::{self, Comp, SetComposition};
use crate::topology::{self, QuasiPoset, Top};

#[derive(Clone, Debug)]
pub struct LawReport {
    pub name: &'static str,
    pub checked: usize,
    pub failure: Option<String>,
    pub elapsed_ms: u128,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub struct Law {
    pub name: &'static str,
    pub run: fn(usize) -> Outcome,
}

/// Instances checked and the first counterexample, if any.
pub type Outcome = (usize, Option<String>);

fn scan<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(&T) -> Option<String>) -> Outcome {
    let mut n = 0;
    for it in items {
        n += 1;
        if let Some(msg) = f(&it) {
            return (n, Some(msg));
        }
    }
    (n, None)
}

fn same<T: PartialEq + Debug>(what: impl Debug, lhs: &T, rhs: &T) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(format!("at {what:?}: left = {lhs:?}, right = {rhs:?}"))
    }
}

fn memo<K: Hash + Eq + Clone, V: Clone>(f: impl Fn(&K) -> V) -> impl Fn(&K) -> V {
    let cache = RefCell::new(HashMap::new());
    move |k| {
        if let Some(v) = cache.borrow().get(k) {
            return V::clone(v);
        }
        let v = f(k);
        cache.borrow_mut().insert(k.clone(), v.clone());
        v
    }
}

/// `{"1", …, "n"}`.
pub fn ground(n: usize) -> LabelSet {
    (1..=n).map(|i| i.to_string()).collect()
}

pub fn basis_upto<A: DoubleBialgebra>(max: usize) -> Vec<A::B> {
    (0..=max).flat_map(|n| A::basis_on(&ground(n))).collect()
}

/// Pairs `(x, y)` with complementary grounds inside `{1..n}`, `n ≤ max`.
pub fn pairs_upto<A: DoubleBialgebra>(max: usize) -> Vec<(A::B, A::B)> {
    let mut out = Vec::new();
    for n in 0..=max {
        let g = ground(n);
        for i in subsets_of(&g) {
            let j: LabelSet = g.difference(&i).cloned().collect();
            for x in A::basis_on(&i) {
                for y in A::basis_on(&j) {
                    out.push((x.clone(), y));
                }
            }
        }
    }
    out
}

/// Ordered triples of disjoint label sets covering `{1..n}`.
fn three_parts(n: usize) -> Vec<(LabelSet, LabelSet, LabelSet)> {
    let g = ground(n);
    let mut out = Vec::new();
    for i in subsets_of(&g) {
        let rest: LabelSet = g.difference(&i).cloned().collect();
        for j in subsets_of(&rest) {
            let k = rest.difference(&j).cloned().collect();
            out.push((i.clone(), j, k));
        }
    }
    out
}

fn minus(a: &LabelSet, b: &LabelSet) -> LabelSet {
    a.difference(b).cloned().collect()
}

fn meet(a: &LabelSet, b: &LabelSet) -> LabelSet {
    a.intersection(b).cloned().collect()
}

fn split_lc<A: DoubleBialgebra>(x: &LinComb<A::B>, i: &LabelSet) -> LinComb<(A::B, A::B)> {
    x.map(|b| A::split(b, &meet(i, &A::ground(b))))
}

// ---------------------------------------------------------------- generic laws

fn delta_coassoc<A: DoubleBialgebra>(max: usize) -> Outcome {
    let items: Vec<(A::B, (LabelSet, LabelSet, LabelSet))> = (0..=max)
        .flat_map(|n| {
            let parts = three_parts(n);
            A::basis_on(&ground(n))
                .into_iter()
                .flat_map(move |x| parts.clone().into_iter().map(move |p| (x.clone(), p)))
        })
        .collect();
    scan(items, |(x, (i, j, _k))| {
        let ij: LabelSet = i.union(j).cloned().collect();
        let mut lhs = LinComb::zero();
        for ((u, w), c) in A::split(x, &ij) {
            for ((a, b), d) in A::split(&u, i) {
                lhs.add_term((a, b, w.clone()), &c * d);
            }
        }
        let mut rhs = LinComb::zero();
        for ((a, v), c) in A::split(x, i) {
            for ((b, w), d) in A::split(&v, j) {
                rhs.add_term((a.clone(), b, w), &c * d);
            }
        }
        same((x, i, j), &lhs, &rhs)
    })
}

fn delta_counit<A: DoubleBialgebra>(max: usize) -> Outcome {
    scan(basis_upto::<A>(max), |x| {
        let g = A::ground(x);
        same(x, &A::split(x, &LabelSet::new()), &LinComb::basis((A::unit(), x.clone())))
            .or_else(|| same(x, &A::split(x, &g), &LinComb::basis((x.clone(), A::unit()))))
    })
}

fn bialgebra_compat<A: DoubleBialgebra>(max: usize) -> Outcome {
    let items: Vec<((A::B, A::B), LabelSet)> = pairs_upto::<A>(max)
        .into_iter()
        .flat_map(|(x, y)| {
            let g: LabelSet = A::ground(&x).union(&A::ground(&y)).cloned().collect();
            subsets_of(&g).into_iter().map(move |i| ((x.clone(), y.clone()), i))
        })
        .collect();
    scan(items, |((x, y), i)| {
        let lhs = split_lc::<A>(&A::mul(x, y), i);
        let mut rhs = LinComb::zero();
        for ((x1, x2), c) in A::split(x, &meet(i, &A::ground(x))) {
            for ((y1, y2), d) in A::split(y, &meet(i, &A::ground(y))) {
                let l = A::mul(&x1, &y1);
                let r = A::mul(&x2, &y2);
                rhs.add_scaled(&crate::lincomb::tensor(&l, &r), &(&c * &d));
            }
        }
        same((x, y, i), &lhs, &rhs)
    })
}

fn internal_coassoc<A: DoubleBialgebra>(max: usize) -> Outcome {
    // Triple tensors get large; keys are interned to keep the comparison cheap.
    let names: RefCell<Vec<A::B>> = RefCell::new(Vec::new());
    let ids: RefCell<HashMap<A::B, usize>> = RefCell::new(HashMap::new());
    let id = |b: &A::B| {
        *ids.borrow_mut().entry(b.clone()).or_insert_with(|| {
            names.borrow_mut().push(b.clone());
            names.borrow().len() - 1
        })
    };
    scan(basis_upto::<A>(max), |x| {
        let mut lhs = LinComb::zero();
        let mut rhs = LinComb::zero();
        for ((a, b), c) in delta_cached::<A>(x).iter() {
            let (ia, ib) = (id(a), id(b));
            for ((a1, a2), d) in delta_cached::<A>(a).iter() {
                lhs.add_term((id(a1), id(a2), ib), c * d);
            }
            for ((b1, b2), d) in delta_cached::<A>(b).iter() {
                rhs.add_term((ia, id(b1), id(b2)), c * d);
            }
        }
        if lhs == rhs {
            return None;
        }
        let n = names.borrow();
        let back = |t: &LinComb<(usize, usize, usize)>| {
            t.map_keys(|&(p, q, r)| (n[p].clone(), n[q].clone(), n[r].clone()))
        };
        same(x, &back(&lhs), &back(&rhs))
    })
}

fn internal_counit<A: DoubleBialgebra>(max: usize) -> Outcome {
    scan(basis_upto::<A>(max), |x| {
        let d = A::delta(x);
        let left = d.map(|(a, b)| LinComb::term(b.clone(), A::eps_prime(a)));
        let right = d.map(|(a, b)| LinComb::term(a.clone(), A::eps_prime(b)));
        let id = LinComb::basis(x.clone());
        same(x, &left, &id).or_else(|| same(x, &right, &id))
    })
}

fn internal_multiplicative<A: DoubleBialgebra>(max: usize) -> Outcome {
    scan(pairs_upto::<A>(max), |(x, y)| {
        let lhs = A::mul(x, y).map(A::delta);
        let rhs = crate::lincomb::bilinear_extend(&A::delta(x), &A::delta(y), |(a, b), (c, d)| {
            crate::lincomb::tensor(&A::mul(a, c), &A::mul(b, d))
        });
        let e = A::mul(x, y).eval(A::eps_prime);
        same((x, y), &lhs, &rhs).or_else(|| same((x, y, "ε′"), &e, &(A::eps_prime(x) * A::eps_prime(y))))
    })
}

fn cointeraction<A: DoubleBialgebra>(max: usize) -> Outcome {
    let items: Vec<(A::B, LabelSet)> = (0..=max)
        .flat_map(|n| {
            let subs = subsets_of(&ground(n));
            A::basis_on(&ground(n))
                .into_iter()
                .flat_map(move |x| subs.clone().into_iter().map(move |i| (x.clone(), i)))
        })
        .collect();
    scan(items, |(x, i)| {
        let mut lhs = LinComb::zero();
        for ((x1, x2), c) in A::delta(x) {
            for ((p, q), d) in A::split(&x1, i) {
                lhs.add_term((p, q, x2.clone()), &c * d);
            }
        }
        let mut rhs = LinComb::zero();
        for ((xi, xj), c) in A::split(x, i) {
            for ((a, a2), d) in A::delta(&xi) {
                for ((b, b2), e) in A::delta(&xj) {
                    for (m, f) in A::mul(&a2, &b2) {
                        rhs.add_term((a.clone(), b.clone(), m), &c * &d * &e * f);
                    }
                }
            }
        }
        same((x, i), &lhs, &rhs)
    })
}

/// Double-bialgebra morphism to set compositions with `ε′ ∘ φ = ε′`.
fn double_morphism<A: DoubleBialgebra>(max: usize, phi: impl Fn(&A::B) -> LinComb<SetComposition>) -> Outcome {
    let phi = memo(phi);
    let comp_delta = memo(setcomp::internal_delta);
    let (n1, f) = scan(pairs_upto::<A>(max), |(x, y)| {
        let lhs = A::mul(x, y).map(&phi);
        let rhs = setcomp::quasi_shuffle_lc(&phi(x), &phi(y));
        same((x, y, "product"), &lhs, &rhs)
    });
    if f.is_some() {
        return (n1, f);
    }
    let (n2, f) = scan(basis_upto::<A>(max), |x| {
        let px = phi(x);
        for i in subsets_of(&A::ground(x)) {
            let lhs = px.map(|c| Comp::split(c, &i));
            let rhs = A::split(x, &i).map(|(a, b)| crate::lincomb::tensor(&phi(a), &phi(b)));
            if let Some(m) = same((x, &i, "Δ"), &lhs, &rhs) {
                return Some(m);
            }
        }
        let lhs = px.map(&comp_delta);
        let rhs = A::delta(x).map(|(a, b)| crate::lincomb::tensor(&phi(a), &phi(b)));
        same((x, "δ"), &lhs, &rhs).or_else(|| same((x, "ε′"), &px.eval(setcomp::eps_prime), &A::eps_prime(x)))
    });
    (n1 + n2, f)
}

// ---------------------------------------------------------------- characters

/// Characters used by the character-law checks.
pub trait SampleCharacters: DoubleBialgebra + Sized {
    fn samples() -> Vec<(&'static str, Character<Self>)>;
}

impl SampleCharacters for Comp {
    fn samples() -> Vec<(&'static str, Character<Comp>)> {
        vec![
            ("ε′", eps_prime()),
            ("ε′∘θ_2", Character::new(|c| setcomp::theta_q_basis(c, &qi(2)).eval(setcomp::eps_prime))),
            ("ε′∘θ_-1/2", Character::new(|c| setcomp::theta_q_basis(c, &frac(-1, 2)).eval(setcomp::eps_prime))),
        ]
    }
}

impl SampleCharacters for Gr {
    fn samples() -> Vec<(&'static str, Character<Gr>)> {
        vec![("ε′", eps_prime()), ("1", ones()), ("λ_ao", lambda_ao())]
    }
}

impl SampleCharacters for Top {
    fn samples() -> Vec<(&'static str, Character<Top>)> {
        vec![("ε′", eps_prime()), ("1", ones()), ("λ_ho", lambda_ho())]
    }
}

pub fn lambda_ao() -> Character<Gr> {
    Character::new(|g| qi(graphs::ao_count(g) as i64))
}

pub fn lambda_ho() -> Character<Top> {
    Character::new(topology::lambda_ho)
}

/// `λ_{chr_q}`: the character with `φ_{chr_q} = φ_1 ← λ_{chr_q}`.
pub fn lambda_chr_q(q: &Q) -> Character<Gr> {
    let q = q.clone();
    star(&inverse_star(&ones::<Gr>()), &character_of(move |g| graphs::phi_chr_q(g, &q)))
}

/// `λ_{ehr_q}`: the character with `φ_{ehr_q} = φ_1 ← λ_{ehr_q}`.
pub fn lambda_ehr_q(q: &Q) -> Character<Top> {
    let q = q.clone();
    star(&inverse_star(&lambda_ho()), &character_of(move |t| topology::phi_ehr_q(t, &q)))
}

fn phi_one_graph(g: &BlockGraph) -> LinComb<SetComposition> {
    graphs::phi_hom(g, &vec![Q::one(); g.ground().len().max(1)]).unwrap()
}

fn phi_one_top(t: &QuasiPoset) -> LinComb<SetComposition> {
    topology::phi_hom_top(t, &vec![Q::one(); t.ground().len().max(1)]).unwrap()
}

fn triples<T: Clone>(v: &[T]) -> Vec<(T, T, T)> {
    let mut out = Vec::new();
    for a in v {
        for b in v {
            for c in v {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

fn char_values<A: DoubleBialgebra>(
    max: usize,
    name: &str,
    f: &Character<A>,
    g: &Character<A>,
) -> Option<String> {
    for x in basis_upto::<A>(max) {
        let (a, b) = (f.try_eval(&x), g.try_eval(&x));
        if a != b {
            return Some(format!("{name} at {x:?}: left = {a:?}, right = {b:?}"));
        }
    }
    None
}

fn conv_group<A: SampleCharacters>(max: usize) -> Outcome {
    let s = A::samples();
    let e = eps::<A>();
    let mut n = 0;
    for (na, a) in &s {
        n += 1;
        let m = char_values(max, &format!("ε*{na}"), &conv(&e, a), a)
            .or_else(|| char_values(max, &format!("{na}*ε"), &conv(a, &e), a))
            .or_else(|| char_values(max, &format!("{na}^-1*{na}"), &conv(&inverse_conv(a), a), &e))
            .or_else(|| char_values(max, &format!("{na}*{na}^-1"), &conv(a, &inverse_conv(a)), &e));
        if m.is_some() {
            return (n, m);
        }
    }
    for ((na, a), (nb, b), (nc, c)) in triples(&s) {
        n += 1;
        let lhs = conv(&conv(&a, &b), &c);
        let rhs = conv(&a, &conv(&b, &c));
        if let Some(m) = char_values(max, &format!("({na}*{nb})*{nc}"), &lhs, &rhs) {
            return (n, Some(m));
        }
    }
    (n, None)
}

fn star_monoid<A: SampleCharacters>(max: usize) -> Outcome {
    let s = A::samples();
    let e = eps_prime::<A>();
    let mut n = 0;
    for (na, a) in &s {
        n += 1;
        let inv = inverse_star(a);
        let m = char_values(max, &format!("ε′⋆{na}"), &star(&e, a), a)
            .or_else(|| char_values(max, &format!("{na}⋆ε′"), &star(a, &e), a))
            .or_else(|| char_values(max, &format!("{na}^⋆-1⋆{na}"), &star(&inv, a), &e))
            .or_else(|| char_values(max, &format!("{na}⋆{na}^⋆-1"), &star(a, &inv), &e));
        if m.is_some() {
            return (n, m);
        }
    }
    for ((na, a), (nb, b), (nc, c)) in triples(&s) {
        n += 1;
        let assoc = char_values(
            max,
            &format!("({na}⋆{nb})⋆{nc}"),
            &star(&star(&a, &b), &c),
            &star(&a, &star(&b, &c)),
        );
        let dist = || {
            char_values(
                max,
                &format!("({na}*{nb})⋆{nc}"),
                &star(&conv(&a, &b), &c),
                &conv(&star(&a, &c), &star(&b, &c)),
            )
        };
        if let Some(m) = assoc.or_else(dist) {
            return (n, Some(m));
        }
    }
    (n, None)
}

const EXPONENTS: [(i64, i64); 3] = [(-1, 1), (1, 2), (2, 1)];

fn power_laws<A: SampleCharacters>(max: usize) -> Outcome {
    let qs: Vec<Q> = EXPONENTS.iter().map(|&(a, b)| frac(a, b)).collect();
    let mut n = 0;
    for (na, a) in A::samples() {
        let m = char_values(max, &format!("{na}^1"), &power(&a, &Q::one()), &a)
            .or_else(|| char_values(max, &format!("{na}^0"), &power(&a, &Q::zero()), &eps::<A>()));
        if m.is_some() {
            return (n, m);
        }
        let pw = Powers::new(&a);
        let cache = memo(|q: &Q| pw.get(q));
        for q in &qs {
            let aq = cache(q);
            let pq = Powers::new(&aq);
            for r in &qs {
                n += 1;
                let ar = cache(r);
                let m = char_values(max, &format!("{na}^{q}*{na}^{r}"), &conv(&aq, &ar), &cache(&(q + r)))
                    .or_else(|| char_values(max, &format!("({na}^{q})^{r}"), &pq.get(r), &cache(&(q * r))));
                if m.is_some() {
                    return (n, m);
                }
            }
            let (k, m) = scan(pairs_upto::<A>(max), |(x, y)| {
                same((&x, &y, na, q), &aq.eval_lc(&A::mul(x, y)), &(aq.eval(x) * aq.eval(y)))
            });
            n += k;
            if m.is_some() {
                return (n, m);
            }
        }
    }
    (n, None)
}

/// `ε′ ∘ (φ ← λ) = λ` and `universal_to_comp(λ) = φ ← λ` with `φ = universal_to_comp(ε′)`.
fn universal_bijection<A: SampleCharacters>(max: usize) -> Outcome {
    let e = eps_prime::<A>();
    let mut n = 0;
    for (na, lam) in A::samples() {
        let (k, m) = scan(basis_upto::<A>(max), |x| {
            let u = universal_to_comp(&lam, x);
            let acted = act_left(|y| universal_to_comp(&e, y), &lam, x);
            same((x, na), &u.eval(setcomp::eps_prime), &lam.eval(x)).or_else(|| same((x, na), &u, &acted))
        });
        n += k;
        if m.is_some() {
            return (n, m);
        }
    }
    (n, None)
}

/// `(Id ← λ) ← μ = Id ← (λ ⋆ μ)`.
fn action_law<A: SampleCharacters>(max: usize) -> Outcome {
    let s = A::samples();
    let mut n = 0;
    for (na, a) in &s {
        for (nb, b) in &s {
            let ab = star(a, b);
            let id = |y: &A::B| LinComb::basis(y.clone());
            let inner = memo(|y: &A::B| act_left(id, a, y));
            let (k, m) = scan(basis_upto::<A>(max), |x| {
                let lhs = act_left(&inner, b, x);
                let rhs = act_left(id, &ab, x);
                same((x, na, nb), &lhs, &rhs)
            });
            n += k;
            if m.is_some() {
                return (n, m);
            }
        }
    }
    (n, None)
}

// ---------------------------------------------------------------- Comp

fn disjoint_triples(max: usize) -> Vec<(SetComposition, SetComposition, SetComposition)> {
    let mut out = Vec::new();
    for n in 0..=max {
        for (i, j, k) in three_parts(n) {
            for a in setcomp::compositions_of(&i) {
                for b in setcomp::compositions_of(&j) {
                    for c in setcomp::compositions_of(&k) {
                        out.push((a.clone(), b.clone(), c));
                    }
                }
            }
        }
    }
    out
}

fn comp_products(max: usize) -> Outcome {
    let b = LinComb::basis;
    scan(disjoint_triples(max), |(x, y, z)| {
        let unit = SetComposition::unit();
        let mut out = None;
        for (name, p) in [
            ("⊎", setcomp::quasi_shuffle_lc as fn(&_, &_) -> _),
            ("⧢", setcomp::shuffle_lc as fn(&_, &_) -> _),
        ] {
            let m = same((x, y, z, name, "assoc"), &p(&p(&b(x.clone()), &b(y.clone())), &b(z.clone())), &p(&b(x.clone()), &p(&b(y.clone()), &b(z.clone()))))
                .or_else(|| same((x, y, name, "comm"), &p(&b(x.clone()), &b(y.clone())), &p(&b(y.clone()), &b(x.clone()))))
                .or_else(|| same((x, name, "unit"), &p(&b(x.clone()), &b(unit.clone())), &b(x.clone())));
            if m.is_some() {
                out = m;
                break;
            }
        }
        out
    })
}

fn comp_cont(max: usize) -> Outcome {
    scan(basis_upto::<Comp>(max), |c| {
        same(c, &setcomp::internal_delta(c), &setcomp::internal_delta_via_cont(c))
    })
}

fn comp_rho(max: usize) -> Outcome {
    let rho = |x: &LinComb<SetComposition>| x.map(setcomp::rho_iso);
    let (n1, f) = scan(pairs_upto::<Comp>(max), |(x, y)| {
        let lhs = rho(&setcomp::shuffle(x, y).unwrap());
        let rhs = setcomp::quasi_shuffle_lc(&setcomp::rho_iso(x), &setcomp::rho_iso(y));
        same((x, y), &lhs, &rhs)
    });
    if f.is_some() {
        return (n1, f);
    }
    let (n2, f) = scan(basis_upto::<Comp>(max), |x| {
        for i in subsets_of(&x.ground()) {
            let lhs = setcomp::rho_iso(x).map(|c| Comp::split(c, &i));
            let rhs = Comp::split(x, &i).map(|(a, b)| crate::lincomb::tensor(&setcomp::rho_iso(a), &setcomp::rho_iso(b)));
            if let Some(m) = same((x, &i), &lhs, &rhs) {
                return Some(m);
            }
        }
        None
    });
    (n1 + n2, f)
}

fn theta_values() -> Vec<Q> {
    vec![qi(-1), frac(1, 2), qi(2), qi(3)]
}

fn comp_theta(max: usize) -> Outcome {
    let qs = theta_values();
    let (n1, f) = scan(basis_upto::<Comp>(max), |x| {
        let b = LinComb::basis(x.clone());
        for q in &qs {
            for r in &qs {
                let lhs = setcomp::theta_q(&setcomp::theta_q(&b, r), q);
                if let Some(m) = same((x, q, r), &lhs, &setcomp::theta_q(&b, &(q * r))) {
                    return Some(m);
                }
            }
            for i in subsets_of(&x.ground()) {
                let lhs = setcomp::theta_q(&b, q).map(|c| Comp::split(c, &i));
                let rhs = Comp::split(x, &i).map(|(a, c)| {
                    crate::lincomb::tensor(&setcomp::theta_q_basis(a, q), &setcomp::theta_q_basis(c, q))
                });
                if let Some(m) = same((x, q, &i, "Δ"), &lhs, &rhs) {
                    return Some(m);
                }
            }
        }
        None
    });
    if f.is_some() {
        return (n1, f);
    }
    let (n2, f) = scan(pairs_upto::<Comp>(max), |(x, y)| {
        for q in &qs {
            let lhs = setcomp::theta_q(&setcomp::quasi_shuffle(x, y).unwrap(), q);
            let rhs = setcomp::quasi_shuffle_lc(&setcomp::theta_q_basis(x, q), &setcomp::theta_q_basis(y, q));
            if let Some(m) = same((x, y, q, "⊎"), &lhs, &rhs) {
                return Some(m);
            }
        }
        None
    });
    (n1 + n2, f)
}

/// `ε′^q = ε′ ∘ θ_q`.
fn comp_power_theta(max: usize) -> Outcome {
    let mut n = 0;
    for q in theta_values() {
        let p = power(&eps_prime::<Comp>(), &q);
        let q2 = q.clone();
        let t = Character::<Comp>::new(move |c| setcomp::theta_q_basis(c, &q2).eval(setcomp::eps_prime));
        n += 1;
        if let Some(m) = char_values(max, &format!("ε′^{q}"), &p, &t) {
            return (n, Some(m));
        }
    }
    (n, None)
}

fn comp_identity(max: usize) -> Outcome {
    let e = eps_prime::<Comp>();
    scan(basis_upto::<Comp>(max), |x| same(x, &universal_to_comp(&e, x), &LinComb::basis(x.clone())))
}

// ---------------------------------------------------------------- graphs

fn gr_phi_chr(max: usize) -> Outcome {
    let e = eps_prime::<Gr>();
    let (n1, f) = scan(basis_upto::<Gr>(max), |g| same(g, &universal_to_comp(&e, g), &graphs::phi_chr(g)));
    if f.is_some() {
        return (n1, f);
    }
    let (n2, f) = double_morphism::<Gr>(max, graphs::phi_chr);
    (n1 + n2, f)
}

fn gr_deletion_contraction(max: usize) -> Outcome {
    let qs = [qi(1), qi(2), qi(-1), frac(1, 2)];
    scan(basis_upto::<Gr>(max), |g| {
        for &e in g.edges() {
            let d = graphs::delete_edge(g, e).unwrap();
            let c = graphs::contract_edge(g, e).unwrap();
            for q in &qs {
                let rhs = graphs::phi_chr_q(&d, q).sub(&graphs::phi_chr_q(&c, q).scale(q));
                if let Some(m) = same((g, e, q), &graphs::phi_chr_q(g, q), &rhs) {
                    return Some(m);
                }
            }
        }
        None
    })
}

fn gr_ao(max: usize) -> Outcome {
    scan(basis_upto::<Gr>(max), |g| {
        let a = graphs::ao_count(g);
        let via_phi = graphs::phi_chr_q(g, &qi(-1)).eval(setcomp::eps_prime);
        same((g, "recursion"), &a, &graphs::ao_count_recursive(g)).or_else(|| same((g, "ε′∘φ_chr_-1"), &qi(a as i64), &via_phi))
    })
}

fn gr_chr_characters(max: usize) -> Outcome {
    let mut n = 0;
    for q in [qi(1), qi(2), qi(-1)] {
        let lam = lambda_chr_q(&q);
        let inv = inverse_star(&lam);
        let (k, m) = scan(basis_upto::<Gr>(max), |g| {
            let want = pow(&q, g.deg() as i64 - g.cc() as i64);
            same((g, &q, "λ_chr_q^⋆-1"), &inv.eval(g), &want).or_else(|| {
                let acted = act_left(phi_one_graph, &lam, g);
                same((g, &q, "φ_1←λ_chr_q"), &acted, &graphs::phi_chr_q(g, &q))
            })
        });
        n += k;
        if m.is_some() {
            return (n, m);
        }
    }
    let ao = lambda_ao();
    let inv = inverse_star(&ao);
    let (k, m) = scan(basis_upto::<Gr>(max), |g| {
        same((g, "λ_ao^⋆-1"), &inv.eval(g), &(sign(g.deg() + g.cc()) * ao.eval(g)))
    });
    (n + k, m)
}

fn gr_gamma(max: usize) -> Outcome {
    let ao = lambda_ao();
    scan(basis_upto::<Gr>(max), |g| {
        let b = LinComb::basis(g.clone());
        let gg = graphs::gamma(g).map(graphs::gamma_inv);
        let gg2 = graphs::gamma_inv(g).map(graphs::gamma);
        let acted = act_left(|x| LinComb::basis(x.clone()), &ao, g);
        let lhs = graphs::phi_chr_q(g, &qi(-1));
        let rhs = graphs::gamma(g).map(graphs::phi_chr);
        same((g, "Γ′∘Γ"), &gg, &b)
            .or_else(|| same((g, "Γ∘Γ′"), &gg2, &b))
            .or_else(|| same((g, "Id←λ_ao"), &acted, &graphs::gamma(g)))
            .or_else(|| same((g, "φ_chr_-1"), &lhs, &rhs))
    })
}

fn gr_phi_one(max: usize) -> Outcome {
    let one = ones::<Gr>();
    scan(basis_upto::<Gr>(max), |g| {
        same((g, "φ_1"), &universal_to_comp(&one, g), &phi_one_graph(g))
            .or_else(|| same((g, "φ_chr_0"), &graphs::phi_chr_q(g, &Q::zero()), &phi_one_graph(g)))
    })
}

// ---------------------------------------------------------------- topologies

fn top_phi_ehr(max: usize) -> Outcome {
    let e = eps_prime::<Top>();
    let (n1, f) = scan(basis_upto::<Top>(max), |t| same(t, &universal_to_comp(&e, t), &topology::phi_ehr(t)));
    if f.is_some() {
        return (n1, f);
    }
    let (n2, f) = double_morphism::<Top>(max, topology::phi_ehr);
    (n1 + n2, f)
}

fn top_weak(max: usize) -> Outcome {
    scan(basis_upto::<Top>(max), |t| {
        let p = topology::phi_ehr_q(t, &qi(-1));
        same((t, "L′"), &p, &topology::phi_weak(t)).or_else(|| same((t, "ε′"), &p.eval(setcomp::eps_prime), &Q::one()))
    })
}

fn top_heap_recursion(max: usize) -> Outcome {
    scan(basis_upto::<Top>(max).into_iter().filter(|t| t.cl() > 0), |t| {
        let n = t.cl();
        let mut lhs = Q::zero();
        for o in topology::open_sets(t) {
            if o.is_empty() || o.len() == n {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|i| !o.contains(i)).collect();
            let binom = factorial(n) / (factorial(o.len()) * factorial(rest.len()));
            let h = qi((topology::heap_order_count(&t.induced(&rest)) * topology::heap_order_count(&t.induced(&o))) as i64);
            lhs += binom * h;
        }
        let rhs = qi(((1i64 << n) - 2) * topology::heap_order_count(t) as i64);
        same(t, &lhs, &rhs)
    })
}

fn top_characters(max: usize) -> Outcome {
    let mut n = 0;
    for q in [qi(1), qi(2), qi(-1)] {
        let lam = lambda_ehr_q(&q);
        let inv = inverse_star(&lam);
        let (k, m) = scan(basis_upto::<Top>(max), |t| {
            let want = pow(&q, t.cl() as i64 - t.cc() as i64) * topology::lambda_ho(t);
            same((t, &q, "λ_ehr_q^⋆-1"), &inv.eval(t), &want).or_else(|| {
                let acted = act_left(phi_one_top, &lam, t);
                same((t, &q, "φ_1←λ_ehr_q"), &acted, &topology::phi_ehr_q(t, &q))
            })
        });
        n += k;
        if m.is_some() {
            return (n, m);
        }
    }
    let inv = inverse_star(&ones::<Top>());
    let ho = lambda_ho();
    let one = ones::<Top>();
    let (k, m) = scan(basis_upto::<Top>(max), |t| {
        same((t, "1^⋆-1"), &inv.eval(t), &sign(t.cl() + t.cc()))
            .or_else(|| same((t, "ε′∘φ_1"), &phi_one_top(t).eval(setcomp::eps_prime), &ho.eval(t)))
            .or_else(|| same((t, "universal(λ_ho)"), &universal_to_comp(&ho, t), &phi_one_top(t)))
            .or_else(|| same((t, "φ_ehr_0"), &topology::phi_ehr_q(t, &Q::zero()), &phi_one_top(t)))
            .or_else(|| same((t, "Id←1"), &act_left(|x| LinComb::basis(x.clone()), &one, t), &topology::gamma_top(t)))
    });
    (n + k, m)
}

fn top_gamma(max: usize) -> Outcome {
    scan(basis_upto::<Top>(max), |t| {
        let b = LinComb::basis(t.clone());
        let lhs = topology::phi_ehr_q(t, &qi(-1));
        let rhs = topology::gamma_top(t).map(topology::phi_ehr);
        same((t, "Γ⁻¹∘Γ"), &topology::gamma_top(t).map(topology::gamma_top_inv), &b)
            .or_else(|| same((t, "Γ∘Γ⁻¹"), &topology::gamma_top_inv(t).map(topology::gamma_top), &b))
            .or_else(|| same((t, "φ_ehr_-1"), &lhs, &rhs))
    })
}

fn joint_lc(a: &LinComb<QuasiPoset>, b: &LinComb<QuasiPoset>) -> LinComb<QuasiPoset> {
    crate::lincomb::bilinear_extend(a, b, |x, y| LinComb::basis(topology::joint_product(x, y).unwrap()))
}

fn top_cofree(max: usize) -> Outcome {
    let items: Vec<((QuasiPoset, QuasiPoset), LabelSet)> = pairs_upto::<Top>(max.min(4))
        .into_iter()
        .filter(|(x, y)| x.cl() <= 3 && y.cl() <= 3)
        .flat_map(|(x, y)| {
            let g: LabelSet = x.ground().union(&y.ground()).cloned().collect();
            subsets_of(&g).into_iter().map(move |i| ((x.clone(), y.clone()), i))
        })
        .collect();
    scan(items, |((x, y), i)| {
        let (ix, jy) = (x.ground(), y.ground());
        let all: LabelSet = ix.union(&jy).cloned().collect();
        let j = minus(&all, i);
        let lhs = Top::split(&topology::joint_product(x, y).unwrap(), i);
        let mut rhs = LinComb::zero();
        if ix.is_subset(i) {
            for ((y1, y2), c) in Top::split(y, &minus(i, &ix)) {
                rhs.add_term((topology::joint_product(x, &y1).unwrap(), y2), c);
            }
        } else if jy.is_subset(&j) {
            for ((x1, x2), c) in Top::split(x, i) {
                rhs.add_term((x1, topology::joint_product(&x2, y).unwrap()), c);
            }
        }
        same((x, y, i), &lhs, &rhs)
    })
}

fn top_joint_assoc(max: usize) -> Outcome {
    let mut items = Vec::new();
    for n in 0..=max.min(4) {
        for (i, j, k) in three_parts(n) {
            for a in topology::topologies_on(&i) {
                for b in topology::topologies_on(&j) {
                    for c in topology::topologies_on(&k) {
                        items.push((a.clone(), b.clone(), c));
                    }
                }
            }
        }
    }
    scan(items, |(a, b, c)| {
        let b1 = LinComb::basis;
        let lhs = joint_lc(&joint_lc(&b1(a.clone()), &b1(b.clone())), &b1(c.clone()));
        let rhs = joint_lc(&b1(a.clone()), &joint_lc(&b1(b.clone()), &b1(c.clone())));
        same((a, b, c), &lhs, &rhs).or_else(|| same(a, &topology::joint_product(a, &QuasiPoset::empty()).unwrap(), a))
    })
}

// ---------------------------------------------------------------- Fock images

fn int_compositions(max_len: usize, max_part: usize) -> Vec<IntComposition> {
    let mut out = vec![IntComposition::of(&[])];
    let mut layer = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for c in &layer {
            for p in 1..=max_part {
                let mut v = c.parts().to_vec();
                v.push(p);
                next.push(IntComposition::of(&v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn poly_at(p: &Polynomial, k: i64) -> Q {
    p.eval(&qi(k))
}

fn fock_h(max: usize) -> Outcome {
    let comps = int_compositions(max.min(4), 3);
    let pairs: Vec<(IntComposition, IntComposition)> = comps
        .iter()
        .flat_map(|a| comps.iter().map(move |b| (a.clone(), b.clone())))
        .filter(|(a, b)| a.len() + b.len() <= max.min(4))
        .collect();
    let (n1, f) = scan(pairs, |(a, b)| {
        same((a, b), &h_morphism_lc(&qsym_quasi_shuffle(a, b)), &h_morphism(a).mul(&h_morphism(b)))
    });
    if f.is_some() {
        return (n1, f);
    }
    let hm = memo(h_morphism);
    let (n2, f) = scan(comps, |c| {
        let h = hm(c);
        let legs = |x: LinComb<(IntComposition, IntComposition)>| -> Vec<(Polynomial, Polynomial, Q)> {
            x.iter().map(|((a, b), q)| (hm(a), hm(b), q.clone())).collect()
        };
        let (dec, del) = (legs(qsym_deconcat(c)), legs(qsym_delta(c)));
        let pair_sum = |v: &[(Polynomial, Polynomial, Q)], k, l| -> Q {
            v.iter().map(|(a, b, q)| q * poly_at(a, k) * poly_at(b, l)).sum()
        };
        for k in 0..=5 {
            for l in 0..=5 {
                let dl = pair_sum(&dec, k, l);
                if let Some(m) = same((c, k, l, "Δ"), &poly_at(&h, k + l), &dl) {
                    return Some(m);
                }
                let dd = pair_sum(&del, k, l);
                if let Some(m) = same((c, k, l, "δ"), &poly_at(&h, k * l), &dd) {
                    return Some(m);
                }
            }
        }
        let e = if c.len() <= 1 { Q::one() } else { Q::zero() };
        same((c, "ε′"), &poly_at(&h, 1), &e).or_else(|| {
            for q in theta_values() {
                let lhs = h_morphism_lc(&theta_q_qsym(c, &q));
                if let Some(m) = same((c, &q, "Θ_q"), &lhs, &h.scale_var(&q)) {
                    return Some(m);
                }
            }
            None
        })
    });
    (n1 + n2, f)
}

/// Coproducts of QSym satisfy the cointeraction law.
fn fock_qsym_cointeraction(max: usize) -> Outcome {
    scan(int_compositions(max.min(4), 2), |c| {
        let mut lhs = LinComb::zero();
        for ((a, b), x) in qsym_delta(c) {
            for ((p, q), y) in qsym_deconcat(&a) {
                lhs.add_term((p, q, b.clone()), &x * y);
            }
        }
        let mut rhs = LinComb::zero();
        for ((l, r), x) in qsym_deconcat(c) {
            for ((a, a2), y) in qsym_delta(&l) {
                for ((b, b2), z) in qsym_delta(&r) {
                    for (m, w) in qsym_quasi_shuffle(&a2, &b2) {
                        rhs.add_term((a.clone(), b.clone(), m), &x * &y * &z * w);
                    }
                }
            }
        }
        same(c, &lhs, &rhs)
    })
}

/// `K` and `K̂` intertwine the species-level and graded structures.
fn fock_images(max: usize) -> Outcome {
    let (n1, f) = scan(basis_upto::<Comp>(max), |c| {
        let w = k_encode(c).unwrap();
        let lhs = wqsym_delta(&w);
        let rhs = setcomp::internal_delta(c).map_keys(|(a, b)| (k_encode(a).unwrap(), k_encode(b).unwrap()));
        let hat = khat_encode_lc(&LinComb::basis(c.clone()));
        let hat_d = setcomp::internal_delta(c).map_keys(|(a, b)| (crate::fock::khat_encode(a), crate::fock::khat_encode(b)));
        let qd = hat.map(qsym_delta);
        same((c, "K δ"), &lhs, &rhs).or_else(|| same((c, "K̂ δ"), &qd, &hat_d))
    });
    if f.is_some() {
        return (n1, f);
    }
    let mut items = Vec::new();
    for n in 0..=max {
        for k in 0..=n {
            let left: LabelSet = (1..=k).map(|i| i.to_string()).collect();
            let right: LabelSet = (k + 1..=n).map(|i| i.to_string()).collect();
            for a in setcomp::compositions_of(&left) {
                for b in setcomp::compositions_of(&right) {
                    items.push((a.clone(), b));
                }
            }
        }
    }
    let (n2, f) = scan(items, |(a, b)| {
        let p = setcomp::quasi_shuffle(a, b).unwrap();
        let wa = k_encode(a).unwrap();
        // b lives on {k+1..n}; shift it down to {1..n-k}.
        let bw = word_on_positions(b, a.ground().len());
        let lhs = k_encode_lc(&p).unwrap();
        let rhs = wqsym_quasi_shuffle(&wa, &bw);
        let hat = khat_encode_lc(&p);
        let hrhs = qsym_quasi_shuffle(&crate::fock::khat_encode(a), &crate::fock::khat_encode(b));
        same((a, b, "K ⊎"), &lhs, &rhs).or_else(|| same((a, b, "K̂ ⊎"), &hat, &hrhs))
    });
    (n1 + n2, f)
}

fn word_on_positions(b: &SetComposition, shift: usize) -> crate::fock::PackedWord {
    let relabeled = SetComposition::new(
        b.blocks()
            .iter()
            .map(|blk| blk.iter().map(|l| (l.parse::<usize>().unwrap() - shift).to_string()).collect())
            .collect(),
    )
    .unwrap();
    k_encode(&relabeled).unwrap()
}

fn duality(max: usize) -> Outcome {
    let qs = [qi(-1), qi(2), frac(1, 2), frac(-3, 2)];
    let (n1, f) = scan(basis_upto::<Gr>(max), |g| {
        let p1 = chromatic_polynomial(g, &Q::one());
        for q in &qs {
            let want = p1.scale_var(&q.recip()).scale(&pow(q, g.deg() as i64));
            if let Some(m) = same((g, q), &chromatic_polynomial(g, q), &want) {
                return Some(m);
            }
        }
        None
    });
    if f.is_some() {
        return (n1, f);
    }
    let (n2, f) = scan(basis_upto::<Top>(max), |t| {
        let p1 = ehrhart_polynomial(t, &Q::one());
        for q in &qs {
            let want = p1.scale_var(&q.recip()).scale(&pow(q, t.cl() as i64));
            if let Some(m) = same((t, q), &ehrhart_polynomial(t, q), &want) {
                return Some(m);
            }
        }
        None
    });
    (n1 + n2, f)
}

fn polynomial_expansions(max: usize) -> Outcome {
    let chr1 = lambda_chr_q(&Q::one());
    let ehr1 = lambda_ehr_q(&Q::one());
    let qs = [qi(1), qi(2), frac(-1, 3)];
    let (n1, f) = scan(basis_upto::<Gr>(max), |g| {
        let mut p = Polynomial::zero();
        for e in graphs::admissible_equivalences(g) {
            let r = graphs::restrict_classes(g, &e).unwrap();
            p = p.add(&Polynomial::monomial(e.len()).scale(&chr1.eval(&r)));
        }
        let m = same((g, "Σ λ_chr_1 X^cl"), &chromatic_polynomial(g, &Q::one()), &p);
        m.or_else(|| {
            for q in &qs {
                let u = vec![q.clone(); g.ground().len().max(1)];
                let lhs = h_morphism_lc(&khat_encode_lc(&graphs::phi_hom(g, &u).unwrap()));
                let rhs = Polynomial::monomial(g.deg()).scale(&pow(q, g.deg() as i64));
                if let Some(m) = same((g, q, "H∘K̂∘φ_q"), &lhs, &rhs) {
                    return Some(m);
                }
            }
            None
        })
    });
    if f.is_some() {
        return (n1, f);
    }
    let (n2, f) = scan(basis_upto::<Top>(max), |t| {
        let mut p = Polynomial::zero();
        for e in topology::compatible_equivalences(t) {
            let r = topology::restriction(t, &e).unwrap();
            let quo = topology::quotient(t, &e).unwrap();
            p = p.add(&Polynomial::monomial(e.len()).scale(&(ehr1.eval(&r) * topology::lambda_ho(&quo))));
        }
        let m = same((t, "Σ λ_ehr_1 λ_ho X^cl"), &ehrhart_polynomial(t, &Q::one()), &p);
        m.or_else(|| {
            for q in &qs {
                let u = vec![q.clone(); t.ground().len().max(1)];
                let lhs = h_morphism_lc(&khat_encode_lc(&topology::phi_hom_top(t, &u).unwrap()));
                let rhs = Polynomial::monomial(t.cl()).scale(&(pow(q, t.cl() as i64) * topology::lambda_ho(t)));
                if let Some(m) = same((t, q, "H∘K̂∘φ_q"), &lhs, &rhs) {
                    return Some(m);
                }
            }
            None
        })
    });
    (n1 + n2, f)
}

// ---------------------------------------------------------------- registry

macro_rules! generic {
    ($alg:ty, $prefix:literal) => {
        [
            Law { name: concat!($prefix, ": Δ coassociative"), run: delta_coassoc::<$alg> },
            Law { name: concat!($prefix, ": Δ counit"), run: delta_counit::<$alg> },
            Law { name: concat!($prefix, ": Δ compatible with product"), run: bialgebra_compat::<$alg> },
            Law { name: concat!($prefix, ": δ coassociative"), run: internal_coassoc::<$alg> },
            Law { name: concat!($prefix, ": δ counit ε′"), run: internal_counit::<$alg> },
            Law { name: concat!($prefix, ": δ and ε′ multiplicative"), run: internal_multiplicative::<$alg> },
            Law { name: concat!($prefix, ": cointeraction of Δ and δ"), run: cointeraction::<$alg> },
            Law { name: concat!($prefix, ": * group laws"), run: conv_group::<$alg> },
            Law { name: concat!($prefix, ": ⋆ monoid and distributivity"), run: star_monoid::<$alg> },
            Law { name: concat!($prefix, ": power exponent laws"), run: power_laws::<$alg> },
            Law { name: concat!($prefix, ": universal morphism round trip"), run: universal_bijection::<$alg> },
            Law { name: concat!($prefix, ": ← is an action"), run: action_law::<$alg> },
        ]
    };
}

pub fn registry() -> Vec<Law> {
    let mut v: Vec<Law> = Vec::new();
    v.extend(generic!(Comp, "Comp"));
    v.extend([
        Law { name: "Comp: ⊎ and ⧢ associative, commutative, unital", run: comp_products },
        Law { name: "Comp: δ via cont_k equals cut-point formula", run: comp_cont },
        Law { name: "Comp: ρ intertwines ⧢ with ⊎ and commutes with Δ", run: comp_rho },
        Law { name: "Comp: θ_q∘θ_r = θ_qr, θ_q bialgebra endomorphism", run: comp_theta },
        Law { name: "Comp: ε′^q = ε′∘θ_q", run: comp_power_theta },
        Law { name: "Comp: universal morphism of ε′ is the identity", run: comp_identity },
    ]);
    v.extend(generic!(Gr, "Gr'"));
    v.extend([
        Law { name: "Gr': φ_chr universal and double morphism", run: gr_phi_chr },
        Law { name: "Gr': deletion-contraction for φ_chr_q", run: gr_deletion_contraction },
        Law { name: "Gr': acyclic orientations three ways", run: gr_ao },
        Law { name: "Gr': λ_chr_q and λ_ao inverses", run: gr_chr_characters },
        Law { name: "Gr': Γ, Γ′ inverse; φ_chr_-1 = φ_chr∘Γ", run: gr_gamma },
        Law { name: "Gr': φ_1 from the constant character", run: gr_phi_one },
    ]);
    v.extend(generic!(Top, "Top"));
    v.extend([
        Law { name: "Top: φ_ehr universal and double morphism", run: top_phi_ehr },
        Law { name: "Top: φ_ehr_-1 sums weak extensions, ε′ = 1", run: top_weak },
        Law { name: "Top: heap-order recursion (2^cl - 2) ho", run: top_heap_recursion },
        Law { name: "Top: λ_ehr_q, constant and λ_ho characters", run: top_characters },
        Law { name: "Top: Γ and inverse; φ_ehr_-1 = φ_ehr∘Γ", run: top_gamma },
        Law { name: "Top: cofreeness criterion for ⊛", run: top_cofree },
        Law { name: "Top: ⊛ associative with unit", run: top_joint_assoc },
    ]);
    v.extend([
        Law { name: "Fock: H morphism and Θ_q square", run: fock_h },
        Law { name: "Fock: QSym cointeraction", run: fock_qsym_cointeraction },
        Law { name: "Fock: K and K̂ intertwine products and δ", run: fock_images },
        Law { name: "Fock: duality principle for P_chr_q and P_ehr_q", run: duality },
        Law { name: "Fock: polynomial expansions over equivalences", run: polynomial_expansions },
    ]);
    v
}

/// Runs every law on grounds of size `≤ max` on a pool of worker threads.
/// Reports come back in registry order.
pub fn run_all(max: usize) -> Vec<LawReport> {
    let laws = registry();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(laws.len());
    let slots: Vec<Mutex<Option<LawReport>>> = laws.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(law) = laws.get(k) else { break };
                let t = Instant::now();
                let (checked, failure) = (law.run)(max);
                let r = LawReport { name: law.name, checked, failure, elapsed_ms: t.elapsed().as_millis() };
                *slots[k].lock().unwrap() = Some(r);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().expect("every law ran")).collect()
}

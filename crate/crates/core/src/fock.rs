//! Graded shadows of the species-level algebras: packed words, integer
//! compositions and one-variable polynomials, together with the chromatic and
//! Ehrhart polynomials and isomorphism-class keys for small instances.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::combinat::{fibers, max_or_zero, permutations};
use crate::error::{Error, Result};
use crate::graphs::{phi_chr_q, BlockGraph};
use crate::lincomb::{LinComb, ToJson};
use crate::rational::{factorial, fmt_q, hilbert, q as qi, Q};
use crate::setcomp::{
    enumerate_cont, enumerate_qsh, internal_delta_via_cont, segmentations, theta_q_basis,
    SetComposition,
};
use crate::topology::{phi_ehr_q, QuasiPoset};

/// Word over `1..=max` using every value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackedWord(Vec<usize>);

impl PackedWord {
    pub fn new(w: Vec<usize>) -> Result<Self> {
        let m = max_or_zero(&w);
        let mut seen = vec![false; m + 1];
        for &x in &w {
            if x == 0 {
                return Err(Error::Domain("packed words use positive letters".into()));
            }
            seen[x] = true;
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Domain(format!("word {w:?} is not packed")));
        }
        Ok(PackedWord(w))
    }

    pub fn of(w: &[usize]) -> Self {
        Self::new(w.to_vec()).expect("packed word")
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn max(&self) -> usize {
        max_or_zero(&self.0)
    }

    /// The set composition of `{1..n}` whose `i`-th block holds the positions of letter `i`.
    pub fn to_setcomp(&self) -> SetComposition {
        SetComposition::new(
            fibers(&self.0)
                .into_iter()
                .map(|f| f.into_iter().map(|p| (p + 1).to_string()).collect())
                .collect(),
        )
        .expect("fibers are disjoint")
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.max() > 9 { "," } else { "" };
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(sep))
    }
}

impl fmt::Debug for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl ToJson for PackedWord {
    fn to_json(&self) -> Value {
        json!(self.0)
    }
}

/// Sequence of positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntComposition(Vec<usize>);

impl IntComposition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("composition parts must be positive".into()));
        }
        Ok(IntComposition(parts))
    }

    pub fn of(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("positive parts")
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for IntComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for IntComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl ToJson for IntComposition {
    fn to_json(&self) -> Value {
        json!(self.0)
    }
}

/// Dense polynomial in `X`, coefficients from low to high degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial(Vec<Q>);

impl Polynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    pub fn zero() -> Self {
        Polynomial(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `X`.
    pub fn x() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Self::new(r)
    }

    /// `X^n`.
    pub fn monomial(n: usize) -> Self {
        let mut v = vec![Q::zero(); n + 1];
        v[n] = Q::one();
        Self::new(v)
    }

    /// `H_n(X) = X(X-1)...(X-n+1)/n!`.
    pub fn hilbert(n: usize) -> Self {
        let mut p = Self::constant(Q::one());
        for i in 0..n {
            p = p.mul(&Self::new(vec![qi(-(i as i64)), Q::one()]));
        }
        p.scale(&factorial(n).recip())
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut r = Q::zero();
        for c in self.0.iter().rev() {
            r = r * x + c;
        }
        r
    }

    /// `Θ_q`: `P(X) ↦ P(qX)`.
    pub fn scale_var(&self, q: &Q) -> Self {
        let mut f = Q::one();
        let mut v = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            v.push(c * &f);
            f *= q;
        }
        Self::new(v)
    }

    pub fn to_json(&self) -> Value {
        json!({"coeffs": self.0.iter().map(fmt_q).collect::<Vec<_>>()})
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            if i == 0 {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{} {mono}", fmt_q(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Packed word of a set composition of `{1..n}`: letter `i` is the index of the block holding `i`.
pub fn k_encode(c: &SetComposition) -> Result<PackedWord> {
    let n = c.ground().len();
    let mut w = vec![0; n];
    for (k, b) in c.blocks().iter().enumerate() {
        for l in b {
            let i: usize = l
                .parse()
                .ok()
                .filter(|&i| (1..=n).contains(&i))
                .ok_or_else(|| Error::Domain(format!("label {l:?} is not in 1..{n}")))?;
            w[i - 1] = k + 1;
        }
    }
    if w.contains(&0) {
        return Err(Error::Domain(format!("ground set is not 1..{n}")));
    }
    PackedWord::new(w)
}

pub fn k_encode_lc(x: &LinComb<SetComposition>) -> Result<LinComb<PackedWord>> {
    let mut r = LinComb::zero();
    for (c, a) in x.iter() {
        r.add_term(k_encode(c)?, a.clone());
    }
    Ok(r)
}

/// Block sizes.
pub fn khat_encode(c: &SetComposition) -> IntComposition {
    IntComposition(c.block_sizes())
}

pub fn khat_encode_lc(x: &LinComb<SetComposition>) -> LinComb<IntComposition> {
    x.map_keys(khat_encode)
}

pub fn wqsym_quasi_shuffle(u: &PackedWord, v: &PackedWord) -> LinComb<PackedWord> {
    let (mu, mv) = (u.max(), v.max());
    let w: Vec<usize> = u.0.iter().copied().chain(v.0.iter().map(|x| x + mu)).collect();
    LinComb::from_terms(
        enumerate_qsh(mu, mv)
            .into_iter()
            .map(|s| (PackedWord(w.iter().map(|&x| s[x - 1]).collect()), Q::one())),
    )
}

fn pack(w: &[usize]) -> PackedWord {
    let mut vals: Vec<usize> = w.to_vec();
    vals.sort();
    vals.dedup();
    PackedWord(w.iter().map(|x| vals.binary_search(x).unwrap() + 1).collect())
}

/// Cuts by value: letters `≤ k` go left, the others right, both repacked.
pub fn wqsym_deconcat(u: &PackedWord) -> LinComb<(PackedWord, PackedWord)> {
    LinComb::from_terms((0..=u.max()).map(|k| {
        let l: Vec<usize> = u.0.iter().copied().filter(|&x| x <= k).collect();
        let r: Vec<usize> = u.0.iter().copied().filter(|&x| x > k).collect();
        ((pack(&l), pack(&r)), Q::one())
    }))
}

/// Internal coproduct on packed words, read through set compositions of `{1..n}`.
pub fn wqsym_delta(u: &PackedWord) -> LinComb<(PackedWord, PackedWord)> {
    internal_delta_via_cont(&u.to_setcomp()).map_keys(|(a, b)| {
        (
            k_encode(a).expect("ground is 1..n"),
            k_encode(b).expect("ground is 1..n"),
        )
    })
}

fn merge_sums(sigma: &[usize], c: &[usize]) -> IntComposition {
    IntComposition(fibers(sigma).iter().map(|f| f.iter().map(|&j| c[j]).sum()).collect())
}

pub fn qsym_quasi_shuffle(a: &IntComposition, b: &IntComposition) -> LinComb<IntComposition> {
    let ab: Vec<usize> = a.0.iter().chain(b.0.iter()).copied().collect();
    LinComb::from_terms(
        enumerate_qsh(a.len(), b.len())
            .into_iter()
            .map(|s| (merge_sums(&s, &ab), Q::one())),
    )
}

pub fn qsym_deconcat(c: &IntComposition) -> LinComb<(IntComposition, IntComposition)> {
    LinComb::from_terms((0..=c.len()).map(|i| {
        (
            (IntComposition(c.0[..i].to_vec()), IntComposition(c.0[i..].to_vec())),
            Q::one(),
        )
    }))
}

pub fn qsym_delta(c: &IntComposition) -> LinComb<(IntComposition, IntComposition)> {
    LinComb::from_terms(
        enumerate_cont(c.len())
            .into_iter()
            .map(|(s, t)| ((merge_sums(&s, &c.0), merge_sums(&t, &c.0)), Q::one())),
    )
}

/// `H(a_1,…,a_n) = H_n(X)`.
pub fn h_morphism(c: &IntComposition) -> Polynomial {
    Polynomial::hilbert(c.len())
}

pub fn h_morphism_lc(x: &LinComb<IntComposition>) -> Polynomial {
    let mut p = Polynomial::zero();
    for (c, a) in x.iter() {
        p = p.add(&h_morphism(c).scale(a));
    }
    p
}

/// `K̂(θ_q)`: merged runs weighted by products of `H_len(q)`.
pub fn theta_q_qsym(c: &IntComposition, q: &Q) -> LinComb<IntComposition> {
    let mut r = LinComb::zero();
    for lens in segmentations(c.len()) {
        let mut parts = Vec::new();
        let mut w = Q::one();
        let mut p = 0;
        for &l in &lens {
            parts.push(c.0[p..p + l].iter().sum());
            w *= hilbert(l, q);
            p += l;
        }
        r.add_term(IntComposition(parts), w);
    }
    r
}

pub fn theta_q_wqsym(u: &PackedWord, q: &Q) -> LinComb<PackedWord> {
    theta_q_basis(&u.to_setcomp(), q).map_keys(|c| k_encode(c).expect("ground is 1..n"))
}

/// `P_{chr_q}(G) = H ∘ K̂ ∘ φ_{chr_q}(G)`.
pub fn chromatic_polynomial(g: &BlockGraph, q: &Q) -> Polynomial {
    h_morphism_lc(&khat_encode_lc(&phi_chr_q(g, q)))
}

/// `P_{ehr_q}(T) = H ∘ K̂ ∘ φ_{ehr_q}(T)`.
pub fn ehrhart_polynomial(t: &QuasiPoset, q: &Q) -> Polynomial {
    h_morphism_lc(&khat_encode_lc(&phi_ehr_q(t, q)))
}

pub fn poly_eval(p: &Polynomial, x: &Q) -> Q {
    p.eval(x)
}

pub fn poly_scale_var(p: &Polynomial, q: &Q) -> Polynomial {
    p.scale_var(q)
}

/// Largest instance accepted by [`canonical_graph`] and [`canonical_poset`].
pub const CANON_CAP: usize = 8;

/// Isomorphism-class key: block or class sizes plus relation pairs, minimized
/// over every relabeling of the vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey {
    pub sizes: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

fn minimize(sizes: &[usize], pairs: &[(usize, usize)], symmetric: bool) -> Result<ClassKey> {
    let n = sizes.len();
    if n > CANON_CAP {
        return Err(Error::Capacity(format!("{n} vertices, at most {CANON_CAP} supported")));
    }
    let mut best: Option<ClassKey> = None;
    for p in permutations(n) {
        // p[new] = old
        let mut pos = vec![0; n];
        for (new, &old) in p.iter().enumerate() {
            pos[old] = new;
        }
        let s: Vec<usize> = p.iter().map(|&o| sizes[o]).collect();
        if best.as_ref().is_some_and(|b| s > b.sizes) {
            continue;
        }
        let mut ps: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (pos[a], pos[b]);
                if symmetric {
                    (x.min(y), x.max(y))
                } else {
                    (x, y)
                }
            })
            .collect();
        ps.sort();
        let k = ClassKey { sizes: s, pairs: ps };
        if best.as_ref().is_none_or(|b| &k < b) {
            best = Some(k);
        }
    }
    Ok(best.expect("at least one permutation"))
}

pub fn canonical_graph(g: &BlockGraph) -> Result<ClassKey> {
    let sizes: Vec<usize> = g.blocks().iter().map(|b| b.len()).collect();
    let pairs: Vec<(usize, usize)> = g.edges().iter().copied().collect();
    minimize(&sizes, &pairs, true)
}

pub fn canonical_poset(t: &QuasiPoset) -> Result<ClassKey> {
    let sizes: Vec<usize> = t.classes().iter().map(|b| b.len()).collect();
    let pairs: Vec<(usize, usize)> = t.covers().iter().copied().collect();
    minimize(&sizes, &pairs, false)
}

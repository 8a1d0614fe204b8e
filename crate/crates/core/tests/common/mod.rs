#![allow(dead_code)]

use std::fmt::Debug;

use hopfspecies::combinat::LabelSet;
use hopfspecies::fock::{IntComposition, PackedWord, Polynomial};
use hopfspecies::graphs::BlockGraph;
use hopfspecies::rational::{frac, q};
use hopfspecies::setcomp::SetComposition;
use hopfspecies::topology::QuasiPoset;
use hopfspecies::{LinComb, Q};

pub fn set(s: &str) -> LabelSet {
    s.chars().map(|c| c.to_string()).collect()
}

/// `"A|BC"` is the composition `({A},{B,C})`; `""` is the empty one.
pub fn c(s: &str) -> SetComposition {
    if s.is_empty() {
        return SetComposition::unit();
    }
    SetComposition::new(s.split('|').map(set).collect()).unwrap()
}

pub fn gr(blocks: &[&str], edges: &[(usize, usize)]) -> BlockGraph {
    BlockGraph::new(blocks.iter().map(|b| set(b)).collect(), edges.iter().copied()).unwrap()
}

/// `rel` lists pairs `(i, j)` meaning class `i` lies strictly below class `j`.
pub fn tp(classes: &[&str], rel: &[(usize, usize)]) -> QuasiPoset {
    QuasiPoset::new(classes.iter().map(|b| set(b)).collect(), rel.iter().copied()).unwrap()
}

pub fn pw(s: &str) -> PackedWord {
    PackedWord::new(s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()).unwrap()
}

pub fn ic(parts: &[usize]) -> IntComposition {
    IntComposition::of(parts)
}

pub fn lc<K: Ord + Clone>(terms: impl IntoIterator<Item = (Q, K)>) -> LinComb<K> {
    let mut r = LinComb::zero();
    for (a, k) in terms {
        r.add_term(k, a);
    }
    r
}

pub fn ones<K: Ord + Clone>(keys: impl IntoIterator<Item = K>) -> LinComb<K> {
    lc(keys.into_iter().map(|k| (q(1), k)))
}

/// `lead · Π (X − r)`.
pub fn poly_roots(lead: Q, roots: &[Q]) -> Polynomial {
    let mut p = Polynomial::constant(lead);
    for r in roots {
        p = p.mul(&Polynomial::new(vec![-r.clone(), q(1)]));
    }
    p
}

/// Quasi-shuffles of two words, merging letters with `merge`.
pub fn qsh<T: Clone>(a: &[T], b: &[T], merge: &dyn Fn(&T, &T) -> T) -> Vec<Vec<T>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    let mut push = |head: T, tails: Vec<Vec<T>>| {
        for t in tails {
            let mut w = vec![head.clone()];
            w.extend(t);
            out.push(w);
        }
    };
    push(a[0].clone(), qsh(&a[1..], b, merge));
    push(b[0].clone(), qsh(a, &b[1..], merge));
    push(merge(&a[0], &b[0]), qsh(&a[1..], &b[1..], merge));
    out
}

pub fn qsh_comp(words: &[&str]) -> LinComb<SetComposition> {
    let union = |x: &LabelSet, y: &LabelSet| x.union(y).cloned().collect::<LabelSet>();
    let mut acc: Vec<Vec<LabelSet>> = vec![Vec::new()];
    for w in words {
        let blocks = c(w).blocks().to_vec();
        acc = acc.iter().flat_map(|u| qsh(u, &blocks, &union)).collect();
    }
    ones(acc.into_iter().map(|b| SetComposition::new(b).unwrap()))
}

pub fn qsh_int(words: &[&[usize]]) -> LinComb<IntComposition> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for w in words {
        acc = acc.iter().flat_map(|u| qsh(u, w, &|x, y| x + y)).collect();
    }
    ones(acc.iter().map(|w| IntComposition::of(w)))
}

pub fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = k.checked_pow(n as u32).unwrap();
    (0..total).map(move |mut m| {
        (0..n)
            .map(|_| {
                let d = m % k;
                m /= k;
                d
            })
            .collect()
    })
}

/// Colorings of the blocks with `k` colors, adjacent blocks distinct.
pub fn proper_colorings(g: &BlockGraph, k: usize) -> usize {
    let n = g.blocks().len();
    tuples(n, k).filter(|f| g.edges().iter().all(|&(a, b)| f[a] != f[b])).count()
}

/// Maps from classes to `1..=k`, strictly increasing along `<`.
pub fn strict_maps(t: &QuasiPoset, k: usize) -> usize {
    let lt = t.lt();
    let n = t.classes().len();
    tuples(n, k)
        .filter(|f| (0..n).all(|i| (0..n).all(|j| !lt[i][j] || f[i] < f[j])))
        .count()
}

/// Maps from classes to `1..=k`, weakly increasing along `<`.
pub fn weak_maps(t: &QuasiPoset, k: usize) -> usize {
    let lt = t.lt();
    let n = t.classes().len();
    tuples(n, k)
        .filter(|f| (0..n).all(|i| (0..n).all(|j| !lt[i][j] || f[i] <= f[j])))
        .count()
}

/// Orientations without a directed cycle, found by repeatedly removing sinks.
pub fn acyclic_orientations(g: &BlockGraph) -> usize {
    let es: Vec<(usize, usize)> = g.edges().iter().copied().collect();
    let n = g.blocks().len();
    (0..1u64 << es.len())
        .filter(|m| {
            let arcs: Vec<(usize, usize)> = es
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if m >> i & 1 == 1 { (b, a) } else { (a, b) })
                .collect();
            let mut alive = vec![true; n];
            for _ in 0..n {
                let sink = (0..n).find(|&v| alive[v] && !arcs.iter().any(|&(s, t)| s == v && alive[t]));
                match sink {
                    Some(v) => alive[v] = false,
                    None => return false,
                }
            }
            true
        })
        .count()
}

pub fn rationals() -> Vec<Q> {
    vec![q(-3), q(-2), q(-1), frac(-1, 2), q(0), frac(1, 3), q(1), q(2), frac(7, 3), q(5)]
}

/// Collects labelled equality checks and reports every mismatch.
#[derive(Default)]
pub struct Tally {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn eq<T: PartialEq + Debug>(&mut self, what: &str, got: T, want: T) {
        self.checked += 1;
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    pub fn holds(&mut self, what: &str, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures.push(what.to_string());
        }
    }
}

//! Finite topologies, stored as quasi-posets: a partition into classes and a
//! partial order on the classes given by its cover relation.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::DoubleBialgebra;
use crate::combinat::{set_partitions, surjections, LabelSet};
use crate::error::{Error, Result};
use crate::graphs::{check_blocks, components_within, fiber_composition, parse_pair, sort_blocks, weight, Equivalence};
use crate::lincomb::{LinComb, ToJson};
use crate::rational::{factorial, pow, q as qi, sign, Q};
use crate::setcomp::{fmt_block, labels_json, parse_labels, theta_q, SetComposition};

pub type Cover = (usize, usize);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuasiPoset {
    classes: Vec<LabelSet>,
    covers: BTreeSet<Cover>,
}

/// Strict reachability `r[a][b]` (a < b) of a relation on `n` points.
fn closure(n: usize, rel: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (a, b) in rel {
        r[a][b] = true;
    }
    for k in 0..n {
        for a in 0..n {
            if r[a][k] {
                for b in 0..n {
                    if r[k][b] {
                        r[a][b] = true;
                    }
                }
            }
        }
    }
    r
}

fn reduction(lt: &[Vec<bool>]) -> BTreeSet<Cover> {
    let n = lt.len();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            if lt[a][b] && !(0..n).any(|c| lt[a][c] && lt[c][b]) {
                out.insert((a, b));
            }
        }
    }
    out
}

/// A directed cycle in `rel`, if one exists.
fn find_cycle(n: usize, rel: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    for &(a, b) in rel {
        out[a].push(b);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut path = Vec::new();
    fn dfs(v: usize, out: &[Vec<usize>], state: &mut [u8], path: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[v] = 1;
        path.push(v);
        for &w in &out[v] {
            if state[w] == 1 {
                let start = path.iter().position(|&x| x == w).unwrap();
                let mut cyc = path[start..].to_vec();
                cyc.push(w);
                return Some(cyc);
            }
            if state[w] == 0 {
                if let Some(c) = dfs(w, out, state, path) {
                    return Some(c);
                }
            }
        }
        path.pop();
        state[v] = 2;
        None
    }
    for v in 0..n {
        if state[v] == 0 {
            if let Some(c) = dfs(v, &out, &mut state, &mut path) {
                return Some(c);
            }
        }
    }
    None
}

impl QuasiPoset {
    /// Builds from classes and any relation `i < j` on class indices. The
    /// relation is closed transitively; a cycle is rejected.
    pub fn new(classes: Vec<LabelSet>, rel: impl IntoIterator<Item = Cover>) -> Result<Self> {
        check_blocks(&classes)?;
        let n = classes.len();
        let rel: Vec<Cover> = rel.into_iter().collect();
        for &(a, b) in &rel {
            if a >= n || b >= n {
                return Err(Error::Domain(format!("cover ({a},{b}) refers to a missing class")));
            }
        }
        if let Some(c) = find_cycle(n, &rel) {
            let names: Vec<String> = c.iter().map(|&i| fmt_block(&classes[i])).collect();
            return Err(Error::Domain(format!("covers contain a cycle: {}", names.join(" < "))));
        }
        Ok(Self::from_acyclic(classes, rel))
    }

    fn from_acyclic(classes: Vec<LabelSet>, rel: Vec<Cover>) -> Self {
        let (classes, pos) = sort_blocks(classes);
        let lt = closure(classes.len(), rel.into_iter().map(|(a, b)| (pos[a], pos[b])));
        QuasiPoset { covers: reduction(&lt), classes }
    }

    /// Convenience constructor from label strings; panics on invalid input.
    pub fn of(classes: &[&[&str]], rel: &[Cover]) -> Self {
        let cs = classes
            .iter()
            .map(|b| b.iter().map(|s| s.to_string()).collect())
            .collect();
        Self::new(cs, rel.iter().copied()).expect("valid quasi-poset")
    }

    pub fn empty() -> Self {
        QuasiPoset { classes: Vec::new(), covers: BTreeSet::new() }
    }

    pub fn classes(&self) -> &[LabelSet] {
        &self.classes
    }

    pub fn covers(&self) -> &BTreeSet<Cover> {
        &self.covers
    }

    pub fn ground(&self) -> LabelSet {
        self.classes.iter().flatten().cloned().collect()
    }

    /// Number of classes.
    pub fn cl(&self) -> usize {
        self.classes.len()
    }

    /// Number of connected components.
    pub fn cc(&self) -> usize {
        self.components().len()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.cl()).collect();
        components_within(&self.covers, &all)
    }

    /// Strict order on classes: `lt()[a][b]` iff class `a` < class `b`.
    pub fn lt(&self) -> Vec<Vec<bool>> {
        closure(self.cl(), self.covers.iter().copied())
    }

    /// Induced quasi-poset on a set of class indices.
    pub fn induced(&self, verts: &[usize]) -> QuasiPoset {
        let lt = self.lt();
        let mut rel = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate() {
                if lt[a][b] {
                    rel.push((i, j));
                }
            }
        }
        Self::from_acyclic(verts.iter().map(|&v| self.classes[v].clone()).collect(), rel)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("quasi-poset must be an object with \"classes\" and \"covers\"".into()))?;
        let classes = obj
            .get("classes")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"classes\" array".into()))?
            .iter()
            .map(parse_labels)
            .collect::<Result<Vec<_>>>()?;
        let mut rel = Vec::new();
        if let Some(cs) = obj.get("covers") {
            let cs = cs.as_array().ok_or_else(|| Error::Parse("\"covers\" must be an array".into()))?;
            for c in cs {
                rel.push(parse_pair(c)?);
            }
        }
        Self::new(classes, rel)
    }
}

impl ToJson for QuasiPoset {
    fn to_json(&self) -> Value {
        json!({
            "classes": self.classes.iter().map(labels_json).collect::<Vec<_>>(),
            "covers": self.covers.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for QuasiPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.classes.iter().map(fmt_block).collect();
        let rs: Vec<String> = self.covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        write!(f, "T[{}; {}]", cs.join(" "), rs.join(" "))
    }
}

impl fmt::Debug for QuasiPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Up-closed sets of class indices, in increasing bitmask order.
pub fn open_sets(t: &QuasiPoset) -> Vec<Vec<usize>> {
    let n = t.cl();
    (0..(1u64 << n))
        .filter(|m| t.covers.iter().all(|&(a, b)| m >> a & 1 == 0 || m >> b & 1 == 1))
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Class indices covering `labels` exactly, or `None` if some class is cut.
fn classes_within(t: &QuasiPoset, labels: &LabelSet) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for (k, c) in t.classes.iter().enumerate() {
        if c.is_subset(labels) {
            out.push(k);
        } else if !c.is_disjoint(labels) {
            return None;
        }
    }
    Some(out)
}

/// `Δ_{I,J}(T) = T|_I ⊗ T|_J` when `J` is open, absent otherwise.
pub fn delta_split(t: &QuasiPoset, i: &LabelSet, j: &LabelSet) -> Result<Option<(QuasiPoset, QuasiPoset)>> {
    let g = t.ground();
    if !i.is_disjoint(j) || i.union(j).cloned().collect::<LabelSet>() != g {
        return Err(Error::Domain("split sets do not partition the ground set".into()));
    }
    let (Some(ci), Some(cj)) = (classes_within(t, i), classes_within(t, j)) else {
        return Ok(None);
    };
    let up: BTreeSet<usize> = cj.iter().copied().collect();
    if t.covers.iter().any(|(a, b)| up.contains(a) && !up.contains(b)) {
        return Ok(None);
    }
    Ok(Some((t.induced(&ci), t.induced(&cj))))
}

fn group_of(n: usize, e: &Equivalence) -> Vec<usize> {
    let mut of = vec![0; n];
    for (k, grp) in e.iter().enumerate() {
        for &v in grp {
            of[v] = k;
        }
    }
    of
}

/// Connected groups whose quotient order identifies no two groups.
pub fn is_compatible(t: &QuasiPoset, e: &Equivalence) -> bool {
    let n = t.cl();
    let mut all: Vec<usize> = e.iter().flatten().copied().collect();
    all.sort();
    if all != (0..n).collect::<Vec<_>>() {
        return false;
    }
    let lt = t.lt();
    for grp in e {
        let mut comparable = BTreeSet::new();
        for &a in grp {
            for &b in grp {
                if lt[a][b] {
                    comparable.insert((a, b));
                }
            }
        }
        if grp.is_empty() || components_within(&comparable, grp).len() != 1 {
            return false;
        }
    }
    let of = group_of(n, e);
    let rel: Vec<Cover> = t
        .covers
        .iter()
        .filter(|(a, b)| of[*a] != of[*b])
        .map(|(a, b)| (of[*a], of[*b]))
        .collect();
    find_cycle(e.len(), &rel).is_none()
}

pub fn compatible_equivalences(t: &QuasiPoset) -> Vec<Equivalence> {
    set_partitions(t.cl())
        .into_iter()
        .filter(|e| is_compatible(t, e))
        .collect()
}

fn check_compatible(t: &QuasiPoset, e: &Equivalence) -> Result<()> {
    if is_compatible(t, e) {
        Ok(())
    } else {
        Err(Error::Domain("equivalence is not compatible with this topology".into()))
    }
}

/// `T/∼`: groups become classes, ordered by the closure of the old order.
pub fn quotient(t: &QuasiPoset, e: &Equivalence) -> Result<QuasiPoset> {
    check_compatible(t, e)?;
    Ok(quotient_unchecked(t, e))
}

fn quotient_unchecked(t: &QuasiPoset, e: &Equivalence) -> QuasiPoset {
    let of = group_of(t.cl(), e);
    let classes = e
        .iter()
        .map(|grp| grp.iter().flat_map(|&v| t.classes[v].iter().cloned()).collect())
        .collect();
    let rel = t
        .covers
        .iter()
        .filter(|(a, b)| of[*a] != of[*b])
        .map(|(a, b)| (of[*a], of[*b]))
        .collect();
    QuasiPoset::from_acyclic(classes, rel)
}

/// `T|∼`: same classes, only the relations inside a group.
pub fn restriction(t: &QuasiPoset, e: &Equivalence) -> Result<QuasiPoset> {
    check_compatible(t, e)?;
    Ok(restriction_unchecked(t, e))
}

fn restriction_unchecked(t: &QuasiPoset, e: &Equivalence) -> QuasiPoset {
    let of = group_of(t.cl(), e);
    let lt = t.lt();
    let n = t.cl();
    let rel = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| lt[a][b] && of[a] == of[b])
        .collect();
    QuasiPoset::from_acyclic(t.classes.clone(), rel)
}

pub fn internal_delta(t: &QuasiPoset) -> LinComb<(QuasiPoset, QuasiPoset)> {
    LinComb::from_terms(
        compatible_equivalences(t)
            .iter()
            .map(|e| ((quotient_unchecked(t, e), restriction_unchecked(t, e)), Q::one())),
    )
}

pub fn eps_prime(t: &QuasiPoset) -> Q {
    if t.covers.is_empty() {
        Q::one()
    } else {
        Q::zero()
    }
}

/// `L(T)`: packed maps on classes, strictly increasing along the order.
pub fn strict_extensions(t: &QuasiPoset) -> Vec<Vec<usize>> {
    surjections(t.cl())
        .into_iter()
        .filter(|f| t.covers.iter().all(|&(a, b)| f[a] < f[b]))
        .collect()
}

/// `L′(T)`: packed maps on classes, weakly increasing along the order.
pub fn weak_extensions(t: &QuasiPoset) -> Vec<Vec<usize>> {
    surjections(t.cl())
        .into_iter()
        .filter(|f| t.covers.iter().all(|&(a, b)| f[a] <= f[b]))
        .collect()
}

pub fn phi_ehr(t: &QuasiPoset) -> LinComb<SetComposition> {
    LinComb::from_terms(
        strict_extensions(t)
            .iter()
            .map(|f| (fiber_composition(&t.classes, f), Q::one())),
    )
}

/// Sum of fiber compositions over `L′(T)`.
pub fn phi_weak(t: &QuasiPoset) -> LinComb<SetComposition> {
    LinComb::from_terms(
        weak_extensions(t)
            .iter()
            .map(|f| (fiber_composition(&t.classes, f), Q::one())),
    )
}

/// `θ_{1/q}(q^{cl} φ_ehr(T))`; at `q = 0` this is `φ_1`.
pub fn phi_ehr_q(t: &QuasiPoset, q: &Q) -> LinComb<SetComposition> {
    if q.is_zero() {
        return phi_hom_top(t, &vec![Q::one(); t.ground().len().max(1)]).expect("weights cover every size");
    }
    theta_q(&phi_ehr(t).scale(&pow(q, t.cl() as i64)), &q.recip())
}

/// Linear extensions of the class poset, by dynamic programming over down-sets.
pub fn heap_order_count(t: &QuasiPoset) -> u64 {
    let n = t.cl();
    let mut below = vec![0u64; n];
    for &(a, b) in &t.covers {
        below[b] |= 1 << a;
    }
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for m in 0..(1usize << n) {
        if ways[m] == 0 {
            continue;
        }
        for v in 0..n {
            if m >> v & 1 == 0 && below[v] & !(m as u64) == 0 {
                ways[m | 1 << v] += ways[m];
            }
        }
    }
    ways[(1 << n) - 1]
}

/// `ho(T) / cl(T)!`.
pub fn lambda_ho(t: &QuasiPoset) -> Q {
    qi(heap_order_count(t) as i64) / factorial(t.cl())
}

/// `S ⊛ T`: every class of `s` below every class of `t`.
pub fn joint_product(s: &QuasiPoset, t: &QuasiPoset) -> Result<QuasiPoset> {
    if let Some(l) = s.ground().intersection(&t.ground()).next() {
        return Err(Error::Domain(format!("ground sets share label {l:?}")));
    }
    let n = s.cl();
    let mut classes = s.classes.clone();
    classes.extend(t.classes.iter().cloned());
    let mut rel: Vec<Cover> = s.covers.iter().copied().collect();
    rel.extend(t.covers.iter().map(|(a, b)| (a + n, b + n)));
    for a in 0..n {
        for b in 0..t.cl() {
            rel.push((a, b + n));
        }
    }
    Ok(QuasiPoset::from_acyclic(classes, rel))
}

pub fn disjoint_union(s: &QuasiPoset, t: &QuasiPoset) -> Result<QuasiPoset> {
    if let Some(l) = s.ground().intersection(&t.ground()).next() {
        return Err(Error::Domain(format!("ground sets share label {l:?}")));
    }
    let n = s.cl();
    let mut classes = s.classes.clone();
    classes.extend(t.classes.iter().cloned());
    let mut rel: Vec<Cover> = s.covers.iter().copied().collect();
    rel.extend(t.covers.iter().map(|(a, b)| (a + n, b + n)));
    Ok(QuasiPoset::from_acyclic(classes, rel))
}

/// `φ_u(T) = (Π u_{#I}) (φ_ehr ← λ_ho)(T)`.
pub fn phi_hom_top(t: &QuasiPoset, u: &[Q]) -> Result<LinComb<SetComposition>> {
    let mut w = Q::one();
    for c in &t.classes {
        w *= weight(u, c.len())?;
    }
    let mut r = LinComb::zero();
    for e in compatible_equivalences(t) {
        let lam = lambda_ho(&restriction_unchecked(t, &e));
        r.add_scaled(&phi_ehr(&quotient_unchecked(t, &e)), &lam);
    }
    Ok(r.scale(&w))
}

/// `Γ(T) = Σ_{∼ ∈ CE(T)} T/∼`.
pub fn gamma_top(t: &QuasiPoset) -> LinComb<QuasiPoset> {
    LinComb::from_terms(
        compatible_equivalences(t)
            .iter()
            .map(|e| (quotient_unchecked(t, e), Q::one())),
    )
}

/// Inverse of [`gamma_top`]: signs `(-1)^{cl(∼)+cl(T)}`.
pub fn gamma_top_inv(t: &QuasiPoset) -> LinComb<QuasiPoset> {
    LinComb::from_terms(
        compatible_equivalences(t)
            .iter()
            .map(|e| (quotient_unchecked(t, e), sign(e.len() + t.cl()))),
    )
}

/// Every strict partial order on `0..n`, as relation lists.
fn posets(n: usize) -> Vec<Vec<Cover>> {
    let pairs: Vec<Cover> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for m in 0..(1u64 << pairs.len()) {
        let mut r = vec![vec![false; n]; n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if m >> k & 1 == 1 {
                r[a][b] = true;
            }
        }
        let antisym = (0..n).all(|a| (0..n).all(|b| !(r[a][b] && r[b][a])));
        let trans = (0..n).all(|a| (0..n).all(|b| !r[a][b] || (0..n).all(|c| !r[b][c] || r[a][c])));
        if antisym && trans {
            out.push(pairs.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, p)| *p).collect());
        }
    }
    out
}

/// Every quasi-poset on `ground`.
pub fn topologies_on(ground: &LabelSet) -> Vec<QuasiPoset> {
    let labels: Vec<&String> = ground.iter().collect();
    let mut out = BTreeSet::new();
    for p in set_partitions(labels.len()) {
        let classes: Vec<LabelSet> = p
            .iter()
            .map(|grp| grp.iter().map(|&i| labels[i].clone()).collect())
            .collect();
        for rel in posets(classes.len()) {
            out.insert(QuasiPoset::from_acyclic(classes.clone(), rel));
        }
    }
    out.into_iter().collect()
}

/// Marker type for the double bialgebra of finite topologies.
pub struct Top;

impl DoubleBialgebra for Top {
    type B = QuasiPoset;
    const NAME: &'static str = "Top";

    fn ground(x: &QuasiPoset) -> LabelSet {
        x.ground()
    }
    fn unit() -> QuasiPoset {
        QuasiPoset::empty()
    }
    fn mul(x: &QuasiPoset, y: &QuasiPoset) -> LinComb<QuasiPoset> {
        LinComb::basis(disjoint_union(x, y).expect("disjoint grounds"))
    }
    fn split(x: &QuasiPoset, i: &LabelSet) -> LinComb<(QuasiPoset, QuasiPoset)> {
        let j: LabelSet = x.ground().difference(i).cloned().collect();
        match delta_split(x, i, &j) {
            Ok(Some(p)) => LinComb::basis(p),
            _ => LinComb::zero(),
        }
    }
    fn delta(x: &QuasiPoset) -> LinComb<(QuasiPoset, QuasiPoset)> {
        internal_delta(x)
    }
    fn eps_prime(x: &QuasiPoset) -> Q {
        eps_prime(x)
    }
    fn degree(x: &QuasiPoset) -> usize {
        x.cl()
    }
    fn basis_on(ground: &LabelSet) -> Vec<QuasiPoset> {
        topologies_on(ground)
    }
    fn factors(x: &QuasiPoset) -> Vec<QuasiPoset> {
        x.components().iter().map(|c| x.induced(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::labelset;

    fn chain2() -> QuasiPoset {
        QuasiPoset::of(&[&["A"], &["B"]], &[(0, 1)])
    }

    fn vee() -> QuasiPoset {
        QuasiPoset::of(&[&["A"], &["B"], &["C"]], &[(0, 1), (0, 2)])
    }

    #[test]
    fn construction() {
        let c = QuasiPoset::of(&[&["a"], &["b"], &["c"]], &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(c.covers().len(), 2);
        let err = QuasiPoset::new(vec![labelset(&["a"]), labelset(&["b"])], [(0, 1), (1, 0)]).unwrap_err();
        assert!(err.to_string().contains("cycle"), "{err}");
    }

    #[test]
    fn opens() {
        assert_eq!(open_sets(&chain2()), vec![vec![], vec![1], vec![0, 1]]);
        assert_eq!(open_sets(&QuasiPoset::of(&[&["A"], &["B"]], &[])).len(), 4);
        assert_eq!(open_sets(&QuasiPoset::of(&[&["A", "B"]], &[])).len(), 2);
    }

    #[test]
    fn splits() {
        let t = chain2();
        let (a, b) = (labelset(&["A"]), labelset(&["B"]));
        assert!(delta_split(&t, &a, &b).unwrap().is_some());
        assert!(delta_split(&t, &b, &a).unwrap().is_none());
        assert!(delta_split(&t, &a, &a).is_err());
    }

    #[test]
    fn equivalences() {
        assert_eq!(compatible_equivalences(&chain2()).len(), 2);
        assert_eq!(compatible_equivalences(&vee()).len(), 4);
        let chain3 = QuasiPoset::of(&[&["A"], &["B"], &["C"]], &[(0, 1), (1, 2)]);
        // merging the two ends alone would swallow the middle
        assert!(!is_compatible(&chain3, &vec![vec![0, 2], vec![1]]));
        assert_eq!(internal_delta(&chain3).len(), 4);
    }

    #[test]
    fn extensions() {
        assert_eq!(strict_extensions(&chain2()), vec![vec![1, 2]]);
        assert_eq!(weak_extensions(&chain2()).len(), 2);
        assert_eq!(strict_extensions(&vee()).len(), 3);
        assert_eq!(heap_order_count(&vee()), 2);
        assert_eq!(heap_order_count(&QuasiPoset::of(&[&["a"], &["b"], &["c"]], &[])), 6);
        assert_eq!(heap_order_count(&QuasiPoset::empty()), 1);
    }

    #[test]
    fn joint() {
        let a = QuasiPoset::of(&[&["A"]], &[]);
        let b = QuasiPoset::of(&[&["B"]], &[]);
        assert_eq!(joint_product(&a, &b).unwrap(), chain2());
        let ab = QuasiPoset::of(&[&["A"], &["B"]], &[]);
        let c = QuasiPoset::of(&[&["C"]], &[]);
        let lam = joint_product(&ab, &c).unwrap();
        assert_eq!(lam.covers().len(), 2);
    }

    #[test]
    fn enumerated_topologies() {
        let counts: Vec<usize> = [&[][..], &["a"], &["a", "b"], &["a", "b", "c"]]
            .iter()
            .map(|g| topologies_on(&labelset(g)).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 29]);
    }
}

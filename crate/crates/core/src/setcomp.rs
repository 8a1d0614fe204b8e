//! Set compositions: quasi-shuffle and shuffle products, deconcatenation,
//! the internal coproduct, and the graduation maps `θ_q` and `ρ`.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::algebra::DoubleBialgebra;
use crate::combinat::{fibers, max_or_zero, surjections, Label, LabelSet};
use crate::error::{Error, Result};
use crate::lincomb::{LinComb, ToJson};
use crate::rational::{factorial, hilbert, Q};

/// Ordered sequence of disjoint nonempty blocks. The empty sequence is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetComposition {
    blocks: Vec<LabelSet>,
}

impl SetComposition {
    pub fn new(blocks: Vec<LabelSet>) -> Result<Self> {
        let mut seen = LabelSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Domain("empty block".into()));
            }
            for l in b {
                if !seen.insert(l.clone()) {
                    return Err(Error::Domain(format!("label {l:?} occurs in two blocks")));
                }
            }
        }
        Ok(SetComposition { blocks })
    }

    /// Convenience constructor, panics on invalid input.
    pub fn of(blocks: &[&[&str]]) -> Self {
        Self::new(
            blocks
                .iter()
                .map(|b| b.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
        .expect("valid set composition")
    }

    pub fn unit() -> Self {
        SetComposition { blocks: Vec::new() }
    }

    pub fn single(b: LabelSet) -> Self {
        SetComposition { blocks: vec![b] }
    }

    pub fn blocks(&self) -> &[LabelSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground(&self) -> LabelSet {
        self.blocks.iter().flatten().cloned().collect()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        SetComposition { blocks }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("set composition must be an array of blocks".into()))?;
        let mut blocks = Vec::new();
        for b in arr {
            blocks.push(parse_labels(b)?);
        }
        Self::new(blocks)
    }
}

pub(crate) fn parse_labels(v: &Value) -> Result<LabelSet> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("a block must be an array of labels".into()))?;
    let mut out = LabelSet::new();
    for l in arr {
        let s = match l {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(Error::Parse(format!("bad label {l}"))),
        };
        if s.is_empty() {
            return Err(Error::Parse("empty label".into()));
        }
        if !out.insert(s.clone()) {
            return Err(Error::Parse(format!("duplicate label {s:?}")));
        }
    }
    Ok(out)
}

pub(crate) fn labels_json(b: &LabelSet) -> Value {
    Value::Array(b.iter().map(|l| Value::String(l.clone())).collect())
}

pub(crate) fn fmt_block(b: &LabelSet) -> String {
    let v: Vec<&str> = b.iter().map(|s| s.as_str()).collect();
    format!("{{{}}}", v.join(","))
}

impl ToJson for SetComposition {
    fn to_json(&self) -> Value {
        Value::Array(self.blocks.iter().map(labels_json).collect())
    }
}

impl fmt::Display for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.blocks.iter().map(fmt_block).collect();
        write!(f, "({})", v.join(","))
    }
}

impl fmt::Debug for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The `(k, l)`-quasi-shuffles: surjections onto `1..=max` that are strictly
/// increasing on `1..=k` and on `k+1..=k+l`.
pub fn enumerate_qsh(k: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, j: usize, v: usize, k: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == k && j == l {
            out.push(cur.clone());
            return;
        }
        if i < k {
            cur[i] = v;
            rec(i + 1, j, v + 1, k, l, cur, out);
        }
        if j < l {
            cur[k + j] = v;
            rec(i, j + 1, v + 1, k, l, cur, out);
        }
        if i < k && j < l {
            cur[i] = v;
            cur[k + j] = v;
            rec(i + 1, j + 1, v + 1, k, l, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, 0, 1, k, l, &mut vec![0; k + l], &mut out);
    out
}

/// `σ → c`: block `i` of the result is the union of the blocks `c_j` with `σ(j) = i`.
pub fn apply_surjection(sigma: &[usize], c: &SetComposition) -> SetComposition {
    assert_eq!(sigma.len(), c.len());
    let blocks = fibers(sigma)
        .into_iter()
        .map(|f| f.iter().flat_map(|&j| c.blocks[j].iter().cloned()).collect())
        .collect();
    SetComposition { blocks }
}

fn check_disjoint(a: &LabelSet, b: &LabelSet) -> Result<()> {
    if let Some(l) = a.intersection(b).next() {
        return Err(Error::Domain(format!("ground sets share label {l:?}")));
    }
    Ok(())
}

fn qsh_filtered(a: &SetComposition, b: &SetComposition, bijective: bool) -> Result<LinComb<SetComposition>> {
    check_disjoint(&a.ground(), &b.ground())?;
    let ab = a.concat(b);
    let n = ab.len();
    let mut r = LinComb::zero();
    for s in enumerate_qsh(a.len(), b.len()) {
        if bijective && max_or_zero(&s) != n {
            continue;
        }
        r.add_term(apply_surjection(&s, &ab), Q::one());
    }
    Ok(r)
}

/// `a ⊎ b`.
pub fn quasi_shuffle(a: &SetComposition, b: &SetComposition) -> Result<LinComb<SetComposition>> {
    qsh_filtered(a, b, false)
}

/// `a ⧢ b`: the bijective quasi-shuffles only.
pub fn shuffle(a: &SetComposition, b: &SetComposition) -> Result<LinComb<SetComposition>> {
    qsh_filtered(a, b, true)
}

pub fn quasi_shuffle_lc(a: &LinComb<SetComposition>, b: &LinComb<SetComposition>) -> LinComb<SetComposition> {
    crate::lincomb::bilinear_extend(a, b, |x, y| quasi_shuffle(x, y).expect("disjoint grounds"))
}

pub fn shuffle_lc(a: &LinComb<SetComposition>, b: &LinComb<SetComposition>) -> LinComb<SetComposition> {
    crate::lincomb::bilinear_extend(a, b, |x, y| shuffle(x, y).expect("disjoint grounds"))
}

/// Quasi-shuffle product of several compositions.
pub fn quasi_shuffle_all(parts: &[SetComposition]) -> LinComb<SetComposition> {
    let mut acc = LinComb::basis(SetComposition::unit());
    for p in parts {
        acc = quasi_shuffle_lc(&acc, &LinComb::basis(p.clone()));
    }
    acc
}

/// `Δ_{I,J}(c)`: the cut of `c` whose prefix has ground exactly `I`, if any.
pub fn deconcat(c: &SetComposition, i: &LabelSet) -> Result<Option<(SetComposition, SetComposition)>> {
    let g = c.ground();
    if !i.is_subset(&g) {
        return Err(Error::Domain("split set is not contained in the ground set".into()));
    }
    let mut acc = LabelSet::new();
    for p in 0..=c.len() {
        if acc.len() == i.len() {
            if &acc == i {
                return Ok(Some((
                    SetComposition { blocks: c.blocks[..p].to_vec() },
                    SetComposition { blocks: c.blocks[p..].to_vec() },
                )));
            }
            return Ok(None);
        }
        if p < c.len() {
            acc.extend(c.blocks[p].iter().cloned());
            if acc.len() > i.len() {
                return Ok(None);
            }
        }
    }
    Ok(None)
}

/// `Δ_{A_1,...,A_k}` applied to a linear combination.
pub fn iterated_split(x: &LinComb<SetComposition>, parts: &[LabelSet]) -> Result<LinComb<Vec<SetComposition>>> {
    let mut out = LinComb::zero();
    for (c, coef) in x.iter() {
        let g = c.ground();
        let mut union = LabelSet::new();
        for p in parts {
            check_disjoint(&union, p).map_err(|_| Error::Domain("split parts overlap".into()))?;
            union.extend(p.iter().cloned());
        }
        if union != g {
            return Err(Error::Domain("split parts do not partition the ground set".into()));
        }
        let mut rest = c.clone();
        let mut legs = Vec::new();
        let mut ok = true;
        for (n, p) in parts.iter().enumerate() {
            if n + 1 == parts.len() {
                legs.push(rest.clone());
                break;
            }
            match deconcat(&rest, p)? {
                Some((l, r)) => {
                    legs.push(l);
                    rest = r;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if parts.is_empty() {
            ok = c.is_empty();
        }
        if ok {
            out.add_term(legs, coef.clone());
        }
    }
    Ok(out)
}

/// All subsets of the cut points `1..k`, each given as the list of segment lengths.
pub fn segmentations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for m in 0..(1u64 << (k - 1)) {
        let mut segs = Vec::new();
        let mut len = 1;
        for cut in 0..k - 1 {
            if m >> cut & 1 == 1 {
                segs.push(len);
                len = 1;
            } else {
                len += 1;
            }
        }
        segs.push(len);
        out.push(segs);
    }
    out
}

fn segments(c: &SetComposition, lens: &[usize]) -> Vec<SetComposition> {
    let mut out = Vec::new();
    let mut p = 0;
    for &l in lens {
        out.push(SetComposition { blocks: c.blocks[p..p + l].to_vec() });
        p += l;
    }
    out
}

fn merged(c: &SetComposition, lens: &[usize]) -> SetComposition {
    SetComposition {
        blocks: segments(c, lens).iter().map(|s| s.ground()).collect(),
    }
}

/// Internal coproduct by the cut-point formula: merged runs on the left,
/// quasi-shuffle of the runs on the right.
pub fn internal_delta(c: &SetComposition) -> LinComb<(SetComposition, SetComposition)> {
    let mut r = LinComb::zero();
    for lens in segmentations(c.len()) {
        let left = merged(c, &lens);
        for (right, coef) in quasi_shuffle_all(&segments(c, &lens)) {
            r.add_term((left.clone(), right), coef);
        }
    }
    r
}

/// Pairs `(σ, τ)` with `σ` weakly increasing onto, `τ` onto, and
/// `i < j, σ(i) = σ(j) ⇒ τ(i) < τ(j)`.
pub fn enumerate_cont(k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let all = surjections(k);
    let mut out = Vec::new();
    for s in all.iter().filter(|s| s.windows(2).all(|w| w[0] <= w[1])) {
        for t in &all {
            let ok = (0..k).all(|i| (i + 1..k).all(|j| s[i] != s[j] || t[i] < t[j]));
            if ok {
                out.push((s.clone(), t.clone()));
            }
        }
    }
    out
}

/// Internal coproduct through `cont_k`, used to cross-check [`internal_delta`].
pub fn internal_delta_via_cont(c: &SetComposition) -> LinComb<(SetComposition, SetComposition)> {
    LinComb::from_terms(
        enumerate_cont(c.len())
            .into_iter()
            .map(|(s, t)| ((apply_surjection(&s, c), apply_surjection(&t, c)), Q::one())),
    )
}

/// Counit of the internal coproduct.
pub fn eps_prime(c: &SetComposition) -> Q {
    if c.len() <= 1 {
        Q::one()
    } else {
        Q::zero()
    }
}

/// `θ_q` on one basis element: merged runs weighted by `Π H_{len}(q)`.
pub fn theta_q_basis(c: &SetComposition, q: &Q) -> LinComb<SetComposition> {
    let mut r = LinComb::zero();
    for lens in segmentations(c.len()) {
        let w: Q = lens.iter().map(|&l| hilbert(l, q)).product();
        r.add_term(merged(c, &lens), w);
    }
    r
}

pub fn theta_q(x: &LinComb<SetComposition>, q: &Q) -> LinComb<SetComposition> {
    x.map(|c| theta_q_basis(c, q))
}

/// The homogeneous isomorphism `ρ`: merged runs weighted by `1/Π len!`.
pub fn rho_iso(c: &SetComposition) -> LinComb<SetComposition> {
    let mut r = LinComb::zero();
    for lens in segmentations(c.len()) {
        let w: Q = lens.iter().map(|&l| factorial(l).recip()).product();
        r.add_term(merged(c, &lens), w);
    }
    r
}

/// Every set composition of `ground`.
pub fn compositions_of(ground: &LabelSet) -> Vec<SetComposition> {
    let v: Vec<&Label> = ground.iter().collect();
    surjections(v.len())
        .into_iter()
        .map(|s| SetComposition {
            blocks: fibers(&s)
                .into_iter()
                .map(|f| f.into_iter().map(|i| v[i].clone()).collect())
                .collect(),
        })
        .collect()
}

/// Marker type for the double bialgebra of set compositions.
pub struct Comp;

impl DoubleBialgebra for Comp {
    type B = SetComposition;
    const NAME: &'static str = "Comp";

    fn ground(x: &SetComposition) -> LabelSet {
        x.ground()
    }
    fn unit() -> SetComposition {
        SetComposition::unit()
    }
    fn mul(x: &SetComposition, y: &SetComposition) -> LinComb<SetComposition> {
        quasi_shuffle(x, y).expect("disjoint grounds")
    }
    fn split(x: &SetComposition, i: &LabelSet) -> LinComb<(SetComposition, SetComposition)> {
        match deconcat(x, i) {
            Ok(Some(p)) => LinComb::basis(p),
            _ => LinComb::zero(),
        }
    }
    fn delta(x: &SetComposition) -> LinComb<(SetComposition, SetComposition)> {
        internal_delta(x)
    }
    fn eps_prime(x: &SetComposition) -> Q {
        eps_prime(x)
    }
    fn degree(x: &SetComposition) -> usize {
        x.len()
    }
    fn basis_on(ground: &LabelSet) -> Vec<SetComposition> {
        compositions_of(ground)
    }
}

impl SetComposition {
    pub fn is_unit(&self) -> bool {
        self.blocks.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::labelset;
    use crate::rational::{frac, q};

    fn sc(b: &[&[&str]]) -> SetComposition {
        SetComposition::of(b)
    }

    #[test]
    fn qsh_counts() {
        assert_eq!(enumerate_qsh(1, 1), vec![vec![1, 2], vec![2, 1], vec![1, 1]]);
        assert_eq!(enumerate_qsh(2, 1).len(), 5);
        assert_eq!(enumerate_qsh(2, 2).len(), 13);
        assert_eq!(enumerate_qsh(0, 3), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn small_products() {
        let p = quasi_shuffle(&sc(&[&["1"]]), &sc(&[&["2"]])).unwrap();
        let want = LinComb::from_terms(vec![
            (sc(&[&["1"], &["2"]]), q(1)),
            (sc(&[&["2"], &["1"]]), q(1)),
            (sc(&[&["1", "2"]]), q(1)),
        ]);
        assert_eq!(p, want);
        assert_eq!(shuffle(&sc(&[&["1"], &["2"]]), &sc(&[&["3"]])).unwrap().len(), 3);
        assert!(quasi_shuffle(&sc(&[&["1"]]), &sc(&[&["1"]])).is_err());
        let u = quasi_shuffle(&SetComposition::unit(), &sc(&[&["a"], &["b"]])).unwrap();
        assert_eq!(u, LinComb::basis(sc(&[&["a"], &["b"]])));
    }

    #[test]
    fn deconcat_cases() {
        let c = sc(&[&["1"], &["2"]]);
        assert_eq!(
            deconcat(&c, &labelset(&["1"])).unwrap(),
            Some((sc(&[&["1"]]), sc(&[&["2"]])))
        );
        assert_eq!(deconcat(&c, &labelset(&["2"])).unwrap(), None);
        assert_eq!(
            deconcat(&c, &LabelSet::new()).unwrap(),
            Some((SetComposition::unit(), c.clone()))
        );
        assert!(deconcat(&c, &labelset(&["3"])).is_err());
    }

    #[test]
    fn iterated_split_cases() {
        let c = LinComb::basis(sc(&[&["1", "2"]]));
        assert!(iterated_split(&c, &[labelset(&["1"]), labelset(&["2"])]).unwrap().is_zero());
        let d = LinComb::basis(sc(&[&["1"], &["2"]]));
        let one = iterated_split(&d, &[labelset(&["1", "2"])]).unwrap();
        assert_eq!(one, LinComb::basis(vec![sc(&[&["1"], &["2"]])]));
        assert!(iterated_split(&d, &[labelset(&["1"])]).is_err());
    }

    #[test]
    fn cont_counts() {
        assert_eq!(enumerate_cont(0).len(), 1);
        assert_eq!(enumerate_cont(1), vec![(vec![1], vec![1])]);
        assert_eq!(enumerate_cont(2).len(), 4);
    }

    #[test]
    fn delta_agrees_with_cont() {
        for c in compositions_of(&labelset(&["1", "2", "3", "4"])) {
            assert_eq!(internal_delta(&c), internal_delta_via_cont(&c), "{c}");
        }
    }

    #[test]
    fn theta_and_rho() {
        let c = sc(&[&["1"], &["2"]]);
        let x = q(5);
        let t = theta_q_basis(&c, &x);
        assert_eq!(t.coeff(&c), q(25));
        assert_eq!(t.coeff(&sc(&[&["1", "2"]])), q(10));
        assert_eq!(theta_q_basis(&c, &q(1)), LinComb::basis(c.clone()));
        let r = rho_iso(&c);
        assert_eq!(r.coeff(&sc(&[&["1", "2"]])), frac(1, 2));
        assert_eq!(eps_prime(&SetComposition::unit()), q(1));
        assert_eq!(eps_prime(&c), q(0));
    }
}

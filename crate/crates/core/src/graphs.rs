//! Graphs whose vertices are the blocks of a set partition, with the
//! restriction coproduct, the extraction-contraction coproduct and the
//! chromatic morphism to set compositions.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::DoubleBialgebra;
use crate::combinat::{fibers, set_partitions, surjections, LabelSet};
use crate::error::{Error, Result};
use crate::lincomb::{LinComb, ToJson};
use crate::rational::{pow, q as qi, sign, Q};
use crate::setcomp::{fmt_block, labels_json, parse_labels, quasi_shuffle_all, theta_q, SetComposition};

pub type Edge = (usize, usize);

/// A partition of vertex (block) indices into groups.
pub type Equivalence = Vec<Vec<usize>>;

/// Simple graph on the blocks of a set partition. Blocks are kept sorted and
/// edges are index pairs `(i, j)` with `i < j`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockGraph {
    blocks: Vec<LabelSet>,
    edges: BTreeSet<Edge>,
}

pub(crate) fn check_blocks(blocks: &[LabelSet]) -> Result<()> {
    let mut seen = LabelSet::new();
    for b in blocks {
        if b.is_empty() {
            return Err(Error::Domain("empty block".into()));
        }
        for l in b {
            if !seen.insert(l.clone()) {
                return Err(Error::Domain(format!("label {l:?} occurs in two blocks")));
            }
        }
    }
    Ok(())
}

/// Sorts blocks and returns the permutation `old index -> new index`.
pub(crate) fn sort_blocks(blocks: Vec<LabelSet>) -> (Vec<LabelSet>, Vec<usize>) {
    let mut idx: Vec<usize> = (0..blocks.len()).collect();
    idx.sort_by(|&a, &b| blocks[a].cmp(&blocks[b]));
    let mut pos = vec![0; blocks.len()];
    for (new, &old) in idx.iter().enumerate() {
        pos[old] = new;
    }
    let sorted = idx.iter().map(|&i| blocks[i].clone()).collect();
    (sorted, pos)
}

impl BlockGraph {
    pub fn new(blocks: Vec<LabelSet>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        check_blocks(&blocks)?;
        let n = blocks.len();
        let mut es = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Domain(format!("edge ({a},{b}) refers to a missing block")));
            }
            if a == b {
                return Err(Error::Domain(format!("loop at block {a}")));
            }
            es.push((a, b));
        }
        Ok(Self::canonical(blocks, es))
    }

    /// Canonicalizes without validation; parallel edges collapse.
    fn canonical(blocks: Vec<LabelSet>, edges: Vec<Edge>) -> Self {
        let (blocks, pos) = sort_blocks(blocks);
        let edges = edges
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (pos[a], pos[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        BlockGraph { blocks, edges }
    }

    /// Convenience constructor from label strings; panics on invalid input.
    pub fn of(blocks: &[&[&str]], edges: &[Edge]) -> Self {
        let bs = blocks
            .iter()
            .map(|b| b.iter().map(|s| s.to_string()).collect())
            .collect();
        Self::new(bs, edges.iter().copied()).expect("valid block graph")
    }

    pub fn empty() -> Self {
        BlockGraph { blocks: Vec::new(), edges: BTreeSet::new() }
    }

    pub fn blocks(&self) -> &[LabelSet] {
        &self.blocks
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn ground(&self) -> LabelSet {
        self.blocks.iter().flatten().cloned().collect()
    }

    /// Number of vertices.
    pub fn deg(&self) -> usize {
        self.blocks.len()
    }

    /// Number of connected components.
    pub fn cc(&self) -> usize {
        self.components().len()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.deg()).collect();
        components_within(&self.edges, &all)
    }

    /// Induced subgraph on a set of vertex indices.
    pub fn induced(&self, verts: &[usize]) -> BlockGraph {
        let mut pos = vec![usize::MAX; self.deg()];
        for (k, &v) in verts.iter().enumerate() {
            pos[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| pos[*a] != usize::MAX && pos[*b] != usize::MAX)
            .map(|(a, b)| (pos[*a], pos[*b]))
            .collect();
        Self::canonical(verts.iter().map(|&v| self.blocks[v].clone()).collect(), edges)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("graph must be an object with \"blocks\" and \"edges\"".into()))?;
        let blocks = obj
            .get("blocks")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"blocks\" array".into()))?
            .iter()
            .map(parse_labels)
            .collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::new();
        if let Some(es) = obj.get("edges") {
            let es = es.as_array().ok_or_else(|| Error::Parse("\"edges\" must be an array".into()))?;
            for e in es {
                edges.push(parse_pair(e)?);
            }
        }
        Self::new(blocks, edges)
    }
}

pub(crate) fn parse_pair(e: &Value) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("expected a pair of indices, got {e}"));
    let a = e.as_array().ok_or_else(bad)?;
    if a.len() != 2 {
        return Err(bad());
    }
    let i = a[0].as_u64().ok_or_else(bad)? as usize;
    let j = a[1].as_u64().ok_or_else(bad)? as usize;
    Ok((i, j))
}

/// Connected components of the graph `edges` restricted to `verts`.
pub(crate) fn components_within(edges: &BTreeSet<Edge>, verts: &[usize]) -> Vec<Vec<usize>> {
    let inside: BTreeSet<usize> = verts.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &v in verts {
        if seen.contains(&v) {
            continue;
        }
        let mut comp = vec![v];
        seen.insert(v);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &(a, b) in edges {
                let y = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if inside.contains(&y) && seen.insert(y) {
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

impl ToJson for BlockGraph {
    fn to_json(&self) -> Value {
        json!({
            "blocks": self.blocks.iter().map(labels_json).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for BlockGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<String> = self.blocks.iter().map(fmt_block).collect();
        let es: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "G[{}; {}]", bs.join(" "), es.join(" "))
    }
}

impl fmt::Debug for BlockGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn disjoint_union(g: &BlockGraph, h: &BlockGraph) -> Result<BlockGraph> {
    if let Some(l) = g.ground().intersection(&h.ground()).next() {
        return Err(Error::Domain(format!("ground sets share label {l:?}")));
    }
    let n = g.deg();
    let mut blocks = g.blocks.clone();
    blocks.extend(h.blocks.iter().cloned());
    let mut edges: Vec<Edge> = g.edges.iter().copied().collect();
    edges.extend(h.edges.iter().map(|(a, b)| (a + n, b + n)));
    Ok(BlockGraph::canonical(blocks, edges))
}

/// `G|_I` when `I` is a union of blocks.
pub fn restrict(g: &BlockGraph, i: &LabelSet) -> Result<Option<BlockGraph>> {
    if !i.is_subset(&g.ground()) {
        return Err(Error::Domain("restriction set is not contained in the ground set".into()));
    }
    let mut verts = Vec::new();
    for (k, b) in g.blocks.iter().enumerate() {
        if b.is_subset(i) {
            verts.push(k);
        } else if !b.is_disjoint(i) {
            return Ok(None);
        }
    }
    Ok(Some(g.induced(&verts)))
}

/// Partitions of the vertices whose groups induce connected subgraphs.
pub fn admissible_equivalences(g: &BlockGraph) -> Vec<Equivalence> {
    set_partitions(g.deg())
        .into_iter()
        .filter(|p| is_admissible(g, p))
        .collect()
}

pub fn is_admissible(g: &BlockGraph, e: &Equivalence) -> bool {
    let mut all: Vec<usize> = e.iter().flatten().copied().collect();
    all.sort();
    all == (0..g.deg()).collect::<Vec<_>>()
        && e.iter().all(|grp| !grp.is_empty() && components_within(&g.edges, grp).len() == 1)
}

fn check_admissible(g: &BlockGraph, e: &Equivalence) -> Result<()> {
    if is_admissible(g, e) {
        Ok(())
    } else {
        Err(Error::Domain("equivalence is not admissible for this graph".into()))
    }
}

fn group_of(g: &BlockGraph, e: &Equivalence) -> Vec<usize> {
    let mut of = vec![0; g.deg()];
    for (k, grp) in e.iter().enumerate() {
        for &v in grp {
            of[v] = k;
        }
    }
    of
}

/// `G/∼`: each group becomes one vertex.
pub fn contract(g: &BlockGraph, e: &Equivalence) -> Result<BlockGraph> {
    check_admissible(g, e)?;
    Ok(contract_unchecked(g, e))
}

fn contract_unchecked(g: &BlockGraph, e: &Equivalence) -> BlockGraph {
    let of = group_of(g, e);
    let blocks = e
        .iter()
        .map(|grp| grp.iter().flat_map(|&v| g.blocks[v].iter().cloned()).collect())
        .collect();
    let edges = g
        .edges
        .iter()
        .filter(|(a, b)| of[*a] != of[*b])
        .map(|(a, b)| (of[*a], of[*b]))
        .collect();
    BlockGraph::canonical(blocks, edges)
}

/// `G|∼`: same vertices, only the edges inside a group.
pub fn restrict_classes(g: &BlockGraph, e: &Equivalence) -> Result<BlockGraph> {
    check_admissible(g, e)?;
    Ok(restrict_classes_unchecked(g, e))
}

fn restrict_classes_unchecked(g: &BlockGraph, e: &Equivalence) -> BlockGraph {
    let of = group_of(g, e);
    BlockGraph {
        blocks: g.blocks.clone(),
        edges: g.edges.iter().filter(|(a, b)| of[*a] == of[*b]).copied().collect(),
    }
}

pub fn internal_delta(g: &BlockGraph) -> LinComb<(BlockGraph, BlockGraph)> {
    LinComb::from_terms(
        admissible_equivalences(g)
            .iter()
            .map(|e| ((contract_unchecked(g, e), restrict_classes_unchecked(g, e)), Q::one())),
    )
}

pub fn eps_prime(g: &BlockGraph) -> Q {
    if g.edges.is_empty() {
        Q::one()
    } else {
        Q::zero()
    }
}

/// Packed colorings of the vertices with distinct colors across every edge.
pub fn valid_colorations(g: &BlockGraph) -> Vec<Vec<usize>> {
    surjections(g.deg())
        .into_iter()
        .filter(|c| g.edges.iter().all(|(a, b)| c[*a] != c[*b]))
        .collect()
}

pub(crate) fn fiber_composition(blocks: &[LabelSet], c: &[usize]) -> SetComposition {
    SetComposition::new(
        fibers(c)
            .into_iter()
            .map(|f| f.into_iter().flat_map(|v| blocks[v].iter().cloned()).collect())
            .collect(),
    )
    .expect("fibers of a surjection are disjoint and nonempty")
}

/// The chromatic morphism: one set composition per valid coloration.
pub fn phi_chr(g: &BlockGraph) -> LinComb<SetComposition> {
    LinComb::from_terms(
        valid_colorations(g)
            .iter()
            .map(|c| (fiber_composition(&g.blocks, c), Q::one())),
    )
}

/// `u_{size}` lookup; `u[k - 1]` is the weight of a block of size `k`.
pub(crate) fn weight(u: &[Q], size: usize) -> Result<Q> {
    u.get(size.wrapping_sub(1))
        .cloned()
        .ok_or_else(|| Error::Domain(format!("weight sequence has no entry for size {size}")))
}

/// `φ_u(G)`: weighted quasi-shuffle of the one-block compositions.
pub fn phi_hom(g: &BlockGraph, u: &[Q]) -> Result<LinComb<SetComposition>> {
    let mut w = Q::one();
    for b in &g.blocks {
        w *= weight(u, b.len())?;
    }
    let singles: Vec<SetComposition> = g.blocks.iter().map(|b| SetComposition::single(b.clone())).collect();
    Ok(quasi_shuffle_all(&singles).scale(&w))
}

/// Acyclic orientations, by trying all `2^|E|` orientations.
pub fn ao_count(g: &BlockGraph) -> u64 {
    let es: Vec<Edge> = g.edges.iter().copied().collect();
    let n = g.deg();
    let mut count = 0;
    for m in 0..(1u64 << es.len()) {
        let mut out = vec![Vec::new(); n];
        for (k, &(a, b)) in es.iter().enumerate() {
            if m >> k & 1 == 1 {
                out[a].push(b);
            } else {
                out[b].push(a);
            }
        }
        if is_acyclic(&out) {
            count += 1;
        }
    }
    count
}

fn is_acyclic(out: &[Vec<usize>]) -> bool {
    let mut indeg = vec![0; out.len()];
    for vs in out {
        for &v in vs {
            indeg[v] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..out.len()).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(x) = stack.pop() {
        seen += 1;
        for &y in &out[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    seen == out.len()
}

/// Acyclic orientations by deletion-contraction: `ao(G) = ao(G∖e) + ao(G/e)`.
pub fn ao_count_recursive(g: &BlockGraph) -> u64 {
    match g.edges.iter().next() {
        None => 1,
        Some(&e) => {
            ao_count_recursive(&delete_edge(g, e).expect("edge present"))
                + ao_count_recursive(&contract_edge(g, e).expect("edge present"))
        }
    }
}

/// `θ_{1/q}(q^{deg} φ_chr(G))`; at `q = 0` this is `φ_1`.
pub fn phi_chr_q(g: &BlockGraph, q: &Q) -> LinComb<SetComposition> {
    if q.is_zero() {
        return phi_hom(g, &vec![Q::one(); g.ground().len().max(1)]).expect("weights cover every size");
    }
    theta_q(&phi_chr(g).scale(&pow(q, g.deg() as i64)), &q.recip())
}

/// `Γ(G) = Σ_∼ ao(G|∼) G/∼`.
pub fn gamma(g: &BlockGraph) -> LinComb<BlockGraph> {
    gamma_signed(g, false)
}

/// `Γ′(G) = Σ_∼ (-1)^{cl(∼)+deg G} ao(G|∼) G/∼`, the inverse of [`gamma`].
pub fn gamma_inv(g: &BlockGraph) -> LinComb<BlockGraph> {
    gamma_signed(g, true)
}

fn gamma_signed(g: &BlockGraph, signed: bool) -> LinComb<BlockGraph> {
    let mut r = LinComb::zero();
    for e in admissible_equivalences(g) {
        let mut c = qi(ao_count(&restrict_classes_unchecked(g, &e)) as i64);
        if signed {
            c *= sign(e.len() + g.deg());
        }
        r.add_term(contract_unchecked(g, &e), c);
    }
    r
}

fn normalize_edge(g: &BlockGraph, e: Edge) -> Result<Edge> {
    let e = (e.0.min(e.1), e.0.max(e.1));
    if g.edges.contains(&e) {
        Ok(e)
    } else {
        Err(Error::Domain(format!("no edge {}-{}", e.0, e.1)))
    }
}

pub fn delete_edge(g: &BlockGraph, e: Edge) -> Result<BlockGraph> {
    let e = normalize_edge(g, e)?;
    let mut h = g.clone();
    h.edges.remove(&e);
    Ok(h)
}

/// Merges the two endpoints into one block; parallel edges collapse.
pub fn contract_edge(g: &BlockGraph, e: Edge) -> Result<BlockGraph> {
    let (a, b) = normalize_edge(g, e)?;
    let mut eq: Equivalence = Vec::new();
    for v in 0..g.deg() {
        if v == b {
            continue;
        }
        if v == a {
            eq.push(vec![a, b]);
        } else {
            eq.push(vec![v]);
        }
    }
    Ok(contract_unchecked(g, &eq))
}

/// Every block graph on `ground`.
pub fn graphs_on(ground: &LabelSet) -> Vec<BlockGraph> {
    let labels: Vec<&String> = ground.iter().collect();
    let mut out = BTreeSet::new();
    for p in set_partitions(labels.len()) {
        let blocks: Vec<LabelSet> = p
            .iter()
            .map(|grp| grp.iter().map(|&i| labels[i].clone()).collect())
            .collect();
        let n = blocks.len();
        let pairs: Vec<Edge> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for m in 0..(1u64 << pairs.len()) {
            let es = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| m >> k & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            out.insert(BlockGraph::canonical(blocks.clone(), es));
        }
    }
    out.into_iter().collect()
}

/// Marker type for the double bialgebra of block graphs.
pub struct Gr;

impl DoubleBialgebra for Gr {
    type B = BlockGraph;
    const NAME: &'static str = "Gr'";

    fn ground(x: &BlockGraph) -> LabelSet {
        x.ground()
    }
    fn unit() -> BlockGraph {
        BlockGraph::empty()
    }
    fn mul(x: &BlockGraph, y: &BlockGraph) -> LinComb<BlockGraph> {
        LinComb::basis(disjoint_union(x, y).expect("disjoint grounds"))
    }
    fn split(x: &BlockGraph, i: &LabelSet) -> LinComb<(BlockGraph, BlockGraph)> {
        let j: LabelSet = x.ground().difference(i).cloned().collect();
        match (restrict(x, i), restrict(x, &j)) {
            (Ok(Some(a)), Ok(Some(b))) => LinComb::basis((a, b)),
            _ => LinComb::zero(),
        }
    }
    fn delta(x: &BlockGraph) -> LinComb<(BlockGraph, BlockGraph)> {
        internal_delta(x)
    }
    fn eps_prime(x: &BlockGraph) -> Q {
        eps_prime(x)
    }
    fn degree(x: &BlockGraph) -> usize {
        x.deg()
    }
    fn basis_on(ground: &LabelSet) -> Vec<BlockGraph> {
        graphs_on(ground)
    }
    fn factors(x: &BlockGraph) -> Vec<BlockGraph> {
        x.components().iter().map(|c| x.induced(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::labelset;

    fn edge() -> BlockGraph {
        BlockGraph::of(&[&["A"], &["B"]], &[(0, 1)])
    }

    #[test]
    fn canonical_form_sorts_blocks() {
        let g = BlockGraph::of(&[&["b"], &["a"], &["c"]], &[(0, 2)]);
        assert_eq!(g.blocks()[0], labelset(&["a"]));
        assert!(g.edges().contains(&(1, 2)));
        assert!(BlockGraph::new(vec![labelset(&["a"]), labelset(&["a", "b"])], []).is_err());
        assert!(BlockGraph::new(vec![labelset(&["a"])], [(0, 0)]).is_err());
    }

    #[test]
    fn restriction_and_union() {
        let g = edge();
        let a = restrict(&g, &labelset(&["A"])).unwrap().unwrap();
        assert_eq!(a, BlockGraph::of(&[&["A"]], &[]));
        let h = BlockGraph::of(&[&["x", "y"]], &[]);
        assert_eq!(restrict(&h, &labelset(&["x"])).unwrap(), None);
        let u = disjoint_union(&g, &BlockGraph::of(&[&["C"]], &[])).unwrap();
        assert_eq!((u.deg(), u.edges().len()), (3, 1));
        assert_eq!(disjoint_union(&g, &BlockGraph::empty()).unwrap(), g);
    }

    #[test]
    fn equivalences() {
        assert_eq!(admissible_equivalences(&edge()).len(), 2);
        assert_eq!(admissible_equivalences(&BlockGraph::of(&[&["a"], &["b"]], &[])).len(), 1);
        let e = vec![vec![0, 1]];
        assert_eq!(contract(&edge(), &e).unwrap(), BlockGraph::of(&[&["A", "B"]], &[]));
        assert!(contract(&BlockGraph::of(&[&["a"], &["b"]], &[]), &e).is_err());
    }

    #[test]
    fn colorations_and_orientations() {
        assert_eq!(valid_colorations(&edge()), vec![vec![1, 2], vec![2, 1]]);
        let path = BlockGraph::of(&[&["A"], &["B"], &["C"]], &[(0, 1), (1, 2)]);
        assert_eq!(valid_colorations(&path).len(), 8);
        let tri = BlockGraph::of(&[&["A"], &["B"], &["C"]], &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(ao_count(&tri), 6);
        assert_eq!(ao_count_recursive(&tri), 6);
        assert_eq!(contract_edge(&tri, (0, 1)).unwrap().edges().len(), 1);
        assert!(delete_edge(&path, (0, 2)).is_err());
    }

    #[test]
    fn gamma_of_edge() {
        let want = LinComb::from_terms(vec![(edge(), qi(1)), (BlockGraph::of(&[&["A", "B"]], &[]), qi(2))]);
        assert_eq!(gamma(&edge()), want);
    }

    #[test]
    fn enumerated_graphs() {
        assert_eq!(graphs_on(&LabelSet::new()).len(), 1);
        assert_eq!(graphs_on(&labelset(&["a"])).len(), 1);
        assert_eq!(graphs_on(&labelset(&["a", "b"])).len(), 3);
    }
}

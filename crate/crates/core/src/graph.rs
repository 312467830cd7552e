//! Simple undirected graphs over `0..n` backed by per-vertex bitsets.
//!
//! Vertex ids are stable: deleting edges never renumbers vertices, so labels
//! picked by a branching rule stay meaningful in every child instance.

use std::fmt;

use thiserror::Error;

/// Largest graph accepted by [`are_isomorphic`].
pub const MAX_ISO_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0} is not present in the graph")]
    EdgeAbsent(Edge),
    #[error("graph has {n} vertices, limit is {limit}")]
    Oversize { n: usize, limit: usize },
}

/// An unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Builds a normalized edge. Panics if `u == v`.
    pub fn new(u: usize, v: usize) -> Self {
        Self::try_new(u, v).expect("edge endpoints must differ")
    }

    pub fn try_new(u: usize, v: usize) -> Result<Self, GraphError> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge { u, v }),
            std::cmp::Ordering::Greater => Ok(Edge { u: v, v: u }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(u)),
        }
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A set of edges kept as a sorted, duplicate-free vector.
///
/// The ordering of `EdgeSet` values is lexicographic on their sorted edges,
/// which the solver and `fmin` use for deterministic output.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet {
    edges: Vec<Edge>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `e`; returns `false` if it was already present.
    pub fn insert(&mut self, e: Edge) -> bool {
        match self.edges.binary_search(&e) {
            Ok(_) => false,
            Err(pos) => {
                self.edges.insert(pos, e);
                true
            }
        }
    }

    pub fn remove(&mut self, e: Edge) -> bool {
        match self.edges.binary_search(&e) {
            Ok(pos) => {
                self.edges.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        // both sorted: merge walk
        let mut it = other.edges.iter();
        'outer: for e in &self.edges {
            for o in it.by_ref() {
                if o == e {
                    continue 'outer;
                }
                if o > e {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = self.clone();
        out.extend(other.iter());
        out
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut edges: Vec<Edge> = iter.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        EdgeSet { edges }
    }
}

impl Extend<Edge> for EdgeSet {
    fn extend<I: IntoIterator<Item = Edge>>(&mut self, iter: I) {
        self.edges.extend(iter);
        self.edges.sort_unstable();
        self.edges.dedup();
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = Edge;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Edge>>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter().copied()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Fixed-width bitset over vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn with_capacity(n: usize) -> Self {
        VertexSet {
            words: vec![0; words_for(n)],
        }
    }

    fn from_words(words: &[u64]) -> Self {
        VertexSet {
            words: words.to_vec(),
        }
    }

    pub fn insert(&mut self, v: usize) {
        let w = v / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if let Some(w) = self.words.get_mut(v / 64) {
            *w &= !(1 << (v % 64));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet { words: Vec::new() };
        for v in iter {
            s.insert(v);
        }
        s
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Iterates the set bits of a word slice in increasing order.
pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &word)| {
        let mut w = word;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + bit)
        })
    })
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    m: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        Graph {
            n,
            stride,
            m: 0,
            rows: vec![0; n * stride],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(Edge::new(u, v));
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Adds edge `uv`; adding a present edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let e = Edge::try_new(u, v)?;
        self.insert(e);
        Ok(())
    }

    pub(crate) fn insert(&mut self, e: Edge) {
        if !self.has_edge(e.u, e.v) {
            self.set_bit(e.u, e.v, true);
            self.set_bit(e.v, e.u, true);
            self.m += 1;
        }
    }

    pub(crate) fn remove(&mut self, e: Edge) {
        if self.has_edge(e.u, e.v) {
            self.set_bit(e.u, e.v, false);
            self.set_bit(e.v, e.u, false);
            self.m -= 1;
        }
    }

    fn set_bit(&mut self, row: usize, col: usize, on: bool) {
        let w = &mut self.rows[row * self.stride + col / 64];
        if on {
            *w |= 1 << (col % 64);
        } else {
            *w &= !(1 << (col % 64));
        }
    }

    /// Adjacency test. Out-of-range or equal endpoints are never adjacent.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.stride + v / 64] & (1 << (v % 64)) != 0
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(VertexSet::from_words(self.row(v)))
    }

    /// Neighbors of `v` in increasing order. Panics on out-of-range `v`.
    pub fn neighbor_iter(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.neighbor_iter(u) {
                if v > u {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().into_iter().collect()
    }

    /// `G - F`: a copy of this graph without the edges of `f`.
    pub fn delete_edges(&self, f: &EdgeSet) -> Result<Graph, GraphError> {
        let mut out = self.clone();
        for e in f {
            if !self.contains_edge(e) {
                return Err(GraphError::EdgeAbsent(e));
            }
            out.remove(e);
        }
        Ok(out)
    }

    /// The subgraph induced by `vertices`, listed in the order given.
    ///
    /// Local vertex `i` of the result corresponds to `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Result<InducedSubgraph, GraphError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &x) in vertices.iter().enumerate() {
            for (j, &y) in vertices.iter().enumerate().skip(i + 1) {
                if x == y {
                    return Err(GraphError::SelfLoop(x));
                }
                if self.has_edge(x, y) {
                    g.insert(Edge::new(i, j));
                }
            }
        }
        Ok(InducedSubgraph {
            graph: g,
            ids: vertices.to_vec(),
        })
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let mut g = Graph::new(self.n);
        for e in self.edges() {
            g.insert(Edge::new(perm[e.u], perm[e.v]));
        }
        g
    }

    /// Sorted degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// An induced subgraph with the map from local ids back to host ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub ids: Vec<usize>,
}

impl InducedSubgraph {
    pub fn to_host(&self, local: Edge) -> Edge {
        Edge::new(self.ids[local.u], self.ids[local.v])
    }

    pub fn set_to_host(&self, local: &EdgeSet) -> EdgeSet {
        local.iter().map(|e| self.to_host(e)).collect()
    }
}

/// Brute-force isomorphism test for graphs on at most [`MAX_ISO_VERTICES`]
/// vertices.
///
/// Graphs with different vertex counts are never isomorphic; a matching
/// count above the limit is rejected.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool, GraphError> {
    if g1.n() != g2.n() {
        return Ok(false);
    }
    if g1.n() > MAX_ISO_VERTICES {
        return Err(GraphError::Oversize {
            n: g1.n(),
            limit: MAX_ISO_VERTICES,
        });
    }
    if g1.m() != g2.m() || g1.degree_sequence() != g2.degree_sequence() {
        return Ok(false);
    }
    let n = g1.n();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_mapping(g1, g2, 0, &mut image, &mut used))
}

// Assigns images to vertices 0..n of g1 in order, rejecting a partial map as
// soon as an already-mapped pair disagrees on adjacency.
fn extend_mapping(
    g1: &Graph,
    g2: &Graph,
    next: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = g1.n();
    if next == n {
        return true;
    }
    for cand in 0..n {
        if used[cand] || g1.degree(next) != g2.degree(cand) {
            continue;
        }
        let consistent =
            (0..next).all(|prev| g1.has_edge(prev, next) == g2.has_edge(image[prev], cand));
        if !consistent {
            continue;
        }
        image[next] = cand;
        used[cand] = true;
        if extend_mapping(g1, g2, next + 1, image, used) {
            return true;
        }
        used[cand] = false;
    }
    image[next] = usize::MAX;
    false
}

/// Small named graphs used throughout tests and the case analysis.
pub mod named {
    use super::Graph;

    /// `K_{1,3}` with center 0.
    pub fn claw() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    /// `K4` minus edge `1-3`: labels a=0, b=1, c=2, d=3.
    pub fn diamond() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0).unwrap();
        }
        g
    }

    /// Disjoint union of cliques with the given sizes, ids assigned in order.
    pub fn cluster(sizes: &[usize]) -> Graph {
        let n = sizes.iter().sum();
        let mut g = Graph::new(n);
        let mut base = 0;
        for &s in sizes {
            for u in base..base + s {
                for v in u + 1..base + s {
                    g.add_edge(u, v).unwrap();
                }
            }
            base += s;
        }
        g
    }

    /// Disjoint union of `a` and `b`, with `b` shifted by `a.n()`.
    pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
        let mut g = Graph::new(a.n() + b.n());
        for e in a.edges() {
            g.add_edge(e.u(), e.v()).unwrap();
        }
        for e in b.edges() {
            g.add_edge(e.u() + a.n(), e.v() + a.n()).unwrap();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use proptest::prelude::*;

    fn set(edges: &[(usize, usize)]) -> EdgeSet {
        edges.iter().map(|&(u, v)| Edge::new(u, v)).collect()
    }

    #[test]
    fn neighbors_examples() {
        assert_eq!(claw().neighbors(0).unwrap().to_vec(), vec![1, 2, 3]);
        assert!(Graph::new(4).neighbors(2).unwrap().is_empty());
        assert_eq!(diamond().neighbors(1).unwrap().to_vec(), vec![0, 2]);
        assert_eq!(
            claw().neighbors(4),
            Err(GraphError::VertexOutOfRange { vertex: 4, n: 4 })
        );
    }

    #[test]
    fn edge_is_normalized() {
        assert_eq!(Edge::new(3, 1), Edge::new(1, 3));
        assert_eq!(Edge::new(3, 1).endpoints(), (1, 3));
        assert_eq!(Edge::try_new(2, 2), Err(GraphError::SelfLoop(2)));
    }

    #[test]
    fn edge_set_semantics() {
        let mut s = EdgeSet::new();
        assert!(s.insert(Edge::new(0, 1)));
        assert!(!s.insert(Edge::new(1, 0)));
        assert!(s.insert(Edge::new(0, 2)));
        assert_eq!(s.len(), 2);
        assert!(set(&[(0, 2)]).is_subset(&s));
        assert!(!set(&[(0, 3)]).is_subset(&s));
        assert!(EdgeSet::new().is_subset(&s));
        assert!(s.remove(Edge::new(0, 1)));
        assert!(!s.remove(Edge::new(0, 1)));
    }

    #[test]
    fn delete_edges_examples() {
        let d = diamond();
        assert_eq!(d.delete_edges(&EdgeSet::new()).unwrap(), d);

        let tri = Graph::complete(3);
        assert_eq!(tri.delete_edges(&set(&[(0, 2)])).unwrap(), path(3));

        // chord removal leaves the 4-cycle a-b-c-d-a
        let c4 = d.delete_edges(&set(&[(0, 2)])).unwrap();
        assert_eq!(
            c4,
            Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
        );
        assert_eq!(d.m(), 5, "source graph must be untouched");

        assert_eq!(
            d.delete_edges(&set(&[(1, 3)])),
            Err(GraphError::EdgeAbsent(Edge::new(1, 3)))
        );
    }

    #[test]
    fn induced_examples() {
        let k4 = Graph::complete(4);
        let sub = k4.induced(&[0, 2, 3]).unwrap();
        assert_eq!(sub.graph, Graph::complete(3));
        assert_eq!(sub.ids, vec![0, 2, 3]);

        assert_eq!(k4.induced(&[]).unwrap().graph.n(), 0);

        let p = claw().induced(&[0, 1, 2]).unwrap();
        assert_eq!(p.graph.m(), 2);
        assert_eq!(p.graph.degree(0), 2);

        assert!(matches!(
            k4.induced(&[0, 9]),
            Err(GraphError::VertexOutOfRange { vertex: 9, .. })
        ));
    }

    #[test]
    fn isomorphism_examples() {
        let relabeled = claw().permute(&[2, 0, 3, 1]);
        assert!(are_isomorphic(&claw(), &relabeled).unwrap());
        assert!(!are_isomorphic(&claw(), &path(4)).unwrap());
        assert!(!are_isomorphic(&diamond(), &cycle(4)).unwrap());
        assert!(!are_isomorphic(&claw(), &path(3)).unwrap());
        assert!(matches!(
            are_isomorphic(&Graph::new(11), &Graph::new(11)),
            Err(GraphError::Oversize { n: 11, limit: 10 })
        ));
        // same degree sequence, different structure: C6 vs two triangles
        let two_tri = disjoint_union(&Graph::complete(3), &Graph::complete(3));
        assert!(!are_isomorphic(&cycle(6), &two_tri).unwrap());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut g = Graph::new(n);
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[i] {
                            g.add_edge(u, v).unwrap();
                        }
                        i += 1;
                    }
                }
                g
            })
        })
    }

    fn arb_graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
        arb_graph(max_n).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn adjacency_symmetric_irreflexive(g in arb_graph(12)) {
            let mut count = 0;
            for u in 0..g.n() {
                prop_assert!(!g.has_edge(u, u));
                for v in 0..g.n() {
                    prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                    count += g.has_edge(u, v) as usize;
                }
            }
            prop_assert_eq!(count, 2 * g.m());
        }

        #[test]
        fn delete_edges_drops_count(g in arb_graph(10), mask in any::<u64>()) {
            let f: EdgeSet = g.edges().into_iter().enumerate()
                .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
                .map(|(_, e)| e)
                .collect();
            let h = g.delete_edges(&f).unwrap();
            prop_assert_eq!(h.m(), g.m() - f.len());
            for e in g.edges() {
                prop_assert_eq!(h.contains_edge(e), !f.contains(e));
            }
        }

        #[test]
        fn induced_matches_host(g in arb_graph(10), mask in any::<u16>()) {
            let s: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
            let sub = g.induced(&s).unwrap();
            prop_assert_eq!(sub.graph.n(), s.len());
            for i in 0..s.len() {
                for j in 0..s.len() {
                    prop_assert_eq!(sub.graph.has_edge(i, j), g.has_edge(sub.ids[i], sub.ids[j]));
                }
            }
        }

        #[test]
        fn isomorphism_invariant_under_relabeling((g, perm) in arb_graph_and_perm(8)) {
            let h = g.permute(&perm);
            prop_assert!(are_isomorphic(&g, &g).unwrap());
            prop_assert!(are_isomorphic(&g, &h).unwrap());
            prop_assert!(are_isomorphic(&h, &g).unwrap());
        }

        #[test]
        fn isomorphism_symmetric(a in arb_graph(6), b in arb_graph(6)) {
            prop_assert_eq!(are_isomorphic(&a, &b).unwrap(), are_isomorphic(&b, &a).unwrap());
        }
    }
}

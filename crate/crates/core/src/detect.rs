//! Induced claw and diamond detection.

use crate::graph::{iter_bits, Edge, EdgeSet, Graph};

/// A center adjacent to three pairwise non-adjacent leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: [usize; 3],
}

impl ClawWitness {
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let [x, y, z] = self.leaves;
        x != y
            && y != z
            && x != z
            && self
                .leaves
                .iter()
                .all(|&l| l != self.center && g.has_edge(self.center, l))
            && !g.has_edge(x, y)
            && !g.has_edge(x, z)
            && !g.has_edge(y, z)
    }

    pub fn vertices(&self) -> [usize; 4] {
        [self.center, self.leaves[0], self.leaves[1], self.leaves[2]]
    }

    pub fn edges(&self) -> [Edge; 3] {
        self.leaves.map(|l| Edge::new(self.center, l))
    }
}

/// Four vertices inducing `K4` minus the edge `bd`.
///
/// `a` and `c` are the two vertices of degree three inside the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiamondWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl DiamondWitness {
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let Self { a, b, c, d } = *self;
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        distinct
            && g.has_edge(a, b)
            && g.has_edge(a, c)
            && g.has_edge(a, d)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && !g.has_edge(b, d)
    }

    pub fn vertices(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn edges(&self) -> [Edge; 5] {
        let Self { a, b, c, d } = *self;
        [
            Edge::new(a, b),
            Edge::new(a, c),
            Edge::new(a, d),
            Edge::new(b, c),
            Edge::new(c, d),
        ]
    }

    /// Same diamond with the roles of `a` and `c` exchanged.
    pub fn swap_ac(self) -> Self {
        Self {
            a: self.c,
            c: self.a,
            ..self
        }
    }

    /// Same diamond with the roles of `b` and `d` exchanged.
    pub fn swap_bd(self) -> Self {
        Self {
            b: self.d,
            d: self.b,
            ..self
        }
    }
}

/// Either kind of forbidden induced subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    Claw(ClawWitness),
    Diamond(DiamondWitness),
}

impl Obstruction {
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            Obstruction::Claw(w) => w.edges().to_vec(),
            Obstruction::Diamond(w) => w.edges().to_vec(),
        }
    }
}

fn first_bit_above(words: &[u64], lo: usize) -> Option<usize> {
    iter_bits(words).find(|&x| x > lo)
}

/// First induced claw in `(center, leaves)` lexicographic order.
pub fn find_claw(g: &Graph) -> Option<ClawWitness> {
    let stride = g.stride();
    let mut cand1 = vec![0u64; stride];
    let mut cand2 = vec![0u64; stride];
    for center in 0..g.n() {
        if g.degree(center) < 3 {
            continue;
        }
        let nbrs = g.row(center);
        for l1 in iter_bits(nbrs) {
            let r1 = g.row(l1);
            for i in 0..stride {
                cand1[i] = nbrs[i] & !r1[i];
            }
            for l2 in iter_bits(&cand1).filter(|&x| x > l1) {
                let r2 = g.row(l2);
                for i in 0..stride {
                    cand2[i] = cand1[i] & !r2[i];
                }
                if let Some(l3) = first_bit_above(&cand2, l2) {
                    let w = ClawWitness {
                        center,
                        leaves: [l1, l2, l3],
                    };
                    debug_assert!(w.is_valid_in(g));
                    return Some(w);
                }
            }
        }
    }
    None
}

/// First induced diamond in `(a, c, b, d)` lexicographic order with `a < c`
/// and `b < d`.
pub fn find_diamond(g: &Graph) -> Option<DiamondWitness> {
    let stride = g.stride();
    let mut common = vec![0u64; stride];
    let mut rest = vec![0u64; stride];
    for a in 0..g.n() {
        let ra = g.row(a);
        for c in iter_bits(ra).filter(|&c| c > a) {
            let rc = g.row(c);
            let mut shared = 0;
            for i in 0..stride {
                common[i] = ra[i] & rc[i];
                shared += common[i].count_ones();
            }
            if shared < 2 {
                continue;
            }
            for b in iter_bits(&common) {
                let rb = g.row(b);
                for i in 0..stride {
                    rest[i] = common[i] & !rb[i];
                }
                if let Some(d) = first_bit_above(&rest, b) {
                    let w = DiamondWitness { a, b, c, d };
                    debug_assert!(w.is_valid_in(g));
                    return Some(w);
                }
            }
        }
    }
    None
}

/// A claw if one exists, otherwise a diamond.
pub fn find_obstruction(g: &Graph) -> Option<Obstruction> {
    find_claw(g)
        .map(Obstruction::Claw)
        .or_else(|| find_diamond(g).map(Obstruction::Diamond))
}

/// True iff `g` has neither an induced claw nor an induced diamond.
pub fn is_free(g: &Graph) -> bool {
    find_claw(g).is_none() && find_diamond(g).is_none()
}

/// Edges of `g` that lie inside some induced claw or diamond.
pub fn obstructed_edges(g: &Graph) -> EdgeSet {
    let mut out = EdgeSet::new();
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let quad = [a, b, c, d];
                    if quad_is_obstruction(g, quad) {
                        for (i, &x) in quad.iter().enumerate() {
                            for &y in &quad[i + 1..] {
                                if g.has_edge(x, y) {
                                    out.insert(Edge::new(x, y));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

// Claw: 3 edges sharing one vertex of degree 3. Diamond: 5 edges.
fn quad_is_obstruction(g: &Graph, quad: [usize; 4]) -> bool {
    let mut deg = [0usize; 4];
    let mut m = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(quad[i], quad[j]) {
                deg[i] += 1;
                deg[j] += 1;
                m += 1;
            }
        }
    }
    m == 5 || (m == 3 && deg.contains(&3))
}

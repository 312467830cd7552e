//! Inclusion-minimal deletion sets of small host graphs.
//!
//! Every deletion set of `H` must remove at least one edge from each induced
//! claw or diamond of `H`. Searching over "delete one edge of the first
//! remaining obstruction" therefore reaches every minimal deletion set.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock, RwLock};

use crate::detect::is_free;
use crate::graph::{Edge, EdgeSet, Graph, GraphError};

/// Largest host accepted by [`minimal_deletion_sets`].
pub const MAX_HOST_VERTICES: usize = 8;

/// All inclusion-minimal deletion sets of `host`, in `(size, lexicographic)`
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalDeletionFamily {
    pub host: Graph,
    pub sets: Vec<EdgeSet>,
}

impl MinimalDeletionFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Sizes of the member sets, ascending.
    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(EdgeSet::len).collect()
    }

    pub fn contains(&self, f: &EdgeSet) -> bool {
        self.sets.binary_search_by(|s| order(s, f)).is_ok()
    }

    /// Checks every family invariant against the host. Used in tests and
    /// debug builds.
    pub fn validate(&self) -> Result<(), String> {
        for f in &self.sets {
            let g = self.host.delete_edges(f).map_err(|e| format!("{f}: {e}"))?;
            if !is_free(&g) {
                return Err(format!("{f} is not a deletion set"));
            }
            for e in f {
                let mut smaller = f.clone();
                smaller.remove(e);
                if is_free(&self.host.delete_edges(&smaller).unwrap()) {
                    return Err(format!("{f} is not minimal: {e} is redundant"));
                }
            }
        }
        for (i, f) in self.sets.iter().enumerate() {
            for g in &self.sets[i + 1..] {
                if f.is_subset(g) || g.is_subset(f) {
                    return Err(format!("{f} and {g} are nested"));
                }
            }
        }
        if self.sets.windows(2).any(|w| order(&w[0], &w[1]).is_ge()) {
            return Err("family is not in canonical order".into());
        }
        Ok(())
    }
}

fn order(x: &EdgeSet, y: &EdgeSet) -> std::cmp::Ordering {
    x.len().cmp(&y.len()).then_with(|| x.cmp(y))
}

/// Computes the complete family of inclusion-minimal deletion sets of `h`.
pub fn minimal_deletion_sets(h: &Graph) -> Result<MinimalDeletionFamily, GraphError> {
    if h.n() > MAX_HOST_VERTICES {
        return Err(GraphError::Oversize {
            n: h.n(),
            limit: MAX_HOST_VERTICES,
        });
    }
    let sets = enumerate(h);
    let family = MinimalDeletionFamily {
        host: h.clone(),
        sets,
    };
    debug_assert_eq!(family.validate(), Ok(()));
    Ok(family)
}

// Level-by-level search over edge masks: level `i` holds the size-`i`
// sets reachable by deleting one edge of some remaining obstruction per
// step. A free set that contains no smaller free set is minimal, and every
// minimal set is reached at its own level.
fn enumerate(h: &Graph) -> Vec<EdgeSet> {
    let host = MaskedHost::new(h);
    let mut minimal: Vec<u32> = Vec::new();
    let mut level: Vec<u32> = vec![0];
    while !level.is_empty() {
        let mut next: HashSet<u32> = HashSet::new();
        for &deleted in &level {
            if minimal.iter().any(|&f| f & !deleted == 0) {
                continue;
            }
            match host.obstruction(deleted) {
                None => minimal.push(deleted),
                Some(obs) => {
                    let mut rest = obs;
                    while rest != 0 {
                        next.insert(deleted | 1 << rest.trailing_zeros());
                        rest &= rest - 1;
                    }
                }
            }
        }
        level = next.into_iter().collect();
    }
    let mut sets: Vec<EdgeSet> = minimal.into_iter().map(|m| host.to_set(m)).collect();
    sets.sort_by(order);
    sets
}

// Pair slots of a 4-vertex subset in the order 01 02 03 12 13 23.
const QUAD_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

// Indexed by the 6-bit pattern of present pairs: claw or diamond.
const fn obstruction_table() -> [bool; 64] {
    let mut table = [false; 64];
    let mut pat = 0;
    while pat < 64 {
        let mut deg = [0u32; 4];
        let mut i = 0;
        while i < 6 {
            if pat >> i & 1 == 1 {
                deg[QUAD_PAIRS[i].0] += 1;
                deg[QUAD_PAIRS[i].1] += 1;
            }
            i += 1;
        }
        let m = (pat as u32).count_ones();
        let center = deg[0] == 3 || deg[1] == 3 || deg[2] == 3 || deg[3] == 3;
        table[pat] = m == 5 || (m == 3 && center);
        pat += 1;
    }
    table
}

const OBSTRUCTION: [bool; 64] = obstruction_table();

/// Host edges numbered `0..m`; each 4-vertex subset with at least three
/// edges is stored as the edge index in each of its pair slots.
struct MaskedHost {
    edges: Vec<Edge>,
    quads: Vec<[Option<u8>; 6]>,
}

impl MaskedHost {
    fn new(h: &Graph) -> Self {
        let edges = h.edges();
        let index =
            |u: usize, v: usize| edges.binary_search(&Edge::new(u, v)).ok().map(|i| i as u8);
        let n = h.n();
        let mut quads = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let q = [a, b, c, d];
                        let slots = QUAD_PAIRS.map(|(i, j)| index(q[i], q[j]));
                        if slots.iter().flatten().count() >= 3 {
                            quads.push(slots);
                        }
                    }
                }
            }
        }
        MaskedHost { edges, quads }
    }

    // Remaining edges of the first claw of `h - deleted`, else of the first
    // diamond.
    fn obstruction(&self, deleted: u32) -> Option<u32> {
        let mut diamond = None;
        for slots in &self.quads {
            let mut pattern = 0usize;
            let mut mask = 0u32;
            for (i, slot) in slots.iter().enumerate() {
                if let Some(e) = *slot {
                    if deleted >> e & 1 == 0 {
                        pattern |= 1 << i;
                        mask |= 1 << e;
                    }
                }
            }
            if OBSTRUCTION[pattern] {
                if mask.count_ones() == 3 {
                    return Some(mask);
                }
                diamond.get_or_insert(mask);
            }
        }
        diamond
    }

    fn to_set(&self, mask: u32) -> EdgeSet {
        (0..self.edges.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.edges[i])
            .collect()
    }
}

type CacheKey = (usize, u32);
type Cache = RwLock<HashMap<CacheKey, Arc<Vec<Vec<(u8, u8)>>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

// Labeled adjacency pattern of a host on at most 8 vertices (28 pair bits).
fn pattern_key(h: &Graph) -> CacheKey {
    let mut bits = 0u32;
    let mut i = 0;
    for u in 0..h.n() {
        for v in u + 1..h.n() {
            if h.has_edge(u, v) {
                bits |= 1 << i;
            }
            i += 1;
        }
    }
    (h.n(), bits)
}

/// Minimal deletion sets of `g[vertices]`, expressed in `g`'s vertex ids.
///
/// Results are memoized per labeled host pattern: the branching rules always
/// list host vertices in role order, so recurring configurations map to the
/// same key. The cache is shared and safe under concurrent use.
pub fn minimal_deletion_sets_in(g: &Graph, vertices: &[usize]) -> Result<Vec<EdgeSet>, GraphError> {
    if vertices.len() > MAX_HOST_VERTICES {
        return Err(GraphError::Oversize {
            n: vertices.len(),
            limit: MAX_HOST_VERTICES,
        });
    }
    let local = g.induced(vertices)?;
    let key = pattern_key(&local.graph);

    let cached = cache().read().unwrap().get(&key).cloned();
    let sets = match cached {
        Some(sets) => sets,
        None => {
            let fam = minimal_deletion_sets(&local.graph)?;
            let compact: Vec<Vec<(u8, u8)>> = fam
                .sets
                .iter()
                .map(|f| f.iter().map(|e| (e.u() as u8, e.v() as u8)).collect())
                .collect();
            let compact = Arc::new(compact);
            cache().write().unwrap().insert(key, Arc::clone(&compact));
            compact
        }
    };
    Ok(sets
        .iter()
        .map(|f| {
            f.iter()
                .map(|&(u, v)| Edge::new(local.ids[u as usize], local.ids[v as usize]))
                .collect()
        })
        .collect())
}

//! Seeded instance generators.
//!
//! Output is a function of the generator parameters and the seed alone. The
//! generator is SplitMix64 (Steele, Lea, Flood 2014) with a fixed sequence of
//! draws, so fixtures are byte-identical across platforms and toolchains.

use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::graph::{named, Edge, Graph};
use crate::io::render_instance;

/// SplitMix64 with the fixed derived draws used by the generators.
///
/// Bounded and real draws are defined here rather than through `rand`'s
/// distributions, whose algorithms may change between releases.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    core: rand_xoshiro::SplitMix64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 {
            core: rand_xoshiro::SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.core.next_u64()
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` by rejection sampling. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    /// `G(n, p)`: every vertex pair independently with probability `p`.
    Random { n: usize, p: f64, seed: u64 },
    /// Disjoint cliques plus `k` uniformly chosen cross-clique edges.
    Planted {
        cliques: Vec<usize>,
        k: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("cannot plant {k} edges: only {available} non-edges exist")]
    TooManyPlanted { k: usize, available: usize },
    #[error("clique sizes must be positive")]
    EmptyClique,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub graph: Graph,
    /// Edges added to the free base graph (planted only), in draw order.
    pub planted: Vec<Edge>,
    pub comments: Vec<String>,
}

impl Generated {
    pub fn render(&self) -> String {
        render_instance(&self.graph, &self.comments)
    }
}

pub fn random_graph(n: usize, p: f64, rng: &mut SplitMix64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.bernoulli(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated, GenError> {
    match *spec {
        GeneratorSpec::Random { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GenError::Probability(p));
            }
            let mut rng = SplitMix64::new(seed);
            let graph = random_graph(n, p, &mut rng);
            Ok(Generated {
                graph,
                planted: Vec::new(),
                comments: vec![format!("generator random n={n} p={p} seed={seed}")],
            })
        }
        GeneratorSpec::Planted {
            ref cliques,
            k,
            seed,
        } => {
            if cliques.contains(&0) {
                return Err(GenError::EmptyClique);
            }
            let mut graph = named::cluster(cliques);
            let mut absent: Vec<Edge> = Vec::new();
            for u in 0..graph.n() {
                for v in u + 1..graph.n() {
                    if !graph.has_edge(u, v) {
                        absent.push(Edge::new(u, v));
                    }
                }
            }
            if k > absent.len() {
                return Err(GenError::TooManyPlanted {
                    k,
                    available: absent.len(),
                });
            }
            // partial Fisher-Yates over the absent pairs
            let mut rng = SplitMix64::new(seed);
            for i in 0..k {
                let j = i + rng.below((absent.len() - i) as u64) as usize;
                absent.swap(i, j);
            }
            absent.truncate(k);
            for &e in &absent {
                graph.add_edge(e.u(), e.v()).unwrap();
            }
            let sizes: Vec<String> = cliques.iter().map(usize::to_string).collect();
            let mut comments = vec![format!(
                "generator planted cliques={} k={k} seed={seed}",
                sizes.join(",")
            )];
            comments.extend(
                absent
                    .iter()
                    .map(|e| format!("planted {} {}", e.u() + 1, e.v() + 1)),
            );
            Ok(Generated {
                graph,
                planted: absent,
                comments,
            })
        }
    }
}

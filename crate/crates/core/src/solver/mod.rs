//! Exact solvers for {claw, diamond}-free edge deletion.
//!
//! * [`solve`] runs the seven-rule branching algorithm.
//! * [`baseline_solve`] branches on every edge of any obstruction.
//! * [`oracle_solve`] tries every edge subset up to the budget.

mod baseline;
mod oracle;
pub mod rules;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::detect::is_free;
use crate::graph::{Edge, EdgeSet, Graph};

pub use baseline::{baseline_solve, baseline_solve_counted};
pub use oracle::{minimum_deletion_size, oracle_solve, OracleError, ORACLE_SUBSET_LIMIT};
pub use rules::{
    are_twins, find_one_sided_vertices, plan, rule_claw, rule_single_witness, rule_twins,
    rule_two_witnesses, Branching, Rule, RuleError, Step, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    /// Deletion budget; negative budgets are accepted and answered `No`.
    pub k: i64,
}

impl Instance {
    pub fn new(graph: Graph, k: i64) -> Self {
        Instance { graph, k }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A deletion set of size at most `k`.
    Yes(EdgeSet),
    No,
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, SolveOutcome::Yes(_))
    }

    pub fn certificate(&self) -> Option<&EdgeSet> {
        match self {
            SolveOutcome::Yes(f) => Some(f),
            SolveOutcome::No => None,
        }
    }
}

/// One rule application on the path from the root to the accepting leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub witness: Witness,
    pub branch: EdgeSet,
    /// Budget before the branch was taken.
    pub k: i64,
}

/// Root-to-leaf path of an accepted search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleTrace {
    pub steps: Vec<TraceStep>,
}

impl RuleTrace {
    /// Re-applies every branch set to `root`, yielding the leaf graph.
    pub fn replay(&self, root: &Graph) -> Graph {
        self.steps.iter().fold(root.clone(), |g, step| {
            g.delete_edges(&step.branch)
                .expect("trace branch edges exist in the replayed graph")
        })
    }

    pub fn certificate(&self) -> EdgeSet {
        let mut out = EdgeSet::new();
        for step in &self.steps {
            out.extend(step.branch.iter());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Explore sibling branches near the root on the rayon pool.
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    /// Present iff the outcome is `Yes`.
    pub trace: Option<RuleTrace>,
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// How often each rule fired, indexed by `Rule::id() - 1`.
    pub rule_counts: [u64; 7],
}

/// Decides the instance with the branching algorithm.
pub fn solve(inst: &Instance) -> SolveOutcome {
    solve_with(inst, SolveOptions::default()).outcome
}

pub fn solve_with(inst: &Instance, opts: SolveOptions) -> SolveReport {
    let counters = Counters::default();
    let mut steps = Vec::new();
    let found = if opts.parallel {
        let stop = AtomicBool::new(false);
        parallel_search(&inst.graph, inst.k, 0, &counters, &stop, &mut steps)
    } else {
        let mut g = inst.graph.clone();
        search(&mut g, inst.k, &counters, None, &mut steps)
    };
    let (outcome, trace) = if found {
        let trace = RuleTrace { steps };
        let cert = trace.certificate();
        assert!(
            check_certificate(&inst.graph, &cert, inst.k),
            "solver produced an invalid certificate {cert}"
        );
        (SolveOutcome::Yes(cert), Some(trace))
    } else {
        (SolveOutcome::No, None)
    };
    SolveReport {
        outcome,
        trace,
        nodes: counters.nodes.load(Ordering::Relaxed),
        rule_counts: std::array::from_fn(|i| counters.rules[i].load(Ordering::Relaxed)),
    }
}

#[derive(Default)]
struct Counters {
    nodes: AtomicU64,
    rules: [AtomicU64; 7],
}

impl Counters {
    fn record(&self, rule: Rule) {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        self.rules[rule as usize].fetch_add(1, Ordering::Relaxed);
    }
}

// Depth-first, first YES wins. `g` is restored before returning.
fn search(
    g: &mut Graph,
    k: i64,
    counters: &Counters,
    stop: Option<&AtomicBool>,
    path: &mut Vec<TraceStep>,
) -> bool {
    if stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
        return false;
    }
    let step = plan(g, k);
    counters.record(step.rule());
    let branching = match step {
        Step::No => return false,
        Step::Yes => return true,
        Step::Branch(b) => b,
    };
    for f in &branching.sets {
        for e in f {
            g.remove(e);
        }
        path.push(TraceStep {
            rule: branching.rule,
            witness: branching.witness,
            branch: f.clone(),
            k,
        });
        let found = search(g, k - f.len() as i64, counters, stop, path);
        for e in f {
            g.insert(e);
        }
        if found {
            return true;
        }
        path.pop();
    }
    false
}

const PARALLEL_DEPTH: usize = 3;

fn parallel_search(
    g: &Graph,
    k: i64,
    depth: usize,
    counters: &Counters,
    stop: &AtomicBool,
    path: &mut Vec<TraceStep>,
) -> bool {
    if depth >= PARALLEL_DEPTH {
        let mut work = g.clone();
        return search(&mut work, k, counters, Some(stop), path);
    }
    if stop.load(Ordering::Relaxed) {
        return false;
    }
    let step = plan(g, k);
    counters.record(step.rule());
    let branching = match step {
        Step::No => return false,
        Step::Yes => {
            stop.store(true, Ordering::Relaxed);
            return true;
        }
        Step::Branch(b) => b,
    };
    let hit = branching.sets.par_iter().find_map_any(|f| {
        let child = g.delete_edges(f).expect("branch edges are present");
        let mut sub = vec![TraceStep {
            rule: branching.rule,
            witness: branching.witness,
            branch: f.clone(),
            k,
        }];
        if parallel_search(
            &child,
            k - f.len() as i64,
            depth + 1,
            counters,
            stop,
            &mut sub,
        ) {
            stop.store(true, Ordering::Relaxed);
            Some(sub)
        } else {
            None
        }
    });
    match hit {
        Some(sub) => {
            path.extend(sub);
            true
        }
        None => false,
    }
}

/// The first condition a claimed certificate violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotAnEdge(Edge),
    TooLarge { size: usize, k: i64 },
    NotFree,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotAnEdge(e) => write!(f, "{e} is not an edge of the graph"),
            Violation::TooLarge { size, k } => write!(f, "size {size} exceeds budget {k}"),
            Violation::NotFree => f.write_str("graph is not claw- and diamond-free after deletion"),
        }
    }
}

pub fn certificate_violation(g: &Graph, f: &EdgeSet, k: i64) -> Option<Violation> {
    if let Some(e) = f.iter().find(|&e| !g.contains_edge(e)) {
        return Some(Violation::NotAnEdge(e));
    }
    if f.len() as i64 > k {
        return Some(Violation::TooLarge { size: f.len(), k });
    }
    let rest = g.delete_edges(f).expect("membership checked");
    if !is_free(&rest) {
        return Some(Violation::NotFree);
    }
    None
}

/// `f ⊆ E(g)`, `|f| <= k`, and `g - f` is free.
pub fn check_certificate(g: &Graph, f: &EdgeSet, k: i64) -> bool {
    certificate_violation(g, f, k).is_none()
}

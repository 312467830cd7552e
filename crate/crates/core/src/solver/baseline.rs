//! The simple five-way branching: delete any edge of the first obstruction.

use super::{check_certificate, Instance, SolveOutcome};
use crate::detect::find_obstruction;
use crate::graph::{EdgeSet, Graph};

pub fn baseline_solve(inst: &Instance) -> SolveOutcome {
    baseline_solve_counted(inst).0
}

/// Like [`baseline_solve`], also returning the number of search nodes.
pub fn baseline_solve_counted(inst: &Instance) -> (SolveOutcome, u64) {
    let mut g = inst.graph.clone();
    let mut deleted = EdgeSet::new();
    let mut nodes = 0;
    let outcome = if branch(&mut g, inst.k, &mut deleted, &mut nodes) {
        assert!(check_certificate(&inst.graph, &deleted, inst.k));
        SolveOutcome::Yes(deleted)
    } else {
        SolveOutcome::No
    };
    (outcome, nodes)
}

fn branch(g: &mut Graph, k: i64, deleted: &mut EdgeSet, nodes: &mut u64) -> bool {
    *nodes += 1;
    if k < 0 {
        return false;
    }
    let Some(obs) = find_obstruction(g) else {
        return true;
    };
    for e in obs.edges() {
        g.remove(e);
        deleted.insert(e);
        if branch(g, k - 1, deleted, nodes) {
            g.insert(e);
            return true;
        }
        deleted.remove(e);
        g.insert(e);
    }
    false
}

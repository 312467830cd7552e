//! Exhaustive ground truth: every edge subset of size `0..=k`, smallest first.

use thiserror::Error;

use super::{Instance, SolveOutcome};
use crate::detect::is_free;
use crate::graph::{Edge, Graph};

/// Maximum number of subsets the oracle will examine.
pub const ORACLE_SUBSET_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{subsets} candidate subsets exceed the oracle limit of {limit}")]
    Oversize { subsets: u128, limit: u128 },
}

fn subsets_up_to(m: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 0..=k.min(m) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    total
}

/// Returns the first deletion set found in (size, lexicographic) order, so a
/// `Yes` certificate always has minimum size.
pub fn oracle_solve(inst: &Instance) -> Result<SolveOutcome, OracleError> {
    if inst.k < 0 {
        return Ok(SolveOutcome::No);
    }
    let edges = inst.graph.edges();
    let m = edges.len();
    let k = (inst.k as u64).min(m as u64) as usize;
    let subsets = subsets_up_to(m, k);
    if subsets > ORACLE_SUBSET_LIMIT {
        return Err(OracleError::Oversize {
            subsets,
            limit: ORACLE_SUBSET_LIMIT,
        });
    }
    let mut work = inst.graph.clone();
    for size in 0..=k {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if frees(&mut work, &edges, &idx) {
                return Ok(SolveOutcome::Yes(idx.iter().map(|&i| edges[i]).collect()));
            }
            if !next_combination(&mut idx, m) {
                break;
            }
        }
    }
    Ok(SolveOutcome::No)
}

fn frees(g: &mut Graph, edges: &[Edge], idx: &[usize]) -> bool {
    for &i in idx {
        g.remove(edges[i]);
    }
    let free = is_free(g);
    for &i in idx {
        g.insert(edges[i]);
    }
    free
}

// Advances `idx` to the next k-combination of 0..m in lexicographic order.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimum deletion size, if at most `max_k`.
pub fn minimum_deletion_size(g: &Graph, max_k: i64) -> Result<Option<usize>, OracleError> {
    match oracle_solve(&Instance::new(g.clone(), max_k))? {
        SolveOutcome::Yes(f) => Ok(Some(f.len())),
        SolveOutcome::No => Ok(None),
    }
}

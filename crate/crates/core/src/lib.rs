//! Exact solver for {claw, diamond}-free edge deletion.
//!
//! Given a graph `G` and a budget `k`, decide whether deleting at most `k`
//! edges leaves no induced claw (`K_{1,3}`) and no induced diamond (`K4`
//! minus an edge). The main solver is a seven-rule bounded search tree whose
//! worst branching vector is `(1,1,1,2,2)`, giving `O*(3.562^k)` time.

pub mod analysis;
pub mod cli;
pub mod detect;
pub mod fmin;
pub mod gen;
pub mod graph;
pub mod io;
pub mod solver;

pub use detect::{find_claw, find_diamond, is_free, ClawWitness, DiamondWitness};
pub use fmin::{minimal_deletion_sets, MinimalDeletionFamily};
pub use graph::{are_isomorphic, Edge, EdgeSet, Graph, GraphError, VertexSet};
pub use solver::{baseline_solve, check_certificate, oracle_solve, solve, Instance, SolveOutcome};

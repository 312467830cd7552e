//! Command-line front end.
//!
//! Exit codes: 0 for YES / pass, 1 for NO / fail, 2 for usage or input
//! errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{render_records, render_report, verify_claims};
use crate::fmin::minimal_deletion_sets;
use crate::gen::{generate, GeneratorSpec};
use crate::graph::Graph;
use crate::io::{parse_edge_list, parse_instance, render_edges};
use crate::solver::{
    baseline_solve_counted, certificate_violation, oracle_solve, solve_with, Instance,
    SolveOptions, SolveOutcome,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cdfree", version, about = "{claw, diamond}-free edge deletion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether at most k edge deletions make the graph free.
    Solve(SolveArgs),
    /// Same as `solve --oracle`.
    Oracle {
        file: PathBuf,
        #[arg(short)]
        k: i64,
    },
    /// Verify a deletion set against a graph and budget.
    Check {
        file: PathBuf,
        deletion: PathBuf,
        #[arg(short)]
        k: i64,
    },
    /// List all inclusion-minimal deletion sets of a small graph.
    Fmin { file: PathBuf },
    /// Recompute every rule's branching number and the two-witness cases.
    Analyze {
        /// Emit key=value records instead of the text table.
        #[arg(long)]
        kv: bool,
    },
    /// Generate an instance file on stdout.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub file: PathBuf,
    #[arg(short)]
    pub k: i64,
    /// Use the exhaustive subset oracle.
    #[arg(long, conflicts_with = "baseline")]
    pub oracle: bool,
    /// Use the five-way obstruction branching.
    #[arg(long)]
    pub baseline: bool,
    /// Print the rule trace of the accepting branch to stderr.
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Planted {
        /// Comma-separated clique sizes, e.g. 6,6,4.
        #[arg(long, value_delimiter = ',', required = true)]
        cliques: Vec<usize>,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs a parsed command, writing normal output to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match cmd {
        Command::Solve(args) => cmd_solve(&args, out, err),
        Command::Oracle { file, k } => cmd_solve(
            &SolveArgs {
                file,
                k,
                oracle: true,
                baseline: false,
                trace: false,
                parallel: false,
            },
            out,
            err,
        ),
        Command::Check { file, deletion, k } => {
            let g = read_graph(&file)?;
            let text = std::fs::read_to_string(&deletion)
                .map_err(|e| format!("{}: {e}", deletion.display()))?;
            let f = parse_edge_list(&text).map_err(|e| format!("{}: {e}", deletion.display()))?;
            match certificate_violation(&g, &f, k) {
                None => {
                    writeln!(out, "PASS").map_err(io)?;
                    Ok(EXIT_YES)
                }
                Some(v) => {
                    writeln!(out, "FAIL: {v}").map_err(io)?;
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Fmin { file } => {
            let g = read_graph(&file)?;
            let fam = minimal_deletion_sets(&g).map_err(|e| e.to_string())?;
            for f in &fam.sets {
                let edges: Vec<String> = f
                    .iter()
                    .map(|e| format!("{}-{}", e.u() + 1, e.v() + 1))
                    .collect();
                writeln!(out, "{{{}}}", edges.join(" ")).map_err(io)?;
            }
            let sizes: Vec<String> = fam.sizes().iter().map(usize::to_string).collect();
            writeln!(out, "vector ({})", sizes.join(",")).map_err(io)?;
            Ok(EXIT_YES)
        }
        Command::Analyze { kv } => {
            let report = verify_claims();
            if kv {
                write!(out, "{}", render_records(&report)).map_err(io)?;
            } else {
                write!(out, "{}", render_report(&report)).map_err(io)?;
                writeln!(out).map_err(io)?;
                for c in &report.claims {
                    let status = if c.pass { "PASS" } else { "FAIL" };
                    writeln!(out, "{status} {}: {}", c.name, c.detail).map_err(io)?;
                }
            }
            Ok(if report.all_pass() { EXIT_YES } else { EXIT_NO })
        }
        Command::Gen(GenArgs { kind }) => {
            let spec = match kind {
                GenKind::Random { n, p, seed } => GeneratorSpec::Random { n, p, seed },
                GenKind::Planted { cliques, k, seed } => {
                    GeneratorSpec::Planted { cliques, k, seed }
                }
            };
            let generated = generate(&spec).map_err(|e| e.to_string())?;
            write!(out, "{}", generated.render()).map_err(io)?;
            Ok(EXIT_YES)
        }
    }
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    if args.k < 0 {
        return Err(format!("budget must be non-negative, got {}", args.k));
    }
    let g = read_graph(&args.file)?;
    let inst = Instance::new(g, args.k);
    let outcome = if args.oracle {
        oracle_solve(&inst).map_err(|e| e.to_string())?
    } else if args.baseline {
        let (outcome, nodes) = baseline_solve_counted(&inst);
        if args.trace {
            writeln!(err, "c nodes {nodes}").map_err(io)?;
        }
        outcome
    } else {
        let report = solve_with(
            &inst,
            SolveOptions {
                parallel: args.parallel,
            },
        );
        if args.trace {
            writeln!(err, "c nodes {}", report.nodes).map_err(io)?;
            for (i, c) in report.rule_counts.iter().enumerate() {
                writeln!(err, "c rule {} fired {c}", i + 1).map_err(io)?;
            }
            if let Some(trace) = &report.trace {
                for step in &trace.steps {
                    let edges: Vec<String> = step
                        .branch
                        .iter()
                        .map(|e| format!("{}-{}", e.u() + 1, e.v() + 1))
                        .collect();
                    writeln!(
                        err,
                        "c step {} k={} {} branch {{{}}}",
                        step.rule,
                        step.k,
                        step.witness.map(|v| v + 1),
                        edges.join(" ")
                    )
                    .map_err(io)?;
                }
            }
        }
        report.outcome
    };
    match outcome {
        SolveOutcome::Yes(f) => {
            writeln!(out, "YES").map_err(io)?;
            write!(out, "{}", render_edges(&f)).map_err(io)?;
            Ok(EXIT_YES)
        }
        SolveOutcome::No => {
            writeln!(out, "NO").map_err(io)?;
            Ok(EXIT_NO)
        }
    }
}

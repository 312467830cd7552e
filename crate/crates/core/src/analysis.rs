//! Branching numbers and the case analysis behind the running-time bound.

use std::fmt;

use thiserror::Error;

use crate::detect::{find_claw, DiamondWitness};
use crate::fmin::{minimal_deletion_sets, MinimalDeletionFamily};
use crate::graph::{named, EdgeSet, Graph};
use crate::solver::{rule_claw, rule_single_witness, rule_twins, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VectorError {
    #[error("branching vector must be non-empty")]
    Empty,
    #[error("branch costs must be at least 1")]
    ZeroCost,
}

/// Budget decreases of a rule's branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingVector(Vec<usize>);

impl BranchingVector {
    pub fn new(mut costs: Vec<usize>) -> Result<Self, VectorError> {
        if costs.is_empty() {
            return Err(VectorError::Empty);
        }
        if costs.contains(&0) {
            return Err(VectorError::ZeroCost);
        }
        costs.sort_unstable();
        Ok(BranchingVector(costs))
    }

    pub fn costs(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum_i x^(-cost_i) - 1`; strictly decreasing in `x` on `[1, inf)`.
    pub fn residual(&self, x: f64) -> f64 {
        self.0.iter().map(|&c| x.powi(-(c as i32))).sum::<f64>() - 1.0
    }
}

impl fmt::Display for BranchingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

const BISECTION_STEPS: usize = 200;

/// The unique `x >= 1` with `sum_i x^(-cost_i) = 1`.
///
/// Found by bisection on `[1, p]` with `p` the number of branches: the
/// residual is non-negative at 1 and non-positive at `p`.
pub fn branching_number(v: &BranchingVector) -> f64 {
    let (mut lo, mut hi) = (1.0f64, v.len() as f64);
    for _ in 0..BISECTION_STEPS {
        if hi - lo <= 1e-13 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if v.residual(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Which of `b`, `d` the vertex `t` sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TProfile {
    B,
    BD,
}

/// Neighborhood of `s` in the diamond `{a, b, c, d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SProfile {
    AB,
    AD,
    ABD,
    CB,
    CD,
    CBD,
}

impl SProfile {
    pub const ALL: [SProfile; 6] = [
        SProfile::AB,
        SProfile::AD,
        SProfile::ABD,
        SProfile::CB,
        SProfile::CD,
        SProfile::CBD,
    ];

    fn label(self) -> &'static str {
        match self {
            SProfile::AB => "ab",
            SProfile::AD => "ad",
            SProfile::ABD => "abd",
            SProfile::CB => "cb",
            SProfile::CD => "cd",
            SProfile::CBD => "cbd",
        }
    }

    fn sees_a(self) -> bool {
        matches!(self, SProfile::AB | SProfile::AD | SProfile::ABD)
    }
}

impl fmt::Display for SProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

impl fmt::Display for TProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            TProfile::B => "b",
            TProfile::BD => "bd",
        })
    }
}

/// Labels of the case hosts.
pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;
pub const T: usize = 4;
pub const S: usize = 5;

/// One configuration of `G[{a,b,c,d,s,t}]` with two one-sided vertices.
#[derive(Debug, Clone)]
pub struct CaseReport {
    pub host: Graph,
    pub t_profile: TProfile,
    pub s_profile: SProfile,
    pub st_edge: bool,
    pub family: MinimalDeletionFamily,
    pub vector: BranchingVector,
    pub number: f64,
}

impl CaseReport {
    pub fn kv_line(&self, index: usize) -> String {
        format!(
            "case={} t_profile={} s_profile={} st_edge={} branches={} vector={} number={:.6}",
            index + 1,
            self.t_profile,
            self.s_profile,
            self.st_edge as u8,
            self.vector.len(),
            self.vector,
            self.number
        )
    }
}

/// Host on the fixed diamond `abcd` (`bd` missing) with `t ~ a` and `s`
/// one-sided as profiled.
pub fn rule5_host(t: TProfile, s: SProfile, st_edge: bool) -> Graph {
    let mut g = named::disjoint_union(&named::diamond(), &Graph::new(2));
    g.add_edge(T, A).unwrap();
    g.add_edge(T, B).unwrap();
    if t == TProfile::BD {
        g.add_edge(T, D).unwrap();
    }
    let s_nbrs: &[usize] = match s {
        SProfile::AB => &[A, B],
        SProfile::AD => &[A, D],
        SProfile::ABD => &[A, B, D],
        SProfile::CB => &[C, B],
        SProfile::CD => &[C, D],
        SProfile::CBD => &[C, B, D],
    };
    for &x in s_nbrs {
        g.add_edge(S, x).unwrap();
    }
    if st_edge {
        g.add_edge(S, T).unwrap();
    }
    g
}

/// The 18 configurations: for `s ~ a` the edge `st` is forced (else
/// `{a; c, s, t}` is a claw); for `s ~ c` both options remain.
pub fn enumerate_rule5_cases() -> Vec<CaseReport> {
    let mut out = Vec::with_capacity(18);
    for t in [TProfile::B, TProfile::BD] {
        for s in SProfile::ALL {
            let st_options: &[bool] = if s.sees_a() { &[true] } else { &[true, false] };
            for &st in st_options {
                let host = rule5_host(t, s, st);
                let family = minimal_deletion_sets(&host).expect("six-vertex host");
                let vector = BranchingVector::new(family.sizes())
                    .expect("non-free host has a non-empty family");
                let number = branching_number(&vector);
                out.push(CaseReport {
                    host,
                    t_profile: t,
                    s_profile: s,
                    st_edge: st,
                    family,
                    vector,
                    number,
                });
            }
        }
    }
    out
}

/// Pairs of case indices whose hosts are isomorphic.
pub fn isomorphic_case_pairs(cases: &[CaseReport]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..cases.len() {
        for j in i + 1..cases.len() {
            if crate::graph::are_isomorphic(&cases[i].host, &cases[j].host).unwrap() {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl ClaimResult {
    fn new(name: &'static str, pass: bool, detail: String) -> Self {
        ClaimResult { name, pass, detail }
    }
}

#[derive(Debug, Clone)]
pub struct RuleBound {
    pub rule: Rule,
    pub vector: BranchingVector,
    pub number: f64,
}

#[derive(Debug, Clone)]
pub struct ClaimsReport {
    pub rules: Vec<RuleBound>,
    pub cases: Vec<CaseReport>,
    pub claims: Vec<ClaimResult>,
}

impl ClaimsReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    /// The rule with the largest branching number.
    pub fn worst_rule(&self) -> &RuleBound {
        self.rules
            .iter()
            .max_by(|x, y| x.number.total_cmp(&y.number))
            .expect("at least one rule")
    }
}

fn vector_of(sets: &[EdgeSet]) -> BranchingVector {
    BranchingVector::new(sets.iter().map(EdgeSet::len).collect()).expect("rule branches")
}

fn bound(rule: Rule, sets: &[EdgeSet]) -> RuleBound {
    let vector = vector_of(sets);
    let number = branching_number(&vector);
    RuleBound {
        rule,
        vector,
        number,
    }
}

/// Recomputes every rule's branching vector from its minimal deletion
/// families and checks the stated bounds.
pub fn verify_claims() -> ClaimsReport {
    let w = DiamondWitness {
        a: A,
        b: B,
        c: C,
        d: D,
    };
    let claw = named::claw();
    let claw_sets = rule_claw(&claw, &find_claw(&claw).unwrap());
    let twin_sets = rule_twins(&named::diamond(), &w).expect("diamond alone has twins");

    let mut rule6_host = named::disjoint_union(&named::diamond(), &Graph::new(1));
    rule6_host.add_edge(T, A).unwrap();
    rule6_host.add_edge(T, B).unwrap();
    let mut rule7_host = rule6_host.clone();
    rule7_host.add_edge(T, D).unwrap();
    let (r6, rule6_sets) = rule_single_witness(&rule6_host, &w, T).expect("rule 6 host");
    let (r7, rule7_sets) = rule_single_witness(&rule7_host, &w, T).expect("rule 7 host");

    let cases = enumerate_rule5_cases();
    let worst_case = cases
        .iter()
        .max_by(|x, y| x.number.total_cmp(&y.number))
        .expect("18 cases");
    let rule5 = RuleBound {
        rule: Rule::TwoWitnesses,
        vector: worst_case.vector.clone(),
        number: worst_case.number,
    };

    let rules = vec![
        bound(Rule::Claw, &claw_sets),
        bound(Rule::Twins, &twin_sets),
        rule5,
        bound(r6, &rule6_sets),
        bound(r7, &rule7_sets),
    ];

    let mut claims = Vec::new();
    let by_rule = |r: Rule| rules.iter().find(|b| b.rule == r).unwrap();

    let claw_b = by_rule(Rule::Claw);
    claims.push(ClaimResult::new(
        "claw_rule_number_3",
        claw_b.vector.costs() == [1, 1, 1] && (claw_b.number - 3.0).abs() <= 1e-9,
        format!("vector={} number={:.9}", claw_b.vector, claw_b.number),
    ));
    let twin_b = by_rule(Rule::Twins);
    claims.push(ClaimResult::new(
        "twin_rule_number_3",
        twin_b.vector.costs() == [1, 1, 1] && (twin_b.number - 3.0).abs() <= 1e-9,
        format!("vector={} number={:.9}", twin_b.vector, twin_b.number),
    ));
    claims.push(ClaimResult::new(
        "rule5_case_count_18",
        cases.len() == 18,
        format!("cases={}", cases.len()),
    ));
    let max5 = worst_case.number;
    claims.push(ClaimResult::new(
        "rule5_max_at_most_3.533",
        max5 <= 3.533,
        format!("max={max5:.9}"),
    ));
    claims.push(ClaimResult::new(
        "rule5_max_at_t_b_s_ab",
        worst_case.t_profile == TProfile::B
            && worst_case.s_profile == SProfile::AB
            && worst_case.vector.costs() == [1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3],
        format!(
            "t_profile={} s_profile={} vector={}",
            worst_case.t_profile, worst_case.s_profile, worst_case.vector
        ),
    ));
    let b6 = by_rule(Rule::SingleWitnessNonAdjacentD);
    claims.push(ClaimResult::new(
        "rule6_vector_11122_at_most_3.562",
        b6.vector.costs() == [1, 1, 1, 2, 2] && b6.number <= 3.562,
        format!("vector={} number={:.9}", b6.vector, b6.number),
    ));
    let b7 = by_rule(Rule::SingleWitnessAdjacentD);
    claims.push(ClaimResult::new(
        "rule7_twelve_2s_at_most_3.465",
        b7.vector.costs() == [2; 12] && b7.number <= 3.465,
        format!("vector={} number={:.9}", b7.vector, b7.number),
    ));
    let worst = rules
        .iter()
        .max_by(|x, y| x.number.total_cmp(&y.number))
        .unwrap();
    claims.push(ClaimResult::new(
        "global_max_is_rule6",
        worst.rule == Rule::SingleWitnessNonAdjacentD && worst.number < 3.562,
        format!("rule={} number={:.9}", worst.rule, worst.number),
    ));

    ClaimsReport {
        rules,
        cases,
        claims,
    }
}

/// Plain-text table of the case analysis followed by the rule summary.
pub fn render_report(report: &ClaimsReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(
        out,
        "{:>4}  {:<3} {:<4} {:<3} {:>9}  vector",
        "case", "t", "s", "st", "number"
    )
    .unwrap();
    for (i, c) in report.cases.iter().enumerate() {
        writeln!(
            out,
            "{:>4}  {:<3} {:<4} {:<3} {:>9.6}  {}",
            i + 1,
            c.t_profile,
            c.s_profile,
            if c.st_edge { "yes" } else { "no" },
            c.number,
            c.vector
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    for r in &report.rules {
        writeln!(
            out,
            "rule {}  vector {}  number {:.6}",
            r.rule.id(),
            r.vector,
            r.number
        )
        .unwrap();
    }
    let worst = report.worst_rule();
    writeln!(
        out,
        "max branching number {:.6} (rule {})",
        worst.number,
        worst.rule.id()
    )
    .unwrap();
    out
}

/// One `key=value` record per case, rule, and claim.
pub fn render_records(report: &ClaimsReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for (i, c) in report.cases.iter().enumerate() {
        writeln!(out, "{}", c.kv_line(i)).unwrap();
    }
    for r in &report.rules {
        writeln!(
            out,
            "rule={} vector={} number={:.9}",
            r.rule.id(),
            r.vector,
            r.number
        )
        .unwrap();
    }
    for c in &report.claims {
        writeln!(
            out,
            "claim={} status={} {}",
            c.name,
            if c.pass { "pass" } else { "fail" },
            c.detail
        )
        .unwrap();
    }
    out
}

//! The seven rules and their dispatch.
//!
//! [`plan`] applies the first applicable rule to `(G, k)` and either answers
//! directly or returns the branch sets `F_1..F_p`; the search recurses on
//! `(G - F_i, k - |F_i|)`.

use std::fmt;

use thiserror::Error;

use crate::detect::{find_claw, find_diamond, ClawWitness, DiamondWitness};
use crate::fmin::minimal_deletion_sets_in;
use crate::graph::{Edge, EdgeSet, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// `k < 0`: answer no.
    BudgetExhausted,
    /// Graph is already free: answer yes.
    Free,
    /// Branch on the three edges of an induced claw.
    Claw,
    /// `a` and `c` are twins: branch on `ac`, `ab`, `ad`.
    Twins,
    /// Two one-sided vertices `s`, `t`: branch on `Fmin(G[a,b,c,d,s,t])`.
    TwoWitnesses,
    /// Unique one-sided `t` with `t ~ a, b` and `t !~ d`.
    SingleWitnessNonAdjacentD,
    /// Unique one-sided `t` with `t ~ a, b, d`.
    SingleWitnessAdjacentD,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::BudgetExhausted,
        Rule::Free,
        Rule::Claw,
        Rule::Twins,
        Rule::TwoWitnesses,
        Rule::SingleWitnessNonAdjacentD,
        Rule::SingleWitnessAdjacentD,
    ];

    /// 1-based rule number.
    pub fn id(self) -> u8 {
        self as u8 + 1
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("witness is not an induced {0} of the graph")]
    InvalidWitness(&'static str),
    #[error("rule guard does not hold: {0}")]
    GuardViolated(&'static str),
}

/// Labels chosen by a rule, in graph ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Claw(ClawWitness),
    Diamond {
        w: DiamondWitness,
        t: Option<usize>,
        s: Option<usize>,
    },
}

impl Witness {
    /// The same witness with every vertex id passed through `f`.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Witness {
        match self {
            Witness::Claw(w) => Witness::Claw(ClawWitness {
                center: f(w.center),
                leaves: w.leaves.map(&f),
            }),
            Witness::Diamond { w, t, s } => Witness::Diamond {
                w: DiamondWitness {
                    a: f(w.a),
                    b: f(w.b),
                    c: f(w.c),
                    d: f(w.d),
                },
                t: t.map(&f),
                s: s.map(&f),
            },
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Claw(w) => write!(
                f,
                "center={} leaves={},{},{}",
                w.center, w.leaves[0], w.leaves[1], w.leaves[2]
            ),
            Witness::Diamond { w, t, s } => {
                write!(f, "a={} b={} c={} d={}", w.a, w.b, w.c, w.d)?;
                if let Some(t) = t {
                    write!(f, " t={t}")?;
                }
                if let Some(s) = s {
                    write!(f, " s={s}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branching {
    pub rule: Rule,
    pub witness: Witness,
    pub sets: Vec<EdgeSet>,
}

impl Branching {
    pub fn vector(&self) -> Vec<usize> {
        self.sets.iter().map(EdgeSet::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    No,
    Yes,
    Branch(Branching),
}

impl Step {
    pub fn rule(&self) -> Rule {
        match self {
            Step::No => Rule::BudgetExhausted,
            Step::Yes => Rule::Free,
            Step::Branch(b) => b.rule,
        }
    }
}

/// Applies the first applicable rule.
pub fn plan(g: &Graph, k: i64) -> Step {
    if k < 0 {
        return Step::No;
    }
    if let Some(claw) = find_claw(g) {
        return Step::Branch(Branching {
            rule: Rule::Claw,
            witness: Witness::Claw(claw),
            sets: rule_claw(g, &claw),
        });
    }
    let Some(w) = find_diamond(g) else {
        return Step::Yes;
    };
    if are_twins(g, w.a, w.c) {
        let sets = rule_twins(g, &w).expect("twin guard checked");
        return Step::Branch(Branching {
            rule: Rule::Twins,
            witness: Witness::Diamond {
                w,
                t: None,
                s: None,
            },
            sets,
        });
    }

    let one_sided = find_one_sided_vertices(g, &w);
    for &v in &one_sided {
        // otherwise {a or c; b, d, v} would be a claw caught earlier
        assert!(
            g.has_edge(v, w.b) || g.has_edge(v, w.d),
            "one-sided vertex {v} sees neither b nor d of {w:?}"
        );
    }
    assert!(
        !one_sided.is_empty(),
        "non-twin diamond {w:?} must have a one-sided vertex"
    );

    if one_sided.len() >= 2 {
        let (t, s) = (one_sided[0], one_sided[1]);
        let w = orient_toward(g, w, t);
        let sets = rule_two_witnesses(g, &w, s, t).expect("dispatch satisfies guard");
        return Step::Branch(Branching {
            rule: Rule::TwoWitnesses,
            witness: Witness::Diamond {
                w,
                t: Some(t),
                s: Some(s),
            },
            sets,
        });
    }

    let t = one_sided[0];
    let mut w = orient_toward(g, w, t);
    if !g.has_edge(t, w.b) {
        w = w.swap_bd();
    }
    let (rule, sets) = rule_single_witness(g, &w, t).expect("dispatch satisfies guard");
    Step::Branch(Branching {
        rule,
        witness: Witness::Diamond {
            w,
            t: Some(t),
            s: None,
        },
        sets,
    })
}

/// `N(x) - {y} == N(y) - {x}`.
pub fn are_twins(g: &Graph, x: usize, y: usize) -> bool {
    let (rx, ry) = (g.row(x), g.row(y));
    rx.iter().zip(ry).enumerate().all(|(i, (&wx, &wy))| {
        let mut mask = !0u64;
        for z in [x, y] {
            if z / 64 == i {
                mask &= !(1 << (z % 64));
            }
        }
        wx & mask == wy & mask
    })
}

// Relabels so that `t` is adjacent to `a` rather than `c`.
fn orient_toward(g: &Graph, w: DiamondWitness, t: usize) -> DiamondWitness {
    if g.has_edge(t, w.a) {
        w
    } else {
        w.swap_ac()
    }
}

/// The three claw edges as singleton branches.
pub fn rule_claw(g: &Graph, w: &ClawWitness) -> Vec<EdgeSet> {
    debug_assert!(w.is_valid_in(g));
    w.edges()
        .into_iter()
        .map(|e| std::iter::once(e).collect())
        .collect()
}

/// `{ac}, {ab}, {ad}`; the remaining diamond branches `{cb}, {cd}` lead to
/// isomorphic instances when `a` and `c` are twins.
pub fn rule_twins(g: &Graph, w: &DiamondWitness) -> Result<Vec<EdgeSet>, RuleError> {
    if !w.is_valid_in(g) {
        return Err(RuleError::InvalidWitness("diamond"));
    }
    if !are_twins(g, w.a, w.c) {
        return Err(RuleError::GuardViolated("a and c are not twins"));
    }
    Ok([(w.a, w.c), (w.a, w.b), (w.a, w.d)]
        .into_iter()
        .map(|(u, v)| std::iter::once(Edge::new(u, v)).collect())
        .collect())
}

/// Vertices other than `a`, `c` adjacent to exactly one of them, ascending.
pub fn find_one_sided_vertices(g: &Graph, w: &DiamondWitness) -> Vec<usize> {
    let (ra, rc) = (g.row(w.a), g.row(w.c));
    let diff: Vec<u64> = ra.iter().zip(rc).map(|(x, y)| x ^ y).collect();
    crate::graph::iter_bits(&diff)
        .filter(|&v| v != w.a && v != w.c)
        .collect()
}

fn is_one_sided(g: &Graph, w: &DiamondWitness, v: usize) -> bool {
    v != w.a && v != w.c && g.has_edge(v, w.a) != g.has_edge(v, w.c)
}

/// All of `Fmin(G[a,b,c,d,t,s])`. Requires `t ~ a`.
pub fn rule_two_witnesses(
    g: &Graph,
    w: &DiamondWitness,
    s: usize,
    t: usize,
) -> Result<Vec<EdgeSet>, RuleError> {
    if !w.is_valid_in(g) {
        return Err(RuleError::InvalidWitness("diamond"));
    }
    if s == t || !is_one_sided(g, w, s) || !is_one_sided(g, w, t) {
        return Err(RuleError::GuardViolated(
            "s and t must be distinct one-sided vertices",
        ));
    }
    if !g.has_edge(t, w.a) {
        return Err(RuleError::GuardViolated("t must be adjacent to a"));
    }
    Ok(minimal_deletion_sets_in(g, &[w.a, w.b, w.c, w.d, t, s]).expect("six-vertex host"))
}

/// `Fmin(G[a,b,c,d,t])` minus the sets made redundant by the `a`/`c`
/// symmetry of `G - at`. Requires `t` to be the only one-sided vertex, with
/// `t ~ a` and `t ~ b`.
pub fn rule_single_witness(
    g: &Graph,
    w: &DiamondWitness,
    t: usize,
) -> Result<(Rule, Vec<EdgeSet>), RuleError> {
    if !w.is_valid_in(g) {
        return Err(RuleError::InvalidWitness("diamond"));
    }
    if find_one_sided_vertices(g, w) != [t] {
        return Err(RuleError::GuardViolated(
            "t must be the unique one-sided vertex",
        ));
    }
    if !g.has_edge(t, w.a) || !g.has_edge(t, w.b) {
        return Err(RuleError::GuardViolated("t must be adjacent to a and b"));
    }
    let mut sets = minimal_deletion_sets_in(g, &[w.a, w.b, w.c, w.d, t]).expect("five-vertex host");
    let pair = |x: (usize, usize), y: (usize, usize)| -> EdgeSet {
        [Edge::new(x.0, x.1), Edge::new(y.0, y.1)]
            .into_iter()
            .collect()
    };
    let at = (w.a, t);
    let (rule, excluded) = if !g.has_edge(t, w.d) {
        (Rule::SingleWitnessNonAdjacentD, vec![pair(at, (w.c, w.d))])
    } else {
        (
            Rule::SingleWitnessAdjacentD,
            vec![pair(at, (w.c, w.b)), pair(at, (w.c, w.d))],
        )
    };
    for x in &excluded {
        let pos = sets
            .iter()
            .position(|f| f == x)
            .unwrap_or_else(|| panic!("excluded set {x} missing from Fmin of {w:?}, t={t}"));
        sets.remove(pos);
    }
    Ok((rule, sets))
}

//! Reduction rules and the fixpoint driver.
//!
//! Five rules, applied so that a lower-numbered rule is always exhausted
//! before a higher-numbered one runs:
//!
//! * RR-1 removes tautologies {l, !l}, banking one truth each.
//! * RR-2 replaces a clause pair C, D with C\{l} = D\{!l} by the shared
//!   residue plus one truth (two distinct multiset members; a clause never
//!   pairs with itself).
//! * RR-3 sets pure literals true.
//! * RR-4 sets l true when losing every clause with !l cannot cost more
//!   than the unit clauses {l} gain: #1(!l) + #2(!l) <= #1(l).
//! * RR-5 probes a variable x1 that outside its clauses with a companion
//!   x2 occurs in at most one binary clause: if RR-3/RR-4 would force x1
//!   in both F[x2] and F[!x2], it is set or substituted accordingly.
//!
//! Every action is logged so the reduction can be replayed forward over a
//! formula or backward over an assignment.

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Assignment, Clause, Formula, Lit, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleId {
    RR1,
    RR2,
    RR3,
    RR4,
    RR5,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleId::RR1 => "RR-1",
            RuleId::RR2 => "RR-2",
            RuleId::RR3 => "RR-3",
            RuleId::RR4 => "RR-4",
            RuleId::RR5 => "RR-5",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceAction {
    /// A literal fixed true by a rule.
    SetLiteral(Lit, RuleId),
    /// Variable `from` rewritten to the literal `to` in every clause.
    Substitute { from: Var, to: Lit, rule: RuleId },
    /// Clauses taken out of the multiset and residues put in.
    ClauseRewrite {
        removed: Vec<Clause>,
        added: Vec<Clause>,
        rule: RuleId,
    },
    /// Truth banked without touching any remaining clause.
    TruthGain(u64, RuleId),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    actions: Vec<TraceAction>,
}

impl ReductionTrace {
    pub fn new() -> ReductionTrace {
        ReductionTrace::default()
    }

    pub fn actions(&self) -> &[TraceAction] {
        &self.actions
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn push(&mut self, action: TraceAction) {
        self.actions.push(action);
    }

    pub fn extend(&mut self, other: ReductionTrace) {
        self.actions.extend(other.actions);
    }

    /// Line-oriented text form: `SET v ±`, `SUB v1 := ±v2`, `TRUTH k`, each
    /// suffixed with the rule id. Clause surgery appears only through its
    /// truth effect.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for action in &self.actions {
            match action {
                TraceAction::SetLiteral(l, rule) => {
                    let sign = if l.positive() { '+' } else { '-' };
                    out.push_str(&format!("SET {} {} {}\n", l.var(), sign, rule));
                }
                TraceAction::Substitute { from, to, rule } => {
                    let sign = if to.positive() { '+' } else { '-' };
                    out.push_str(&format!("SUB {} := {}{} {}\n", from, sign, to.var(), rule));
                }
                TraceAction::ClauseRewrite { .. } => {}
                TraceAction::TruthGain(k, rule) => {
                    out.push_str(&format!("TRUTH {} {}\n", k, rule));
                }
            }
        }
        out
    }

    /// Applies the logged actions to a formula. Replaying the trace of
    /// `reduce(F)` on F reproduces the reduced formula exactly.
    pub fn replay_forward(&self, original: &Formula) -> Result<Formula> {
        let mut f = original.clone();
        for action in &self.actions {
            match action {
                TraceAction::SetLiteral(l, _) => f = f.assign(*l),
                TraceAction::Substitute { from, to, .. } => f = substitute(&f, *from, *to),
                TraceAction::ClauseRewrite { removed, added, .. } => {
                    let mut clauses = f.clauses().to_vec();
                    for r in removed {
                        let pos = clauses.iter().position(|c| c == r).ok_or_else(|| {
                            Error::TraceMismatch(format!("clause {r} not present for removal"))
                        })?;
                        clauses.remove(pos);
                    }
                    clauses.extend(added.iter().copied());
                    f = Formula::from_parts(clauses, f.truth_count(), f.original_clause_count());
                }
                TraceAction::TruthGain(k, _) => {
                    f = Formula::from_parts(
                        f.clauses().to_vec(),
                        f.truth_count() + k,
                        f.original_clause_count(),
                    );
                }
            }
        }
        Ok(f)
    }

    /// Extends an assignment of the reduced formula back to the variables
    /// the trace eliminated, processing actions in reverse. A substitution
    /// target that no longer appears anywhere defaults to true.
    pub fn extend_assignment(&self, assignment: &mut Assignment) {
        for action in self.actions.iter().rev() {
            match action {
                TraceAction::SetLiteral(l, _) => {
                    assignment.set(l.var(), l.positive());
                }
                TraceAction::Substitute { from, to, .. } => {
                    let value = match assignment.lit_value(*to) {
                        Some(v) => v,
                        None => {
                            assignment.set(to.var(), true);
                            to.positive()
                        }
                    };
                    assignment.set(*from, value);
                }
                TraceAction::ClauseRewrite { .. } | TraceAction::TruthGain(..) => {}
            }
        }
    }
}

/// Every clause on `from` rewritten onto the literal `to` (polarity carried
/// over), with the usual normalization; {x2, !x2} results stay for RR-1.
pub fn substitute(f: &Formula, from: Var, to: Lit) -> Formula {
    let map = |l: Lit| -> Lit {
        if l.var() == from {
            if l.positive() {
                to
            } else {
                !to
            }
        } else {
            l
        }
    };
    let clauses = f
        .clauses()
        .iter()
        .map(|c| match *c {
            Clause::Unit(a) => Clause::unit(map(a)),
            Clause::Binary(a, b) => Clause::binary(map(a), map(b)),
        })
        .collect();
    Formula::from_parts(clauses, f.truth_count(), f.original_clause_count())
}

/// Result of one rule scan. `skipped` is only ever nonzero for RR-5: the
/// number of candidate pairs whose probes were not both forced.
#[derive(Debug, Clone)]
pub struct RuleOutcome {
    pub formula: Formula,
    pub trace: ReductionTrace,
    pub changed: bool,
    pub skipped: u64,
}

fn unchanged(f: &Formula) -> RuleOutcome {
    RuleOutcome {
        formula: f.clone(),
        trace: ReductionTrace::new(),
        changed: false,
        skipped: 0,
    }
}

/// RR-1: every tautology becomes a truth.
pub fn rr1(f: &Formula) -> RuleOutcome {
    let mut kept = Vec::with_capacity(f.clause_count());
    let mut trace = ReductionTrace::new();
    let mut gained = 0u64;
    for c in f.clauses() {
        if c.is_tautology() {
            trace.push(TraceAction::ClauseRewrite {
                removed: vec![*c],
                added: vec![],
                rule: RuleId::RR1,
            });
            trace.push(TraceAction::TruthGain(1, RuleId::RR1));
            gained += 1;
        } else {
            kept.push(*c);
        }
    }
    if gained == 0 {
        return unchanged(f);
    }
    RuleOutcome {
        formula: Formula::from_parts(kept, f.truth_count() + gained, f.original_clause_count()),
        trace,
        changed: true,
        skipped: 0,
    }
}

/// The residue of an RR-2 match between two clauses, if any: some literal l
/// with l in C, !l in D and C\{l} = D\{!l}. `Some(None)` is the empty
/// residue of a complementary unit pair.
fn rr2_residue(c: Clause, d: Clause) -> Option<Option<Clause>> {
    match (c, d) {
        (Clause::Unit(a), Clause::Unit(b)) if b == !a => Some(None),
        (Clause::Binary(a1, a2), Clause::Binary(_, _)) => {
            if Clause::binary(!a1, a2) == d {
                Some(Some(Clause::unit(a2)))
            } else if Clause::binary(!a2, a1) == d {
                Some(Some(Clause::unit(a1)))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// RR-2: one left-to-right scan over ordered pairs i < j. Consumed slots
/// are dead for the rest of the scan and residues only join the formula at
/// the end, so a single scan acts on the input multiset alone; the driver
/// rescans until nothing pairs.
pub fn rr2(f: &Formula) -> RuleOutcome {
    let mut slots: Vec<Option<Clause>> = f.clauses().iter().map(|c| Some(*c)).collect();
    let mut residues: Vec<Clause> = Vec::new();
    let mut trace = ReductionTrace::new();
    let mut gained = 0u64;
    for i in 0..slots.len() {
        let Some(ci) = slots[i] else { continue };
        for j in (i + 1)..slots.len() {
            let Some(cj) = slots[j] else { continue };
            if let Some(residue) = rr2_residue(ci, cj) {
                slots[i] = None;
                slots[j] = None;
                trace.push(TraceAction::ClauseRewrite {
                    removed: vec![ci, cj],
                    added: residue.into_iter().collect(),
                    rule: RuleId::RR2,
                });
                trace.push(TraceAction::TruthGain(1, RuleId::RR2));
                if let Some(r) = residue {
                    residues.push(r);
                }
                gained += 1;
                break;
            }
        }
    }
    if gained == 0 {
        return unchanged(f);
    }
    let mut clauses: Vec<Clause> = slots.into_iter().flatten().collect();
    clauses.extend(residues);
    RuleOutcome {
        formula: Formula::from_parts(clauses, f.truth_count() + gained, f.original_clause_count()),
        trace,
        changed: true,
        skipped: 0,
    }
}

fn polarity_counts(f: &Formula, v: Var) -> (usize, usize) {
    let pos = f.count_unit(Lit::pos(v)) + f.count_binary(Lit::pos(v));
    let neg = f.count_unit(Lit::neg(v)) + f.count_binary(Lit::neg(v));
    (pos, neg)
}

/// RR-3: pure literals collected up front (in variable order), then set one
/// by one. Assignments only remove occurrences, so a collected literal is
/// still pure when its turn comes; it may have vanished entirely, though.
pub fn rr3(f: &Formula) -> RuleOutcome {
    let mut pures: Vec<Lit> = Vec::new();
    for v in f.vars() {
        let (pos, neg) = polarity_counts(f, v);
        if neg == 0 {
            pures.push(Lit::pos(v));
        } else if pos == 0 {
            pures.push(Lit::neg(v));
        }
    }
    if pures.is_empty() {
        return unchanged(f);
    }
    let mut g = f.clone();
    let mut trace = ReductionTrace::new();
    let mut changed = false;
    for l in pures {
        let (pos, neg) = polarity_counts(&g, l.var());
        if pos + neg == 0 {
            continue;
        }
        g = g.assign(l);
        trace.push(TraceAction::SetLiteral(l, RuleId::RR3));
        changed = true;
    }
    if !changed {
        return unchanged(f);
    }
    RuleOutcome {
        formula: g,
        trace,
        changed: true,
        skipped: 0,
    }
}

/// The RR-4 test for setting l true: the unit clauses {l} pay for every
/// clause the complement literal could have satisfied.
fn rr4_applies(f: &Formula, l: Lit) -> bool {
    let gain = f.count_unit(l);
    let loss = f.count_unit(!l) + f.count_binary(!l);
    let occurs = gain + f.count_binary(l) + loss > 0;
    occurs && loss <= gain
}

/// RR-4: candidates collected variable-ascending, positive literal first,
/// each revalidated against the current formula before it is applied.
pub fn rr4(f: &Formula) -> RuleOutcome {
    let mut candidates: Vec<Lit> = Vec::new();
    for v in f.vars() {
        for l in [Lit::pos(v), Lit::neg(v)] {
            if rr4_applies(f, l) {
                candidates.push(l);
            }
        }
    }
    if candidates.is_empty() {
        return unchanged(f);
    }
    let mut g = f.clone();
    let mut trace = ReductionTrace::new();
    let mut changed = false;
    for l in candidates {
        if !rr4_applies(&g, l) {
            continue;
        }
        g = g.assign(l);
        trace.push(TraceAction::SetLiteral(l, RuleId::RR4));
        changed = true;
    }
    if !changed {
        return unchanged(f);
    }
    RuleOutcome {
        formula: g,
        trace,
        changed: true,
        skipped: 0,
    }
}

/// What RR-3/RR-4 would do to `v` in a probe formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Probe {
    /// v does not occur: its value is irrelevant in this branch.
    Absent,
    Forced(bool),
    Open,
}

fn probe_value(g: &Formula, v: Var) -> Probe {
    let pos_unit = g.count_unit(Lit::pos(v));
    let neg_unit = g.count_unit(Lit::neg(v));
    let pos_bin = g.count_binary(Lit::pos(v));
    let neg_bin = g.count_binary(Lit::neg(v));
    if pos_unit + neg_unit + pos_bin + neg_bin == 0 {
        return Probe::Absent;
    }
    // RR-3: pure literal
    if neg_unit + neg_bin == 0 {
        return Probe::Forced(true);
    }
    if pos_unit + pos_bin == 0 {
        return Probe::Forced(false);
    }
    // RR-4, positive literal first
    if neg_unit + neg_bin <= pos_unit {
        return Probe::Forced(true);
    }
    if pos_unit + pos_bin <= neg_unit {
        return Probe::Forced(false);
    }
    Probe::Open
}

/// RR-5: scans candidate pairs (x1 ascending, companions x2 ascending among
/// the variables sharing a binary clause with x1) and fires on the first
/// pair whose probes decide x1 in both F[x2] and F[!x2]. One action per
/// call. Candidates whose probes stay open are counted in `skipped`.
///
/// A probe where x1 is absent poses no constraint in that branch, so it
/// agrees with whatever the other branch wants (true if both are absent).
pub fn rr5(f: &Formula) -> RuleOutcome {
    let graph = f.variable_graph();
    let mut skipped = 0u64;
    for x1 in f.vars() {
        let weight = graph.degree(x1);
        for x2 in graph.neighbor_set(x1) {
            let outside = weight - graph.parallel(x1, x2);
            if outside > 1 {
                continue;
            }
            let alpha = probe_value(&f.assign(Lit::pos(x2)), x1);
            let beta = probe_value(&f.assign(Lit::neg(x2)), x1);
            let action = match (alpha, beta) {
                (Probe::Open, _) | (_, Probe::Open) => {
                    skipped += 1;
                    continue;
                }
                (Probe::Absent, Probe::Absent) => {
                    TraceAction::SetLiteral(Lit::pos(x1), RuleId::RR5)
                }
                (Probe::Forced(a), Probe::Absent) | (Probe::Absent, Probe::Forced(a)) => {
                    TraceAction::SetLiteral(Lit::new(x1, a), RuleId::RR5)
                }
                (Probe::Forced(true), Probe::Forced(false)) => TraceAction::Substitute {
                    from: x1,
                    to: Lit::pos(x2),
                    rule: RuleId::RR5,
                },
                (Probe::Forced(false), Probe::Forced(true)) => TraceAction::Substitute {
                    from: x1,
                    to: Lit::neg(x2),
                    rule: RuleId::RR5,
                },
                // both probes agree, so the value is forced either way
                (Probe::Forced(a), Probe::Forced(_)) => {
                    TraceAction::SetLiteral(Lit::new(x1, a), RuleId::RR5)
                }
            };
            let formula = match &action {
                TraceAction::SetLiteral(l, _) => f.assign(*l),
                TraceAction::Substitute { from, to, .. } => substitute(f, *from, *to),
                _ => unreachable!(),
            };
            let mut trace = ReductionTrace::new();
            trace.push(action);
            return RuleOutcome {
                formula,
                trace,
                changed: true,
                skipped,
            };
        }
    }
    RuleOutcome {
        skipped,
        ..unchanged(f)
    }
}

/// A fully reduced formula with the log of how it got there.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub formula: Formula,
    pub trace: ReductionTrace,
    pub rr5_skips: u64,
}

/// Applies the rules to a fixpoint, always restarting from RR-1 after a
/// change so a lower rule is exhausted before a higher one runs. Every
/// action removes a clause or a variable, so the scan budget K*n^2 + 16 is
/// only a defense against an implementation bug.
pub fn reduce(f: &Formula) -> Result<Reduction> {
    let n = f.n_vars() as u64;
    let budget = (f.original_clause_count() as u64)
        .saturating_mul(n.saturating_mul(n))
        .saturating_add(16);
    let mut scans = 0u64;
    let mut current = f.clone();
    let mut trace = ReductionTrace::new();
    let mut rr5_skips = 0u64;

    'outer: loop {
        for rule in [rr1, rr2, rr3, rr4, rr5] {
            scans += 1;
            if scans > budget {
                return Err(Error::ReductionDiverged(budget));
            }
            let out = rule(&current);
            rr5_skips += out.skipped;
            if out.changed {
                current = out.formula;
                trace.extend(out.trace);
                continue 'outer;
            }
        }
        break;
    }

    Ok(Reduction {
        formula: current,
        trace,
        rr5_skips,
    })
}

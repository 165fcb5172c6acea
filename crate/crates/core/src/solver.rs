//! The branch-and-reduce driver: reduce, split into connected components,
//! solve small components exhaustively, branch the rest on the variable the
//! priority ladder picks. Optionally verifies at runtime that every branch
//! reduces the measure by at least its tabulated amount.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::formula::{Assignment, Formula, Lit, Var};
use crate::heuristics::select_branch_variable;
use crate::measure::{
    BranchVectorTable, ExpectedReduction, WeightTable, WeightVariant, GAMMA_SCALE,
};
use crate::oracle;
use crate::reduction::reduce;

/// Branching in parallel pays off only near the root.
const PARALLEL_DEPTH: usize = 4;

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub weights: WeightVariant,
    /// Record branch events and check them against the branch-vector table.
    pub instrument: bool,
    /// Abort once this many branch nodes have been expanded.
    pub node_cap: u64,
    /// Explore the two subtrees of shallow branches on separate threads.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        let node_cap = std::env::var("MAX2SAT_NODE_CAP")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(1 << 26);
        SolverConfig {
            weights: WeightVariant::Simple,
            instrument: false,
            node_cap,
            parallel: false,
        }
    }
}

/// One branching decision, with the scaled measure of the formula it was
/// made on and of both reduced children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchEvent {
    pub variable: Var,
    pub priority: u8,
    pub subcase: String,
    /// The closed neighborhood was weight-regular when the branch was taken.
    pub regular: bool,
    pub gamma_before: i64,
    pub gamma_true: i64,
    pub gamma_false: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Passed,
    /// Regular fallback subcases carry no per-branch bound.
    Exempt,
    Violation(String),
}

/// Compares a branch's measured gamma reductions against the guaranteed
/// vector for its subcase. Every branch, exempt or not, must at least
/// destroy its own branch variable, hence the omega_3 floor.
pub fn instrument_branch(
    event: &BranchEvent,
    wt: &WeightTable,
    table: &BranchVectorTable,
) -> CheckResult {
    const TOL: f64 = 1e-6;
    let scale = GAMMA_SCALE as f64;
    let a = (event.gamma_before - event.gamma_true) as f64 / scale;
    let b = (event.gamma_before - event.gamma_false) as f64 / scale;
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };

    if lo < wt.omega(3) - TOL {
        return CheckResult::Violation(format!(
            "branch on {} (priority {} {}): measured ({:.5}, {:.5}) falls below the weight-3 floor",
            event.variable, event.priority, event.subcase, hi, lo
        ));
    }
    match table.expected_reduction(event.priority, &event.subcase) {
        Err(_) => CheckResult::Violation(format!(
            "branch on {}: no tabulated vector for priority {} subcase {}",
            event.variable, event.priority, event.subcase
        )),
        Ok(ExpectedReduction::Exempt) => CheckResult::Exempt,
        Ok(ExpectedReduction::Vector(v)) => {
            if hi >= v[0] - TOL && lo >= v[1] - TOL {
                CheckResult::Passed
            } else {
                CheckResult::Violation(format!(
                    "branch on {} (priority {} {}): measured ({:.5}, {:.5}) under tabulated ({:.5}, {:.5})",
                    event.variable, event.priority, event.subcase, hi, lo, v[0], v[1]
                ))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub branch_nodes: u64,
    /// Exhaustively solved components; always branch_nodes + 1 +
    /// component_splits.
    pub leaves: u64,
    pub component_splits: u64,
    pub priority_histogram: BTreeMap<u8, u64>,
    pub violations: Vec<String>,
    pub rr5_skipped: u64,
    /// Populated only when instrumenting.
    pub events: Vec<BranchEvent>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub optimum: u64,
    pub assignment: Assignment,
    pub stats: SearchStats,
}

/// Exhaustively solves a component of at most 9 variables.
pub fn exhaustive_small(f: &Formula) -> Result<(u64, Assignment)> {
    oracle::enumerate_best(f, 9)
}

struct Ctx<'a> {
    wt: WeightTable,
    table: BranchVectorTable,
    config: &'a SolverConfig,
    nodes: AtomicU64,
}

struct SubResult {
    opt: u64,
    assignment: Assignment,
    /// Scaled gamma of this subproblem after its entry reduction.
    gamma_reduced: i64,
    stats: SearchStats,
}

pub fn solve(f: &Formula, config: &SolverConfig) -> Result<Solution> {
    let wt = WeightTable::new(config.weights);
    let table = BranchVectorTable::new(&wt);
    let ctx = Ctx {
        wt,
        table,
        config,
        nodes: AtomicU64::new(0),
    };
    let sub = solve_rec(&ctx, f, 0)?;

    let mut assignment = sub.assignment;
    for v in f.vars() {
        if !assignment.contains(v) {
            assignment.set(v, true);
        }
    }
    debug_assert_eq!(
        sub.stats.leaves,
        sub.stats.branch_nodes + 1 + sub.stats.component_splits
    );
    Ok(Solution {
        optimum: sub.opt,
        assignment,
        stats: sub.stats,
    })
}

fn solve_rec(ctx: &Ctx, f: &Formula, depth: usize) -> Result<SubResult> {
    let red = reduce(f)?;
    let gamma_reduced = ctx.wt.gamma_scaled(&red.formula);

    let mut stats = SearchStats {
        rr5_skipped: red.rr5_skips,
        ..SearchStats::default()
    };
    let comps = red.formula.components();
    let (root, var_comps) = comps.split_first().expect("components start at the truth root");
    let mut opt = root.truth_count();
    let mut assignment = Assignment::new();

    if var_comps.is_empty() {
        stats.leaves = 1;
    } else {
        stats.component_splits += var_comps.len() as u64 - 1;
    }

    for comp in var_comps {
        if comp.n_vars() <= 9 {
            let (best, asg) = exhaustive_small(comp)?;
            opt += best;
            for (v, val) in asg.iter() {
                assignment.set(v, val);
            }
            stats.leaves += 1;
            continue;
        }

        let expanded = ctx.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if expanded > ctx.config.node_cap {
            return Err(Error::NodeCapExceeded(ctx.config.node_cap));
        }

        let choice = select_branch_variable(comp, &ctx.wt)?;
        let v = choice.variable;
        let f_true = comp.assign(Lit::pos(v));
        let f_false = comp.assign(Lit::neg(v));

        let (rt, rf) = if ctx.config.parallel && depth < PARALLEL_DEPTH {
            std::thread::scope(|s| {
                let ht = s.spawn(|| solve_rec(ctx, &f_true, depth + 1));
                let hf = s.spawn(|| solve_rec(ctx, &f_false, depth + 1));
                (
                    ht.join().expect("branch thread panicked"),
                    hf.join().expect("branch thread panicked"),
                )
            })
        } else {
            (
                solve_rec(ctx, &f_true, depth + 1),
                solve_rec(ctx, &f_false, depth + 1),
            )
        };
        let rt = rt?;
        let rf = rf?;

        let event = BranchEvent {
            variable: v,
            priority: choice.priority,
            subcase: choice.subcase.clone(),
            regular: choice.regular,
            gamma_before: ctx.wt.gamma_scaled(comp),
            gamma_true: rt.gamma_reduced,
            gamma_false: rf.gamma_reduced,
        };

        stats.branch_nodes += 1 + rt.stats.branch_nodes + rf.stats.branch_nodes;
        stats.leaves += rt.stats.leaves + rf.stats.leaves;
        stats.component_splits += rt.stats.component_splits + rf.stats.component_splits;
        stats.rr5_skipped += rt.stats.rr5_skipped + rf.stats.rr5_skipped;
        *stats
            .priority_histogram
            .entry(choice.priority)
            .or_insert(0) += 1;
        for (p, c) in rt
            .stats
            .priority_histogram
            .iter()
            .chain(rf.stats.priority_histogram.iter())
        {
            *stats.priority_histogram.entry(*p).or_insert(0) += c;
        }

        if ctx.config.instrument {
            if let CheckResult::Violation(msg) = instrument_branch(&event, &ctx.wt, &ctx.table) {
                stats.violations.push(msg);
            }
            stats.violations.extend(rt.stats.violations);
            stats.violations.extend(rf.stats.violations);
            stats.events.push(event);
            stats.events.extend(rt.stats.events);
            stats.events.extend(rf.stats.events);
        }

        // ties go to the true branch
        let (sub_opt, sub_asg, val) = if rt.opt >= rf.opt {
            (rt.opt, rt.assignment, true)
        } else {
            (rf.opt, rf.assignment, false)
        };
        opt += sub_opt;
        for (u, b) in sub_asg.iter() {
            assignment.set(u, b);
        }
        assignment.set(v, val);
    }

    red.trace.extend_assignment(&mut assignment);
    Ok(SubResult {
        opt,
        assignment,
        gamma_reduced,
        stats,
    })
}

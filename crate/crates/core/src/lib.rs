//! An exact Max-2-SAT solver built around branch-and-reduce: five reduction
//! rules drive every formula to a fixpoint, a ten-level priority ladder
//! picks branch variables, and an optional runtime check verifies that each
//! branch shrinks the degree-weighted measure by its tabulated amount.
//!
//! Formulas are clause multisets over 1- and 2-clauses plus a count of
//! clauses already known true. [`solve`] returns the maximum number of
//! simultaneously satisfiable clauses together with a witnessing assignment
//! and search statistics; [`oracle::brute_force`] provides an independent
//! reference for small inputs.

pub mod dimacs;
pub mod error;
pub mod formula;
pub mod generator;
pub mod heuristics;
pub mod measure;
pub mod oracle;
pub mod reduction;
pub mod solver;

pub use error::{Error, Result};
pub use formula::{Assignment, Clause, Formula, Lit, Var, VarGraph};
pub use generator::Model;
pub use heuristics::{select_branch_variable, BranchChoice, LimitedStructure};
pub use measure::{
    branching_number, BranchVectorTable, ExpectedReduction, WeightTable, WeightVariant,
    GAMMA_SCALE,
};
pub use reduction::{reduce, Reduction, ReductionTrace, RuleId, TraceAction};
pub use solver::{
    instrument_branch, solve, BranchEvent, CheckResult, SearchStats, Solution, SolverConfig,
};

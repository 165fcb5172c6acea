//! Exhaustive reference solver. Quadratic-exponential and deliberately
//! simple: every other component of the library is tested against it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::{Assignment, Formula, Var};

/// Hard ceiling for the enumeration; past this the oracle is useless anyway.
pub const MAX_ORACLE_VARS: usize = 26;

struct CompiledClause {
    a: (usize, bool),
    b: Option<(usize, bool)>,
}

fn compile(f: &Formula, vars: &[Var]) -> Vec<CompiledClause> {
    let index: BTreeMap<Var, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    f.clauses()
        .iter()
        .map(|c| {
            let mut lits = c.literals();
            let la = lits.next().unwrap();
            let lb = lits.next();
            CompiledClause {
                a: (index[&la.var()], la.positive()),
                b: lb.map(|l| (index[&l.var()], l.positive())),
            }
        })
        .collect()
}

fn lit_true(mask: u64, slot: (usize, bool)) -> bool {
    ((mask >> slot.0) & 1 == 1) == slot.1
}

fn satisfied(mask: u64, clauses: &[CompiledClause]) -> u64 {
    clauses
        .iter()
        .filter(|c| lit_true(mask, c.a) || c.b.is_some_and(|b| lit_true(mask, b)))
        .count() as u64
}

/// Maximum satisfiable clause count and a witnessing total assignment,
/// found by trying all 2^n assignments. Ties resolve to the first maximum
/// in counter order starting from all-false, so the result is deterministic.
pub fn brute_force(f: &Formula) -> Result<(u64, Assignment)> {
    enumerate_best(f, MAX_ORACLE_VARS)
}

pub(crate) fn enumerate_best(f: &Formula, limit: usize) -> Result<(u64, Assignment)> {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    if vars.len() > limit {
        return Err(Error::TooManyVariables {
            n: vars.len(),
            limit,
        });
    }
    let clauses = compile(f, &vars);
    let mut best_mask = 0u64;
    let mut best = satisfied(0, &clauses);
    for mask in 1..(1u64 << vars.len()) {
        let s = satisfied(mask, &clauses);
        if s > best {
            best = s;
            best_mask = mask;
        }
    }
    let mut assignment = Assignment::new();
    for (i, v) in vars.iter().enumerate() {
        assignment.set(*v, (best_mask >> i) & 1 == 1);
    }
    Ok((f.truth_count() + best, assignment))
}

/// True when some assignment satisfies every clause. Not used in solving,
/// only as a sanity predicate for instances designed to be tight.
pub fn is_satisfiable(f: &Formula) -> Result<bool> {
    let (opt, _) = brute_force(f)?;
    Ok(opt == f.truth_count() + f.clause_count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Lit;

    #[test]
    fn contradictory_units_leave_one_unsatisfied() {
        let f = Formula::from_dimacs_ints(&[&[1], &[-1], &[-1]]);
        let (opt, a) = brute_force(&f).unwrap();
        assert_eq!(opt, 2);
        assert_eq!(a.get(Var::new(1)), Some(false));
        assert_eq!(f.satisfied_count(&a).unwrap(), opt);
    }

    #[test]
    fn tautology_always_counts() {
        let f = Formula::from_dimacs_ints(&[&[1, -1], &[1], &[-1]]);
        let (opt, _) = brute_force(&f).unwrap();
        assert_eq!(opt, 2);
    }

    #[test]
    fn accumulated_truth_is_included() {
        let f = Formula::from_dimacs_ints(&[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        let (opt, _) = brute_force(&f).unwrap();
        assert_eq!(opt, 3);
        let g = f.assign(Lit::from_dimacs(1).unwrap());
        let (opt2, _) = brute_force(&g).unwrap();
        assert_eq!(opt2, 2 + 1); // two satisfied immediately, best of the rest
    }

    #[test]
    fn empty_formula_scores_its_truth() {
        let f = Formula::from_parts(vec![], 7, 9);
        let (opt, a) = brute_force(&f).unwrap();
        assert_eq!(opt, 7);
        assert!(a.is_empty());
    }

    #[test]
    fn ties_resolve_to_lowest_counter_value() {
        // both values of 1 satisfy exactly one clause; all-false comes first
        let f = Formula::from_dimacs_ints(&[&[1], &[-1]]);
        let (opt, a) = brute_force(&f).unwrap();
        assert_eq!(opt, 1);
        assert_eq!(a.get(Var::new(1)), Some(false));
    }

    #[test]
    fn variable_cap_is_enforced() {
        let clauses: Vec<Vec<i32>> = (1..=27).map(|i| vec![i]).collect();
        let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
        let f = Formula::from_dimacs_ints(&refs);
        assert!(matches!(
            brute_force(&f),
            Err(Error::TooManyVariables { n: 27, limit: 26 })
        ));
    }

    #[test]
    fn satisfiable_instance_detected() {
        let f = Formula::from_dimacs_ints(&[&[1, 2], &[-1, 2]]);
        assert!(is_satisfiable(&f).unwrap());
        let g = Formula::from_dimacs_ints(&[&[1], &[-1]]);
        assert!(!is_satisfiable(&g).unwrap());
    }
}

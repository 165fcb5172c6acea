//! The full solver against exhaustive enumeration, across all three
//! instance models, plus composition and configuration behavior.

use max2sat_core::generator::generate;
use max2sat_core::oracle::brute_force;
use max2sat_core::{solve, Clause, Error, Formula, Model, SolverConfig, Var};

fn check(f: &Formula, config: &SolverConfig) {
    let sol = solve(f, config).unwrap();
    let (best, _) = brute_force(f).unwrap();
    assert_eq!(sol.optimum, best, "optimum mismatch on {f}");
    assert_eq!(
        f.satisfied_count(&sol.assignment).unwrap(),
        sol.optimum,
        "assignment does not reach the reported optimum on {f}"
    );
    let s = &sol.stats;
    assert_eq!(s.leaves, s.branch_nodes + 1 + s.component_splits);
    assert!(s.violations.is_empty(), "{:?}", s.violations);
}

#[test]
fn uniform_instances_match_the_oracle() {
    let config = SolverConfig {
        instrument: true,
        ..SolverConfig::default()
    };
    for seed in 0..200 {
        let n = 3 + (seed % 10) as u32;
        let k = 5 + seed % 36;
        let f = generate(Model::Uniform, n, k, seed).unwrap();
        check(&f, &config);
    }
}

#[test]
fn cubic_instances_match_the_oracle() {
    let config = SolverConfig {
        instrument: true,
        ..SolverConfig::default()
    };
    for n in [4u32, 6, 8, 10, 12] {
        for seed in 0..12 {
            let f = generate(Model::Cubic, n, 3 * u64::from(n) / 2, seed).unwrap();
            check(&f, &config);
        }
    }
}

#[test]
fn four_regular_instances_match_the_oracle() {
    let config = SolverConfig {
        instrument: true,
        ..SolverConfig::default()
    };
    for n in 3u32..=12 {
        for seed in 0..8 {
            let f = generate(Model::FourRegular, n, 2 * u64::from(n), seed).unwrap();
            check(&f, &config);
        }
    }
}

#[test]
fn disjoint_parts_add_up() {
    let config = SolverConfig::default();
    for seed in 0..40 {
        let a = generate(Model::Uniform, 6, 14, seed).unwrap();
        let b = generate(Model::Uniform, 6, 14, seed + 1000).unwrap();
        let shift = |c: &Clause| -> Clause {
            let mut lits = c.literals().map(|l| {
                max2sat_core::Lit::new(Var::new(l.var().id() + 20), l.positive())
            });
            match c.len() {
                1 => Clause::unit(lits.next().unwrap()),
                _ => {
                    let x = lits.next().unwrap();
                    let y = lits.next().unwrap();
                    Clause::binary(x, y)
                }
            }
        };
        let mut clauses = a.clauses().to_vec();
        clauses.extend(b.clauses().iter().map(shift));
        let joint = Formula::new(clauses);

        let sa = solve(&a, &config).unwrap();
        let sb = solve(&b, &config).unwrap();
        let sj = solve(&joint, &config).unwrap();
        assert_eq!(sj.optimum, sa.optimum + sb.optimum);
        assert_eq!(
            joint.satisfied_count(&sj.assignment).unwrap(),
            sj.optimum
        );
    }
}

#[test]
fn node_cap_trips_on_branchy_instances() {
    // 16 variables of degree 3 cannot be solved without branching
    let f = generate(Model::Cubic, 16, 24, 7).unwrap();
    let config = SolverConfig {
        node_cap: 0,
        ..SolverConfig::default()
    };
    match solve(&f, &config) {
        Err(Error::NodeCapExceeded(0)) => {}
        other => panic!("expected the cap to trip, got {other:?}"),
    }
}

#[test]
fn parallel_solving_reports_identical_results() {
    for seed in [3u64, 11, 29] {
        let f = generate(Model::Cubic, 20, 30, seed).unwrap();
        let base = solve(
            &f,
            &SolverConfig {
                instrument: true,
                ..SolverConfig::default()
            },
        )
        .unwrap();
        let par = solve(
            &f,
            &SolverConfig {
                instrument: true,
                parallel: true,
                ..SolverConfig::default()
            },
        )
        .unwrap();
        assert_eq!(par.optimum, base.optimum);
        assert_eq!(par.stats, base.stats);
        assert_eq!(
            f.satisfied_count(&par.assignment).unwrap(),
            par.optimum
        );
    }
}

#[test]
fn empty_and_trivial_formulas() {
    let config = SolverConfig::default();

    let empty = Formula::new(vec![]);
    let sol = solve(&empty, &config).unwrap();
    assert_eq!(sol.optimum, 0);
    assert!(sol.assignment.is_empty());

    let one = Formula::from_dimacs_ints(&[&[-3]]);
    let sol = solve(&one, &config).unwrap();
    assert_eq!(sol.optimum, 1);
    assert_eq!(sol.assignment.get(Var::new(3)), Some(false));
}

use std::collections::BTreeMap;

use max2sat_core::{Formula, Solution, SolverConfig, WeightTable};
use serde::Serialize;

/// Budget of the degree-weighted measure analysis; the leaf bound
/// `(k + 1) * 2^(k / BOUND_BUDGET)` holds for every input with k clauses.
const BOUND_BUDGET: f64 = 6.1489;

/// Machine-readable summary of one solver run. Field order is part of the
/// output format; two runs on the same input must serialize identically
/// except for `wall_time_ms`.
#[derive(Debug, Serialize)]
pub struct StatsReport {
    pub optimum: u64,
    pub n: usize,
    pub k: usize,
    pub branch_nodes: u64,
    pub leaves: u64,
    pub priority_histogram: BTreeMap<u8, u64>,
    pub violations: Vec<String>,
    pub rr5_skipped: u64,
    pub wall_time_ms: u64,
    pub weights_variant: String,
    pub leaf_bound: f64,
    pub gamma_initial: f64,
    pub gamma_initial_scaled: i64,
}

impl StatsReport {
    pub fn new(f: &Formula, sol: &Solution, config: &SolverConfig, wall_time_ms: u64) -> StatsReport {
        let wt = WeightTable::new(config.weights);
        let k = f.clause_count();
        StatsReport {
            optimum: sol.optimum,
            n: f.n_vars(),
            k,
            branch_nodes: sol.stats.branch_nodes,
            leaves: sol.stats.leaves,
            priority_histogram: sol.stats.priority_histogram.clone(),
            violations: sol.stats.violations.clone(),
            rr5_skipped: sol.stats.rr5_skipped,
            wall_time_ms,
            weights_variant: config.weights.name().to_string(),
            leaf_bound: (k as f64 + 1.0) * 2f64.powf(k as f64 / BOUND_BUDGET),
            gamma_initial: wt.gamma(f),
            gamma_initial_scaled: wt.gamma_scaled(f),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use max2sat_core::solve;

    #[test]
    fn report_fields_keep_their_order() {
        let f = max2sat_core::dimacs::parse("p cnf 2 3\n1 2 0\n-1 2 0\n1 -2 0\n").unwrap();
        let config = SolverConfig::default();
        let sol = solve(&f, &config).unwrap();
        let report = StatsReport::new(&f, &sol, &config, 12);
        let json = report.to_json();
        let order = [
            "optimum",
            "\"n\"",
            "\"k\"",
            "branch_nodes",
            "leaves",
            "priority_histogram",
            "violations",
            "rr5_skipped",
            "wall_time_ms",
            "weights_variant",
            "leaf_bound",
            "gamma_initial",
            "gamma_initial_scaled",
        ];
        let mut last = 0;
        for key in order {
            let at = json.find(key).unwrap_or_else(|| panic!("missing key {key}"));
            assert!(at > last || key == "optimum", "{key} out of order");
            last = at;
        }
        assert_eq!(report.optimum, 3);
        assert_eq!(report.n, 2);
        assert_eq!(report.k, 3);
    }

    #[test]
    fn leaf_bound_matches_the_closed_form() {
        let f = max2sat_core::dimacs::parse("p cnf 2 3\n1 2 0\n-1 2 0\n1 -2 0\n").unwrap();
        let config = SolverConfig::default();
        let sol = solve(&f, &config).unwrap();
        let report = StatsReport::new(&f, &sol, &config, 0);
        let expected = 4.0 * 2f64.powf(3.0 / 6.1489);
        assert!((report.leaf_bound - expected).abs() < 1e-9);
    }
}

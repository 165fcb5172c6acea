//! Hand-built formulas that pin down every priority of the branching
//! ladder: which variable gets picked, under which subcase tag, and that
//! the instrumented solve of each formula stays within its branch vector.
//!
//! All gadgets are reduction fixpoints by construction: every variable has
//! weight 3 or more in both polarities and repeated edges only join
//! weight-4 variables, so selection happens on the formula as written.

use max2sat_core::generator::formula_from_edges;
use max2sat_core::heuristics::{
    cubic_lookahead, find_limited, select_branch_variable, shared_neighbor_count,
    LimitedStructure,
};
use max2sat_core::oracle::brute_force;
use max2sat_core::{reduce, solve, SolverConfig, Var, WeightTable, WeightVariant};

fn v(id: u32) -> Var {
    Var::new(id)
}

fn wt() -> WeightTable {
    WeightTable::new(WeightVariant::Simple)
}

/// Asserts the gadget is a fixpoint, selects as expected, and solves to the
/// oracle optimum with no instrumentation violations. Returns the solve
/// stats for extra checks.
fn gadget(
    edges: &[(u32, u32)],
    var: u32,
    priority: u8,
    subcase: &str,
) -> max2sat_core::SearchStats {
    let f = formula_from_edges(edges);
    let red = reduce(&f).unwrap();
    assert!(
        red.formula.multiset_eq(&f) && red.trace.is_empty(),
        "gadget is not a reduction fixpoint"
    );

    let c = select_branch_variable(&f, &wt()).unwrap();
    assert_eq!(
        (c.variable, c.priority, c.subcase.as_str()),
        (v(var), priority, subcase)
    );

    let sol = solve(
        &f,
        &SolverConfig {
            instrument: true,
            ..SolverConfig::default()
        },
    )
    .unwrap();
    let (best, _) = brute_force(&f).unwrap();
    assert_eq!(sol.optimum, best);
    assert!(sol.stats.violations.is_empty(), "{:?}", sol.stats.violations);

    let root = &sol.stats.events[0];
    assert_eq!(
        (root.variable, root.priority, root.subcase.as_str()),
        (v(var), priority, subcase)
    );
    sol.stats
}

#[test]
fn weight_seven_hub() {
    gadget(
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (1, 7),
            (1, 8),
            (2, 3),
            (2, 9),
            (3, 9),
            (9, 10),
            (4, 5),
            (4, 10),
            (5, 10),
            (6, 7),
            (6, 8),
            (7, 8),
        ],
        1,
        1,
        "P1",
    );
}

#[test]
fn unlimited_variable_next_to_a_pair() {
    gadget(
        &[
            (1, 2),
            (1, 2),
            (1, 3),
            (1, 6),
            (2, 7),
            (2, 8),
            (3, 9),
            (3, 10),
            (3, 11),
            (6, 7),
            (6, 9),
            (7, 10),
            (8, 11),
            (8, 12),
            (9, 12),
            (10, 12),
            (11, 12),
        ],
        3,
        4,
        "P4",
    );
}

fn sequence_gadget_edges() -> Vec<(u32, u32)> {
    vec![
        (1, 2),
        (1, 2),
        (2, 3),
        (2, 3),
        (1, 4),
        (1, 5),
        (3, 6),
        (3, 7),
        (4, 8),
        (4, 9),
        (5, 10),
        (5, 11),
        (6, 8),
        (6, 10),
        (7, 9),
        (7, 11),
        (8, 12),
        (9, 12),
        (10, 12),
        (11, 12),
    ]
}

#[test]
fn pair_sequences_branch_at_an_endpoint() {
    let edges = sequence_gadget_edges();
    let f = formula_from_edges(&edges);
    assert_eq!(
        find_limited(&f.variable_graph()),
        vec![LimitedStructure::Sequence(vec![v(1), v(2), v(3)])]
    );
    gadget(&edges, 1, 5, "P5-seq");
}

#[test]
fn pair_cycles_branch_at_the_smallest_member() {
    let mut edges = Vec::new();
    for i in 1..=10u32 {
        let j = if i == 10 { 1 } else { i + 1 };
        edges.push((i, j));
        edges.push((i, j));
    }
    let stats = gadget(&edges, 1, 5, "P5-cycle");
    // one branch wipes out the whole ring in both subtrees
    assert_eq!(stats.branch_nodes, 1);
    assert!(stats.events[0].regular);
}

#[test]
fn pair_with_one_anchored_neighbor() {
    let edges = [
        (1, 2),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 5),
        (3, 4),
        (4, 6),
        (5, 7),
        (5, 8),
        (6, 9),
        (6, 10),
        (7, 8),
        (7, 9),
        (8, 10),
        (9, 10),
    ];
    gadget(&edges, 4, 6, "P6-case2");

    // the escaping neighbor shares fewer outside contacts with the pair
    let g = formula_from_edges(&edges).variable_graph();
    assert_eq!(shared_neighbor_count(&g, v(1), v(3)), 2);
    assert_eq!(shared_neighbor_count(&g, v(1), v(4)), 1);
}

#[test]
fn pair_with_both_neighbors_on_the_partner() {
    gadget(
        &[
            (1, 2),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 5),
            (4, 6),
            (5, 7),
            (5, 8),
            (6, 9),
            (6, 10),
            (7, 8),
            (7, 9),
            (8, 10),
            (9, 10),
        ],
        3,
        6,
        "P6-case3a",
    );
}

#[test]
fn pair_with_adjacent_neighbors() {
    gadget(
        &[
            (1, 2),
            (1, 2),
            (1, 3),
            (1, 4),
            (3, 4),
            (3, 5),
            (4, 6),
            (2, 7),
            (2, 8),
            (5, 9),
            (5, 10),
            (6, 11),
            (6, 12),
            (7, 9),
            (7, 11),
            (8, 10),
            (8, 12),
            (9, 10),
            (11, 12),
        ],
        3,
        6,
        "P6-case3b",
    );
}

#[test]
fn pair_with_one_doubly_escaping_neighbor() {
    gadget(
        &[
            (1, 2),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 8),
            (3, 5),
            (4, 6),
            (4, 7),
            (5, 9),
            (5, 12),
            (6, 9),
            (6, 10),
            (7, 10),
            (7, 11),
            (8, 11),
            (8, 12),
            (9, 11),
            (10, 12),
        ],
        4,
        6,
        "P6-case4",
    );
}

#[test]
fn pair_with_fully_escaping_neighbors() {
    gadget(
        &[
            (1, 2),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 9),
            (2, 10),
            (3, 5),
            (3, 6),
            (4, 7),
            (4, 8),
            (5, 6),
            (5, 11),
            (6, 12),
            (7, 8),
            (7, 11),
            (8, 12),
            (9, 10),
            (9, 11),
            (10, 12),
        ],
        1,
        6,
        "P6-case5",
    );
}

#[test]
fn hub_with_an_escaping_path() {
    gadget(
        &[
            (1, 2),
            (1, 6),
            (1, 7),
            (1, 8),
            (2, 3),
            (2, 4),
            (3, 5),
            (3, 6),
            (3, 9),
            (4, 5),
            (4, 7),
            (4, 10),
            (5, 11),
            (5, 12),
            (6, 8),
            (6, 9),
            (7, 8),
            (7, 10),
            (8, 11),
            (9, 11),
            (9, 12),
            (10, 11),
            (10, 12),
        ],
        1,
        7,
        "P7-3path-l1",
    );
}

#[test]
fn heavy_variable_with_captive_light_neighbors() {
    gadget(
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (3, 4),
            (2, 6),
            (5, 6),
            (5, 7),
            (5, 8),
            (6, 7),
            (6, 8),
            (7, 9),
            (7, 10),
            (8, 11),
            (8, 12),
            (9, 10),
            (9, 11),
            (9, 12),
            (10, 11),
            (10, 12),
            (11, 12),
        ],
        1,
        8,
        "P8",
    );
}

#[test]
fn cubic_graph_with_a_detached_triangle() {
    gadget(
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 5),
            (2, 6),
            (5, 6),
            (5, 7),
            (6, 8),
            (3, 7),
            (3, 9),
            (4, 8),
            (4, 10),
            (7, 11),
            (9, 10),
            (9, 11),
            (10, 12),
            (11, 12),
            (8, 12),
        ],
        1,
        9,
        "P9",
    );
}

fn petersen_edges() -> Vec<(u32, u32)> {
    vec![
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 1),
        (1, 6),
        (2, 7),
        (3, 8),
        (4, 9),
        (5, 10),
        (6, 8),
        (8, 10),
        (10, 7),
        (7, 9),
        (9, 6),
    ]
}

#[test]
fn triangle_free_cubic_graph_uses_the_lookahead() {
    // one branch collapses all ten vertices; in the other, the weight-2
    // neighbors are substituted away, which rewires their edges and leaves
    // a 3-regular remainder of six
    gadget(&petersen_edges(), 1, 10, "P10-lemma5");
}

#[test]
fn lookahead_reductions_are_whole_variables() {
    let f = formula_from_edges(&petersen_edges());
    let table = wt();
    let w3 = table.omega_scaled(3);
    let (hi, lo) = cubic_lookahead(&f, &table, v(1)).unwrap();
    assert_eq!((hi, lo), (10 * w3, 4 * w3));
}

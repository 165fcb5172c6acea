//! Branch-variable selection: a ten-level priority ladder over the variable
//! graph of a reduced formula, plus the structural helpers it is built from.
//!
//! The ladder inspects weights top down. High weights (priorities 1 to 3)
//! need no structure beyond a degree filter. Weight-4 graphs are driven by
//! "limited" variables, variable pairs joined by a repeated edge
//! (priorities 4 to 6), then by paths of weight-3 neighbors around a
//! weight-4 hub (priorities 7 and 8). What remains is 3-regular and handled
//! by triangles (priority 9) or a one-step reduction lookahead (priority 10).
//! All ties break toward the smallest variable id, so selection is
//! deterministic.

use std::collections::{BTreeMap, BTreeSet};

use crate::dimacs;
use crate::error::{Error, Result};
use crate::formula::{Formula, Lit, Var, VarGraph};
use crate::measure::WeightTable;
use crate::reduction::reduce;

/// How the limited variables of a reduced formula hang together: vertices
/// are the weight-4 variables with a doubled edge, edges join partner pairs.
/// A weight-4 variable has at most two partners, so components are paths or
/// cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitedStructure {
    /// An isolated partner pair, smaller id first.
    Pair(Var, Var),
    /// A path of three or more, listed from its smaller-id endpoint.
    Sequence(Vec<Var>),
    /// A closed ring, listed from its smallest member toward that member's
    /// smaller pair-neighbor.
    Cycle(Vec<Var>),
}

/// The selector's verdict: which variable to branch on, which priority
/// produced it, the subcase tag the analysis files the branch under, and
/// whether the closed neighborhood was regular at selection time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchChoice {
    pub variable: Var,
    pub priority: u8,
    pub subcase: String,
    pub regular: bool,
}

fn neighborhood_regular(g: &VarGraph, v: Var) -> bool {
    let d = g.degree(v);
    g.closed_neighbor_set(v).iter().all(|&u| g.degree(u) == d)
}

fn choice(g: &VarGraph, v: Var, priority: u8, subcase: &str) -> Result<BranchChoice> {
    Ok(BranchChoice {
        variable: v,
        priority,
        subcase: subcase.to_string(),
        regular: neighborhood_regular(g, v),
    })
}

/// Decomposes the limited variables into pairs, sequences and cycles,
/// ordered by smallest member. Assumes a reduced formula, where both
/// endpoints of any surviving doubled edge have weight 4.
pub fn find_limited(g: &VarGraph) -> Vec<LimitedStructure> {
    let mut pair_adj: BTreeMap<Var, Vec<Var>> = BTreeMap::new();
    for v in g.vertices() {
        if g.degree(v) != 4 {
            continue;
        }
        for &u in &g.neighbor_set(v) {
            if u != v && g.degree(u) == 4 && g.parallel(v, u) >= 2 {
                pair_adj.entry(v).or_default().push(u);
            }
        }
    }

    let mut seen: BTreeSet<Var> = BTreeSet::new();
    let mut out = Vec::new();
    for (&start, _) in &pair_adj {
        if seen.contains(&start) {
            continue;
        }
        let mut comp: BTreeSet<Var> = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if !comp.insert(v) {
                continue;
            }
            stack.extend(pair_adj[&v].iter().copied());
        }
        seen.extend(comp.iter().copied());

        let endpoints: Vec<Var> = comp
            .iter()
            .copied()
            .filter(|v| pair_adj[v].len() == 1)
            .collect();
        if endpoints.is_empty() {
            // a ring; orient from the smallest member toward its smaller
            // neighbor
            let s = *comp.iter().next().expect("component is nonempty");
            let mut order = vec![s];
            let mut prev = s;
            let mut cur = *pair_adj[&s].iter().min().expect("ring member has partners");
            while cur != s {
                order.push(cur);
                let next = *pair_adj[&cur]
                    .iter()
                    .find(|&&x| x != prev)
                    .expect("ring member has two distinct partners");
                prev = cur;
                cur = next;
            }
            out.push(LimitedStructure::Cycle(order));
        } else if comp.len() == 2 {
            let mut it = comp.iter().copied();
            let a = it.next().expect("pair has two members");
            let b = it.next().expect("pair has two members");
            out.push(LimitedStructure::Pair(a, b));
        } else {
            let s = *endpoints.iter().min().expect("path has endpoints");
            let mut order = vec![s];
            let mut prev = s;
            let mut cur = pair_adj[&s][0];
            loop {
                order.push(cur);
                match pair_adj[&cur].iter().find(|&&x| x != prev) {
                    Some(&next) => {
                        prev = cur;
                        cur = next;
                    }
                    None => break,
                }
            }
            out.push(LimitedStructure::Sequence(order));
        }
    }
    out
}

/// The smallest variable of the given weight whose distinct neighbors'
/// weights sum below `cap`. A miss for cap = 9 * weight proves that every
/// such variable sits in a weight-regular neighborhood.
pub fn preference_filter(g: &VarGraph, weight: usize, cap: usize) -> Option<Var> {
    g.vertices().find(|&v| {
        g.degree(v) == weight && {
            let sum: usize = g.neighbor_set(v).iter().map(|&u| g.degree(u)).sum();
            sum < cap
        }
    })
}

/// Common neighbors of `hub` and `c`, not counting either endpoint.
pub fn shared_neighbor_count(g: &VarGraph, hub: Var, c: Var) -> usize {
    let hub_nbrs = g.neighbor_set(hub);
    g.neighbor_set(c)
        .iter()
        .filter(|&&x| x != hub && x != c && hub_nbrs.contains(&x))
        .count()
}

/// Scans a 3-regular graph for a variable v with a neighbor a lying on a
/// triangle a, b, c whose other corners avoid N[v]; branching v then
/// collapses the triangle in both subtrees. Returns the first such v.
pub fn pending_triangle(g: &VarGraph) -> Option<Var> {
    for v in g.vertices() {
        let closed = g.closed_neighbor_set(v);
        for &a in &g.neighbor_set(v) {
            let candidates: Vec<Var> = g
                .neighbor_set(a)
                .into_iter()
                .filter(|x| !closed.contains(x))
                .collect();
            for (i, &b) in candidates.iter().enumerate() {
                for &c in &candidates[i + 1..] {
                    if g.neighbor_set(b).contains(&c) {
                        return Some(v);
                    }
                }
            }
        }
    }
    None
}

/// Reduction lookahead for 3-regular graphs: the scaled gamma drop after
/// assigning v each way and re-reducing, larger component first. In a
/// 3-regular graph both drops are exact multiples of omega_3.
pub fn cubic_lookahead(f: &Formula, wt: &WeightTable, v: Var) -> Result<(i64, i64)> {
    let base = wt.gamma_scaled(f);
    let rt = base - wt.gamma_scaled(&reduce(&f.assign(Lit::pos(v)))?.formula);
    let rf = base - wt.gamma_scaled(&reduce(&f.assign(Lit::neg(v)))?.formula);
    Ok(if rt >= rf { (rt, rf) } else { (rf, rt) })
}

fn first_of_degree(g: &VarGraph, weight: usize) -> Var {
    g.vertices()
        .find(|&v| g.degree(v) == weight)
        .expect("caller checked a vertex of this weight exists")
}

/// Picks the branch variable for a reduced, connected formula that is too
/// large for exhaustive search. Tries each priority in turn; the returned
/// subcase tag keys into the branch-vector table.
pub fn select_branch_variable(f: &Formula, wt: &WeightTable) -> Result<BranchChoice> {
    let g = f.variable_graph();

    if let Some(v) = g.vertices().find(|&v| g.degree(v) >= 7) {
        return choice(&g, v, 1, "P1");
    }

    if g.vertices().any(|v| g.degree(v) == 6) {
        if let Some(v) = preference_filter(&g, 6, 36) {
            return choice(&g, v, 2, "P2");
        }
        // no weight-6 variable sees anything lighter, so by connectivity
        // the whole graph is 6-regular
        return choice(&g, first_of_degree(&g, 6), 2, "6-regular");
    }

    if g.vertices().any(|v| g.degree(v) == 5) {
        if let Some(v) = preference_filter(&g, 5, 25) {
            return choice(&g, v, 3, "P3");
        }
        return choice(&g, first_of_degree(&g, 5), 3, "5-regular");
    }

    let limited = find_limited(&g);
    if !limited.is_empty() {
        let mut members: BTreeSet<Var> = BTreeSet::new();
        for s in &limited {
            match s {
                LimitedStructure::Pair(a, b) => {
                    members.insert(*a);
                    members.insert(*b);
                }
                LimitedStructure::Sequence(vs) | LimitedStructure::Cycle(vs) => {
                    members.extend(vs.iter().copied());
                }
            }
        }

        for v in g.vertices() {
            if g.degree(v) == 4
                && !members.contains(&v)
                && g.neighbor_set(v).iter().any(|u| members.contains(u))
            {
                return choice(&g, v, 4, "P4");
            }
        }

        for s in &limited {
            match s {
                LimitedStructure::Sequence(vs) => return choice(&g, vs[0], 5, "P5-seq"),
                LimitedStructure::Cycle(vs) => return choice(&g, vs[0], 5, "P5-cycle"),
                LimitedStructure::Pair(..) => {}
            }
        }

        for s in &limited {
            if let LimitedStructure::Pair(u1, u2) = s {
                return classify_pair(&g, *u1, *u2);
            }
        }
        unreachable!("limited structures are pairs, sequences or cycles");
    }

    if let Some(c) = hub_with_escaping_path(&g)? {
        return Ok(c);
    }

    if g.vertices().any(|v| g.degree(v) == 4) {
        if let Some(v) = preference_filter(&g, 4, 16) {
            return choice(&g, v, 8, "P8");
        }
        return choice(&g, first_of_degree(&g, 4), 8, "4-regular");
    }

    if let Some(v) = pending_triangle(&g) {
        return choice(&g, v, 9, "P9");
    }

    let w3 = wt.omega_scaled(3);
    for v in g.vertices() {
        let (hi, lo) = cubic_lookahead(f, wt, v)?;
        if hi >= 8 * w3 && lo >= 6 * w3 {
            return choice(&g, v, 10, "P10-lemma4");
        }
        if hi >= 10 * w3 && lo >= 4 * w3 {
            return choice(&g, v, 10, "P10-lemma5");
        }
    }

    let degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    Err(Error::NoPriorityApplies(format!(
        "n={} clauses={} degrees={:?}\n{}",
        f.n_vars(),
        f.clause_count(),
        degrees,
        dimacs::serialize(f)
    )))
}

/// Priority 6. u1, u2 form an isolated limited pair; y, z are u1's single-
/// edge neighbors. The subcase depends on how many neighbors y and z keep
/// outside N[u1].
fn classify_pair(g: &VarGraph, u1: Var, u2: Var) -> Result<BranchChoice> {
    let singles: Vec<Var> = g
        .neighbor_set(u1)
        .into_iter()
        .filter(|&c| c != u2)
        .collect();
    if singles.len() != 2 {
        return choice(g, u1, 6, "P6-atypical");
    }
    let (y, z) = (singles[0], singles[1]);
    if g.degree(y) != 3 || g.degree(z) != 3 {
        // a weight-4 single-edge neighbor of a limited variable is itself
        // limited here (an unlimited one would have fired priority 4), so
        // branching u1 cascades through two pairs
        return choice(g, u1, 6, "P6-atypical");
    }

    let closed = g.closed_neighbor_set(u1);
    let outside = |c: Var| {
        g.neighbor_set(c)
            .iter()
            .filter(|x| !closed.contains(x))
            .count()
    };
    let (oy, oz) = (outside(y), outside(z));
    let (y, z, oy, oz) = if oy <= oz {
        (y, z, oy, oz)
    } else {
        (z, y, oz, oy)
    };

    match (oy, oz) {
        (0, 1) => choice(g, z, 6, "P6-case2"),
        (1, 1) => {
            // with one escape each, y and z either both lean on u2 or on
            // each other; mixed attachments would contradict the counts
            let tag = if g.neighbor_set(y).contains(&u2) {
                "P6-case3a"
            } else {
                "P6-case3b"
            };
            choice(g, y.min(z), 6, tag)
        }
        (1, 2) => choice(g, z, 6, "P6-case4"),
        (2, 2) => choice(g, u1, 6, "P6-case5"),
        _ => choice(g, u1, 6, "P6-atypical"),
    }
}

/// Priority 7. A hub is a weight-4 variable with a weight-3 neighbor that
/// escapes N[hub]. Among hubs, the heaviest distinct neighborhood wins.
/// From the smallest escaping neighbor the forced walk along weight-3
/// variables inside N(hub) classifies the subcase:
/// it either leaves the neighborhood (3path, lasso when it returns to the
/// first escape vertex) or ends on a weight-4 member of N(hub) (4path).
fn hub_with_escaping_path(g: &VarGraph) -> Result<Option<BranchChoice>> {
    let escapes = |z: Var, closed: &BTreeSet<Var>| {
        g.degree(z) == 3 && g.neighbor_set(z).iter().any(|x| !closed.contains(x))
    };

    let mut best: Option<(usize, Var)> = None;
    for v in g.vertices() {
        if g.degree(v) != 4 {
            continue;
        }
        let closed = g.closed_neighbor_set(v);
        if !g.neighbor_set(v).iter().any(|&z| escapes(z, &closed)) {
            continue;
        }
        let score: usize = g.neighbor_set(v).iter().map(|&u| g.degree(u)).sum();
        if best.map_or(true, |(s, _)| score > s) {
            best = Some((score, v));
        }
    }
    let Some((_, v)) = best else {
        return Ok(None);
    };

    let closed = g.closed_neighbor_set(v);
    let u1 = g
        .neighbor_set(v)
        .into_iter()
        .find(|&z| escapes(z, &closed))
        .expect("hub qualified through some escaping neighbor");
    let outside: Vec<Var> = g
        .neighbor_set(u1)
        .into_iter()
        .filter(|x| !closed.contains(x))
        .collect();
    let u0 = *outside.iter().min().expect("u1 escapes the neighborhood");
    if outside.len() == 2 {
        return Ok(Some(choice(g, v, 7, "P7-3path-l1")?));
    }

    // u1 has neighbors v, u0 and one continuation; each later weight-3 link
    // inside N(v) has neighbors v, its predecessor and one continuation
    let mut len = 1usize;
    let mut cur = u1;
    let mut cont = *g
        .neighbor_set(u1)
        .iter()
        .find(|&&x| x != v && x != u0)
        .expect("weight-3 variable has a third neighbor");
    loop {
        if cont == u0 {
            return Ok(Some(choice(g, v, 7, &format!("P7-3lasso-l{len}"))?));
        }
        if !closed.contains(&cont) {
            return Ok(Some(choice(g, v, 7, &format!("P7-3path-l{len}"))?));
        }
        if g.degree(cont) == 4 {
            return Ok(Some(choice(g, v, 7, &format!("P7-4path-l{}", len + 1))?));
        }
        len += 1;
        let next = *g
            .neighbor_set(cont)
            .iter()
            .find(|&&x| x != v && x != cur)
            .expect("weight-3 variable has a third neighbor");
        cur = cont;
        cont = next;
    }
}

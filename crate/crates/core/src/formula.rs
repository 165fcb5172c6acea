//! Formula data model for Max-2-SAT.
//!
//! A formula is a multiset of one- and two-literal clauses plus a counter of
//! clauses already known satisfied (`truth_count`). Deleting a satisfied
//! clause moves it into the counter, so the number the solver maximizes is
//! `truth_count` plus the clauses satisfiable in what remains. The clause
//! count of the instance as originally built (`original_clause_count`) is
//! carried through so bounds stated in terms of the input size stay
//! meaningful on derived formulas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Not;

use crate::error::{Error, Result};

/// Variable identifier. Ids start at 1, matching DIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics on id 0; variable numbering is 1-based.
    pub fn new(id: u32) -> Var {
        assert!(id != 0, "variable ids are 1-based");
        Var(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A literal: a variable with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    var: Var,
    positive: bool,
}

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit { var, positive }
    }

    pub fn pos(var: Var) -> Lit {
        Lit::new(var, true)
    }

    pub fn neg(var: Var) -> Lit {
        Lit::new(var, false)
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn positive(self) -> bool {
        self.positive
    }

    pub fn from_dimacs(value: i32) -> Result<Lit> {
        if value == 0 {
            return Err(Error::Parse {
                line: 0,
                msg: "literal 0 is reserved as the clause terminator".into(),
            });
        }
        Ok(Lit::new(Var::new(value.unsigned_abs()), value > 0))
    }

    pub fn to_dimacs(self) -> i32 {
        let id = self.var.id() as i32;
        if self.positive {
            id
        } else {
            -id
        }
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit::new(self.var, !self.positive)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A clause of one or two literals.
///
/// Binary clauses are kept with their literals in sorted order and never hold
/// the same literal twice ({l, l} collapses to the unit {l} at construction).
/// A complementary pair {l, !l} is a legitimate binary clause (a tautology);
/// the reduction layer is what removes those.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    Unit(Lit),
    Binary(Lit, Lit),
}

impl Clause {
    pub fn unit(l: Lit) -> Clause {
        Clause::Unit(l)
    }

    pub fn binary(a: Lit, b: Lit) -> Clause {
        if a == b {
            Clause::Unit(a)
        } else if a <= b {
            Clause::Binary(a, b)
        } else {
            Clause::Binary(b, a)
        }
    }

    pub fn contains(&self, l: Lit) -> bool {
        match *self {
            Clause::Unit(a) => a == l,
            Clause::Binary(a, b) => a == l || b == l,
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match *self {
            Clause::Unit(a) => a.var() == v,
            Clause::Binary(a, b) => a.var() == v || b.var() == v,
        }
    }

    pub fn literals(&self) -> impl Iterator<Item = Lit> + '_ {
        let (a, b) = match *self {
            Clause::Unit(a) => (a, None),
            Clause::Binary(a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }

    pub fn len(&self) -> usize {
        match self {
            Clause::Unit(_) => 1,
            Clause::Binary(_, _) => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True for {l, !l}, which is satisfied under every assignment.
    pub fn is_tautology(&self) -> bool {
        matches!(*self, Clause::Binary(a, b) if a == !b)
    }

    /// The other literal of a binary clause, None for units.
    pub fn partner(&self, l: Lit) -> Option<Lit> {
        match *self {
            Clause::Binary(a, b) if a == l => Some(b),
            Clause::Binary(a, b) if b == l => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Clause::Unit(a) => write!(f, "({a})"),
            Clause::Binary(a, b) => write!(f, "({a} {b})"),
        }
    }
}

/// A total or partial mapping from variables to truth values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Var, bool>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.0.insert(var, value);
    }

    pub fn set_lit(&mut self, l: Lit) {
        self.set(l.var(), l.positive());
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.0.get(&var).copied()
    }

    pub fn contains(&self, var: Var) -> bool {
        self.0.contains_key(&var)
    }

    /// Truth value of a literal, None while its variable is unassigned.
    pub fn lit_value(&self, l: Lit) -> Option<bool> {
        self.get(l.var()).map(|v| v == l.positive())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.0.iter().map(|(v, b)| (*v, *b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Multigraph on the variables of a formula with one edge per binary clause.
///
/// Unit clauses contribute isolated vertices only. A tautology {x, !x} is a
/// self-loop; it is stored once, so the degree of a variable always equals
/// the number of binary clauses it occurs in (its weight).
#[derive(Debug, Clone)]
pub struct VarGraph {
    adj: BTreeMap<Var, Vec<Var>>,
}

impl VarGraph {
    fn add_vertex(&mut self, v: Var) {
        self.adj.entry(v).or_default();
    }

    fn add_edge(&mut self, u: Var, v: Var) {
        if u == v {
            self.adj.entry(u).or_default().push(u);
        } else {
            self.adj.entry(u).or_default().push(v);
            self.adj.entry(v).or_default().push(u);
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Var> + '_ {
        self.adj.keys().copied()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.adj.contains_key(&v)
    }

    /// Number of binary clauses the variable occurs in.
    pub fn degree(&self, v: Var) -> usize {
        self.adj.get(&v).map_or(0, |ns| ns.len())
    }

    /// Neighbor list with multiplicities, sorted; self-loops appear as v.
    pub fn neighbors_multi(&self, v: Var) -> &[Var] {
        self.adj.get(&v).map_or(&[], |ns| ns.as_slice())
    }

    /// Distinct neighbors other than v itself (open neighborhood).
    pub fn neighbor_set(&self, v: Var) -> BTreeSet<Var> {
        self.neighbors_multi(v)
            .iter()
            .copied()
            .filter(|&u| u != v)
            .collect()
    }

    /// Distinct neighbors including v itself (closed neighborhood).
    pub fn closed_neighbor_set(&self, v: Var) -> BTreeSet<Var> {
        let mut s = self.neighbor_set(v);
        s.insert(v);
        s
    }

    /// Number of parallel edges between two distinct vertices.
    pub fn parallel(&self, u: Var, v: Var) -> usize {
        if u == v {
            return 0;
        }
        self.neighbors_multi(u).iter().filter(|&&w| w == v).count()
    }

    pub fn has_self_loop(&self, v: Var) -> bool {
        self.neighbors_multi(v).contains(&v)
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<Var>> {
        let mut seen: BTreeSet<Var> = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.adj.keys().copied() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !comp.insert(v) {
                    continue;
                }
                for &u in self.neighbors_multi(v) {
                    if !comp.contains(&u) {
                        stack.push(u);
                    }
                }
            }
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }
}

/// A Max-2-SAT instance or a residual formula derived from one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    clauses: Vec<Clause>,
    truth_count: u64,
    original_clause_count: usize,
}

impl Formula {
    /// A fresh instance; the given clauses define its original size.
    pub fn new(clauses: Vec<Clause>) -> Formula {
        let original_clause_count = clauses.len();
        Formula {
            clauses,
            truth_count: 0,
            original_clause_count,
        }
    }

    /// Assembles a derived formula, e.g. a component or a replay result.
    pub fn from_parts(clauses: Vec<Clause>, truth_count: u64, original_clause_count: usize) -> Formula {
        Formula {
            clauses,
            truth_count,
            original_clause_count,
        }
    }

    /// Builds a formula from DIMACS-style integer clauses. Intended for
    /// tests and examples; panics on literal 0 or clauses of size > 2.
    pub fn from_dimacs_ints(clauses: &[&[i32]]) -> Formula {
        let cs = clauses
            .iter()
            .map(|ints| match **ints {
                [a] => Clause::unit(Lit::from_dimacs(a).unwrap()),
                [a, b] => Clause::binary(
                    Lit::from_dimacs(a).unwrap(),
                    Lit::from_dimacs(b).unwrap(),
                ),
                _ => panic!("clause of size {} not supported", ints.len()),
            })
            .collect();
        Formula::new(cs)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn truth_count(&self) -> u64 {
        self.truth_count
    }

    pub fn original_clause_count(&self) -> usize {
        self.original_clause_count
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses
            .iter()
            .flat_map(|c| c.literals().map(|l| l.var()))
            .collect()
    }

    pub fn n_vars(&self) -> usize {
        self.vars().len()
    }

    /// Occurrences of the exact literal in unit clauses.
    pub fn count_unit(&self, l: Lit) -> usize {
        self.clauses
            .iter()
            .filter(|c| matches!(c, Clause::Unit(a) if *a == l))
            .count()
    }

    /// Occurrences of the exact literal in binary clauses. A tautology
    /// {x, !x} counts once for x and once for !x.
    pub fn count_binary(&self, l: Lit) -> usize {
        self.clauses
            .iter()
            .filter(|c| matches!(c, Clause::Binary(_, _)) && c.contains(l))
            .count()
    }

    /// Number of binary clauses containing the variable in either polarity.
    pub fn weight(&self, v: Var) -> usize {
        self.clauses
            .iter()
            .filter(|c| matches!(c, Clause::Binary(_, _)) && c.contains_var(v))
            .count()
    }

    /// The formula after fixing a literal true: clauses containing it are
    /// counted satisfied and removed, the complement literal is deleted
    /// where it occurs, and falsified units disappear.
    pub fn assign(&self, lit: Lit) -> Formula {
        let mut clauses = Vec::with_capacity(self.clauses.len());
        let mut truth = self.truth_count;
        for c in &self.clauses {
            if c.contains(lit) {
                truth += 1;
                continue;
            }
            match *c {
                Clause::Unit(a) => {
                    if a != !lit {
                        clauses.push(Clause::Unit(a));
                    }
                }
                Clause::Binary(a, b) => {
                    if a == !lit {
                        clauses.push(Clause::Unit(b));
                    } else if b == !lit {
                        clauses.push(Clause::Unit(a));
                    } else {
                        clauses.push(Clause::Binary(a, b));
                    }
                }
            }
        }
        Formula {
            clauses,
            truth_count: truth,
            original_clause_count: self.original_clause_count,
        }
    }

    /// Variable multigraph over the binary clauses; every variable of the
    /// formula is a vertex, including unit-only ones.
    pub fn variable_graph(&self) -> VarGraph {
        let mut g = VarGraph {
            adj: BTreeMap::new(),
        };
        for c in &self.clauses {
            match *c {
                Clause::Unit(a) => g.add_vertex(a.var()),
                Clause::Binary(a, b) => g.add_edge(a.var(), b.var()),
            }
        }
        g
    }

    /// Splits into connected components of the variable graph.
    ///
    /// The first part is always the truth root: an empty formula carrying
    /// the accumulated truth, so the parts cover the whole objective and
    /// each ordinary component starts from zero. Ordinary components follow,
    /// ordered by their smallest variable, each carrying its own clause
    /// count as original size.
    pub fn components(&self) -> Vec<Formula> {
        let mut out = vec![Formula::from_parts(Vec::new(), self.truth_count, 0)];
        let graph = self.variable_graph();
        for comp in graph.components() {
            let clauses: Vec<Clause> = self
                .clauses
                .iter()
                .filter(|c| comp.contains(&c.literals().next().unwrap().var()))
                .cloned()
                .collect();
            let k = clauses.len();
            out.push(Formula::from_parts(clauses, 0, k));
        }
        out
    }

    /// Satisfied clauses under a total assignment, including accumulated
    /// truth. Errors if any variable of the formula is unassigned.
    pub fn satisfied_count(&self, assignment: &Assignment) -> Result<u64> {
        let mut count = self.truth_count;
        for c in &self.clauses {
            let mut sat = false;
            for l in c.literals() {
                match assignment.lit_value(l) {
                    Some(true) => {
                        sat = true;
                        break;
                    }
                    Some(false) => {}
                    None => return Err(Error::PartialAssignment(l.var().id())),
                }
            }
            if sat {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Equality as clause multisets with matching truth counters.
    pub fn multiset_eq(&self, other: &Formula) -> bool {
        if self.truth_count != other.truth_count {
            return false;
        }
        let mut a = self.clauses.clone();
        let mut b = other.clauses.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[truth={}]", self.truth_count)?;
        for c in &self.clauses {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

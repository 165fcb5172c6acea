//! Seeded instance generators for testing and benchmarks.
//!
//! Three models: uniform random 2-CNF, random cubic (every variable in
//! exactly three binary clauses) and random four-regular. The regular models
//! sample their multigraph with the pairing construction and then assign
//! polarities with [`formula_from_edges`], which balances the signs of each
//! variable so no literal comes out pure.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula::{Clause, Formula, Lit, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// `k` clauses over `n` variables; each is binary with probability 0.8,
    /// variables and polarities uniform and independent. Repeated variables
    /// are allowed, so units, duplicate clauses and tautologies all occur.
    Uniform,
    /// Random connected-or-not cubic structure: a simple 3-regular graph on
    /// `n` vertices, one binary clause per edge. Requires 2k = 3n.
    Cubic,
    /// Random 4-regular multigraph (double edges allowed, triples and loops
    /// rejected), one binary clause per edge. Requires k = 2n.
    FourRegular,
}

const PAIRING_ATTEMPTS: usize = 10_000;

/// One binary clause per edge, polarities chosen deterministically: each
/// endpoint takes the sign its variable has used less often so far (positive
/// on ties). Every variable with two or more edges ends up in both
/// polarities, and a double edge becomes the pair {a, b}, {!a, !b}.
///
/// Panics on self-edges or a zero vertex id; callers sample graphs without
/// loops.
pub fn formula_from_edges(edges: &[(u32, u32)]) -> Formula {
    let max_id = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
    let mut pos = vec![0u32; max_id as usize + 1];
    let mut neg = vec![0u32; max_id as usize + 1];
    let mut sign = |id: u32| -> bool {
        let positive = pos[id as usize] <= neg[id as usize];
        if positive {
            pos[id as usize] += 1;
        } else {
            neg[id as usize] += 1;
        }
        positive
    };
    let clauses = edges
        .iter()
        .map(|&(u, v)| {
            assert!(u != v, "self-edges have no binary clause");
            let lu = Lit::new(Var::new(u), sign(u));
            let lv = Lit::new(Var::new(v), sign(v));
            Clause::binary(lu, lv)
        })
        .collect();
    Formula::new(clauses)
}

fn uniform(rng: &mut ChaCha8Rng, n: u32, k: u64) -> Formula {
    let mut clauses = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let binary = rng.gen_bool(0.8);
        if binary {
            let a = Lit::new(Var::new(rng.gen_range(1..=n)), rng.gen_bool(0.5));
            let b = Lit::new(Var::new(rng.gen_range(1..=n)), rng.gen_bool(0.5));
            clauses.push(Clause::binary(a, b));
        } else {
            let a = Lit::new(Var::new(rng.gen_range(1..=n)), rng.gen_bool(0.5));
            clauses.push(Clause::unit(a));
        }
    }
    Formula::new(clauses)
}

/// Pairing construction: `degree` stubs per vertex, shuffled and matched up.
/// A sample is rejected on self-loops or on more than `max_parallel` copies
/// of an edge.
fn regular_edges(
    rng: &mut ChaCha8Rng,
    n: u32,
    degree: u32,
    max_parallel: usize,
) -> Result<Vec<(u32, u32)>> {
    let mut stubs: Vec<u32> = (1..=n).flat_map(|v| std::iter::repeat(v).take(degree as usize)).collect();
    'attempt: for _ in 0..PAIRING_ATTEMPTS {
        stubs.shuffle(rng);
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(stubs.len() / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        let over = edges
            .windows(max_parallel + 1)
            .any(|w| w.iter().all(|e| *e == w[0]));
        if over {
            continue 'attempt;
        }
        return Ok(edges);
    }
    Err(Error::InvalidParams(format!(
        "no {degree}-regular graph on {n} vertices found within {PAIRING_ATTEMPTS} samples"
    )))
}

pub fn generate(model: Model, n: u32, k: u64, seed: u64) -> Result<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        Model::Uniform => {
            if n == 0 || k == 0 {
                return Err(Error::InvalidParams(
                    "uniform model needs n >= 1 and k >= 1".into(),
                ));
            }
            Ok(uniform(&mut rng, n, k))
        }
        Model::Cubic => {
            if n == 0 || 2 * k != 3 * u64::from(n) {
                return Err(Error::InvalidParams(format!(
                    "cubic model needs even n and k = 3n/2, got n={n} k={k}"
                )));
            }
            let edges = regular_edges(&mut rng, n, 3, 1)?;
            Ok(formula_from_edges(&edges))
        }
        Model::FourRegular => {
            if n == 0 || k != 2 * u64::from(n) {
                return Err(Error::InvalidParams(format!(
                    "four-regular model needs k = 2n, got n={n} k={k}"
                )));
            }
            let edges = regular_edges(&mut rng, n, 4, 2)?;
            Ok(formula_from_edges(&edges))
        }
    }
}

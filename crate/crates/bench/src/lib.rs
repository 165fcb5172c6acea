//! Deterministic instance builders shared by the benchmarks.

use max2sat_core::{generator, Formula, Model};

/// Builds an instance with the clause count its model dictates: 3n/2 for
/// cubic, 2n for four-regular, 5n/2 for the uniform model.
pub fn instance(model: Model, n: u32, seed: u64) -> Formula {
    let k = match model {
        Model::Uniform => 5 * n as u64 / 2,
        Model::Cubic => 3 * n as u64 / 2,
        Model::FourRegular => 2 * n as u64,
    };
    generator::generate(model, n, k, seed).expect("benchmark parameters are valid")
}

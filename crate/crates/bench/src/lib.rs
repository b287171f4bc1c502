//! Inputs shared by the benchmarks.

use permsort_core::experiment::{trial_rng, uniform_costs};
use permsort_core::{CostMatrix, Cycle};

/// Uniform `[0, 1)` costs on `n` labels, fixed per `(n, index)`.
pub fn random_costs(n: usize, index: usize) -> CostMatrix {
    uniform_costs(n, &mut trial_rng(0xbe7c, n, index))
}

/// Integer costs in `1..=100` with roughly a fifth of the pairs missing.
pub fn sparse_integer_costs(n: usize, index: usize) -> CostMatrix {
    let dense = random_costs(n, index);
    CostMatrix::from_fn(n, |a, b| {
        let u = dense.get(a, b);
        if u < 0.2 {
            f64::INFINITY
        } else {
            (u * 125.0).floor().clamp(1.0, 100.0)
        }
    })
    .expect("valid costs")
}

/// The cycle `(1 2 ⋯ k)`.
pub fn full_cycle(k: usize) -> Cycle {
    Cycle::new((1..=k).collect()).expect("valid cycle")
}

//! Average minimum MLD cost of a random cycle, with and without optimizing
//! the transposition costs first.
//!
//! Every trial draws its own generator, ChaCha8 seeded with `seed` on stream
//! `(k << 32) | trial`, so output does not depend on thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cost::CostMatrix;
use crate::cycle::min_cost_mld;
use crate::error::{Error, Result};
use crate::optimizer::all_pairs_optimize;
use crate::permutation::Cycle;

pub const MIN_K: usize = 3;
pub const MAX_K: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub k: usize,
    pub trials: usize,
    pub mean_raw: f64,
    pub mean_opt: f64,
}

/// Generator for one trial.
pub fn trial_rng(seed: u64, k: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((k as u64) << 32) | trial as u64);
    rng
}

/// Complete cost matrix on `k` labels with i.i.d. uniform `[0, 1)` entries,
/// drawn in lexicographic pair order.
pub fn uniform_costs(k: usize, rng: &mut impl Rng) -> CostMatrix {
    let values: Vec<f64> = (0..k * (k - 1) / 2).map(|_| rng.gen::<f64>()).collect();
    let mut next = values.into_iter();
    CostMatrix::from_fn(k, |_, _| next.next().expect("one value per pair"))
        .expect("uniform costs are valid")
}

/// `(raw, optimized)` minimum MLD costs of the cycle `(1 2 ⋯ k)`.
pub fn trial(seed: u64, k: usize, index: usize) -> (f64, f64) {
    let raw = uniform_costs(k, &mut trial_rng(seed, k, index));
    let cycle = Cycle::new((1..=k).collect()).expect("valid cycle");
    let (_, on_raw) = min_cost_mld(&cycle, &raw.clone().trust_as_optimized()).expect("finite costs");
    let (_, on_opt) = min_cost_mld(&cycle, &all_pairs_optimize(&raw)).expect("finite costs");
    (on_raw, on_opt)
}

pub fn run_bench(kmin: usize, kmax: usize, trials: usize, seed: u64) -> Result<Vec<BenchRow>> {
    if !(MIN_K <= kmin && kmin <= kmax && kmax <= MAX_K) {
        return Err(Error::InvalidArgument(format!(
            "need {MIN_K} <= kmin <= kmax <= {MAX_K}, got kmin={kmin} kmax={kmax}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    Ok((kmin..=kmax)
        .map(|k| {
            let results: Vec<(f64, f64)> = (0..trials).into_par_iter().map(|t| trial(seed, k, t)).collect();
            // summed in trial order so the result is independent of scheduling
            let (mut raw, mut opt) = (0.0, 0.0);
            for (r, o) in results {
                raw += r;
                opt += o;
            }
            BenchRow {
                k,
                trials,
                mean_raw: raw / trials as f64,
                mean_opt: opt / trials as f64,
            }
        })
        .collect())
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("k,trials,mean_raw,mean_opt\n");
    for r in rows {
        out.push_str(&format!("{},{},{:.6},{:.6}\n", r.k, r.trials, r.mean_raw, r.mean_opt));
    }
    out
}

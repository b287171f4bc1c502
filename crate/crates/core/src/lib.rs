//! Low-cost transposition decompositions of permutations.
//!
//! Permutations act on `{1, …, n}`. A [`Decomposition`] is stored in written
//! order `t_m ⋯ t_1`: the last element is applied first.
//!
//! The usual pipeline is: build a raw [`CostMatrix`], optimize it into `φ*`
//! with [`Optimized::new`] (or [`all_pairs_optimize`]), then [`decompose`].

pub mod cost;
pub mod cycle;
pub mod decompose;
pub mod error;
pub mod experiment;
pub mod optimizer;
pub mod oracle;
pub mod permutation;
pub mod tree;

pub use cost::{extended_metric_path, metric_path, CostInput, CostKind, CostMatrix, DefiningPath};
pub use cycle::{
    analyze_cycle, cycle_lower_bound, metric_path_mcd, min_cost_mld, mld_table, simple_decomposition,
    CycleResult, MldTable,
};
pub use decompose::{
    bound_report, decompose, merge_cycles, merge_cycles_with, merged_decompose, merged_decompose_with,
    permutation_lower_bound, BoundReport, DecompositionReport, MergePlan, Method,
};
pub use error::{Error, Result};
pub use experiment::{run_bench, to_csv, BenchRow};
pub use optimizer::{
    all_pairs_optimize, bellman_ford, optimize_costs, shortest_path_costs, transposition_path_cost, Optimized,
    OptimizerReport, PathTable, Route, Table,
};
pub use oracle::{
    default_limit, mcd_exact, mld_exact_enumeration, mld_exact_search, transposition_min_cost_exact,
    CayleySearchResult, TreeEnumeration,
};
pub use permutation::{parse_transpositions, Cycle, Decomposition, Parity, Permutation, Transposition};

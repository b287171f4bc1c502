//! Decompositions of a single cycle.
//!
//! [`min_cost_mld`] is an interval dynamic program over contiguous arcs of
//! the cycle. Writing `C(i, j)` for the cheapest minimum length decomposition
//! of the arc cycle `(c_i ⋯ c_j)`,
//!
//! ```text
//! (c_i ⋯ c_j) = (c_{s+1} ⋯ c_r)(c_i c_r)(c_r ⋯ c_j)(c_i ⋯ c_s),   i ≤ s < r ≤ j
//! C(i, j)     = min over (s, r) of C(s+1, r) + φ*(c_i, c_r) + C(r, j) + C(i, s)
//! ```
//!
//! which covers every non-crossing spanning tree of the cycle, and hence
//! every minimum length decomposition.

use crate::cost::{metric_path, CostKind, CostMatrix, DefiningPath};
use crate::error::{Error, Result};
use crate::permutation::{Cycle, Decomposition, Transposition};
use crate::tree::tree_to_mld;

/// Arc costs and optimal splits of the interval program.
#[derive(Debug, Clone)]
pub struct MldTable {
    k: usize,
    cost: Vec<f64>,
    split: Vec<Option<(usize, usize)>>,
}

impl MldTable {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `C(i, j)` over 0-based positions of the canonical rotation, `i ≤ j`.
    pub fn cost(&self, i: usize, j: usize) -> f64 {
        self.cost[i * self.k + j]
    }

    /// Minimising `(s, r)` for the arc `(i, j)`, if `j > i`.
    pub fn split(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        self.split[i * self.k + j]
    }

    /// `C(0, k-1)`, the cost of the whole cycle.
    pub fn total(&self) -> f64 {
        if self.k == 0 {
            0.0
        } else {
            self.cost(0, self.k - 1)
        }
    }

    fn reconstruct(&self, elems: &[usize], i: usize, j: usize, out: &mut Vec<Transposition>) {
        if i >= j {
            return;
        }
        let (s, r) = self.split(i, j).expect("finite arc has a split");
        self.reconstruct(elems, s + 1, r, out);
        out.push(Transposition::pair(elems[i], elems[r]));
        self.reconstruct(elems, r, j, out);
        self.reconstruct(elems, i, s, out);
    }
}

/// Fills the arc table for `cycle` under `costs`. Ties go to the smallest
/// `r`, then the smallest `s`.
pub fn mld_table(cycle: &Cycle, costs: &CostMatrix) -> MldTable {
    let elems = cycle.elements();
    let k = elems.len();
    let mut t = MldTable {
        k,
        cost: vec![f64::INFINITY; k * k],
        split: vec![None; k * k],
    };
    for i in 0..k {
        t.cost[i * k + i] = 0.0;
    }
    for i in 0..k.saturating_sub(1) {
        t.cost[i * k + i + 1] = costs.get(elems[i], elems[i + 1]);
        t.split[i * k + i + 1] = Some((i, i + 1));
    }
    for len in 2..k {
        for i in 0..k - len {
            let j = i + len;
            let mut best = f64::INFINITY;
            let mut arg = None;
            for r in i + 1..=j {
                let edge = costs.get(elems[i], elems[r]);
                let tail = t.cost[r * k + j];
                for s in i..r {
                    let a = t.cost[i * k + s] + t.cost[(s + 1) * k + r] + tail + edge;
                    if a < best {
                        best = a;
                        arg = Some((s, r));
                    }
                }
            }
            t.cost[i * k + j] = best;
            t.split[i * k + j] = arg;
        }
    }
    t
}

fn require_optimized(costs: &CostMatrix) -> Result<()> {
    if costs.kind() != CostKind::Optimized {
        return Err(Error::Contract(
            "minimum cost MLD needs optimized costs; optimize first or trust the raw matrix explicitly"
                .into(),
        ));
    }
    Ok(())
}

fn first_infinite_edge(cycle: &Cycle, costs: &CostMatrix) -> Option<(usize, usize)> {
    cycle
        .edges()
        .find(|&(a, b)| !costs.get(a, b).is_finite())
        .map(|(a, b)| (a.min(b), a.max(b)))
}

/// Minimum cost decomposition of `cycle` into `k − 1` transpositions.
pub fn min_cost_mld(cycle: &Cycle, phi_star: &CostMatrix) -> Result<(Decomposition, f64)> {
    require_optimized(phi_star)?;
    if cycle.len() < 2 {
        return Ok((Decomposition::empty(), 0.0));
    }
    let table = mld_table(cycle, phi_star);
    let total = table.total();
    if !total.is_finite() {
        let (a, b) = first_infinite_edge(cycle, phi_star).unwrap_or_else(|| {
            let e = cycle.elements();
            (e[0], e[1])
        });
        return Err(Error::Infeasible { a, b });
    }
    let mut out = Vec::with_capacity(cycle.len() - 1);
    table.reconstruct(cycle.elements(), 0, cycle.len() - 1, &mut out);
    Ok((Decomposition::new(out), total))
}

/// Simple transposition decomposition: the chain of consecutive pairs with
/// the most expensive one left out. Among equally expensive pairs the last
/// one in canonical order is left out.
pub fn simple_decomposition(cycle: &Cycle, phi_star: &CostMatrix) -> Result<(Decomposition, f64)> {
    let k = cycle.len();
    if k < 2 {
        return Ok((Decomposition::empty(), 0.0));
    }
    let edges: Vec<(usize, usize)> = cycle.edges().collect();
    let weights: Vec<f64> = edges.iter().map(|&(a, b)| phi_star.get(a, b)).collect();
    let mut skip = 0;
    for (j, &w) in weights.iter().enumerate() {
        if w >= weights[skip] {
            skip = j;
        }
    }
    let chain: Vec<usize> = (1..k).map(|step| (skip + step) % k).collect();
    if let Some(&j) = chain.iter().find(|&&j| !weights[j].is_finite()) {
        let (a, b) = edges[j];
        return Err(Error::Infeasible {
            a: a.min(b),
            b: a.max(b),
        });
    }
    let cost = chain.iter().map(|&j| weights[j]).sum();
    let d = chain
        .iter()
        .map(|&j| Transposition::pair(edges[j].0, edges[j].1))
        .collect();
    Ok((d, cost))
}

/// Exact decomposition for a metric-path cost: builds a non-crossing tree of
/// cost `½ Σ φ(i, σ(i))` by attaching a path-leaf to its path neighbour and
/// recursing on the two arcs this splits off.
pub fn metric_path_mcd(
    cycle: &Cycle,
    metric: &CostMatrix,
    path: &DefiningPath,
) -> Result<(Decomposition, f64)> {
    if path.n() != metric.n() {
        return Err(Error::SizeMismatch {
            expected: metric.n(),
            found: path.n(),
        });
    }
    if metric_path(path).max_abs_diff(metric) > 0.0 {
        return Err(Error::Contract(
            "cost matrix is not the metric-path cost of the given path".into(),
        ));
    }
    if cycle.len() < 2 {
        return Ok((Decomposition::empty(), 0.0));
    }
    let positions = path.positions();
    let mut tree = Vec::with_capacity(cycle.len() - 1);
    metric_tree(cycle.elements(), &positions, &mut tree);
    let d = tree_to_mld(cycle.elements(), &tree).ok_or_else(|| {
        Error::Contract("metric-path tree is not a non-crossing spanning tree".into())
    })?;
    let d = Decomposition::new(d);
    let cost = d.cost(metric);
    Ok((d, cost))
}

fn metric_tree(arc: &[usize], positions: &[usize], tree: &mut Vec<(usize, usize)>) {
    let k = arc.len();
    if k < 2 {
        return;
    }
    // the arc's element furthest to the left on the path is a leaf of the induced path
    let leaf_at = (0..k)
        .min_by_key(|&i| positions[arc[i] - 1])
        .expect("non-empty arc");
    let mut rot = arc.to_vec();
    rot.rotate_left(leaf_at);
    let leaf_pos = positions[rot[0] - 1];
    let t = (1..k)
        .min_by_key(|&i| positions[rot[i] - 1] - leaf_pos)
        .expect("arc has a second element");
    tree.push((rot[0], rot[t]));
    metric_tree(&rot[1..=t], positions, tree);
    metric_tree(&rot[t..], positions, tree);
}

/// `½ Σ_i d(i, σ(i))` where `d` is the shortest path cost; a lower bound on
/// any decomposition of the cycle.
pub fn cycle_lower_bound(cycle: &Cycle, shortest: &CostMatrix) -> f64 {
    if cycle.len() < 2 {
        return 0.0;
    }
    cycle.edges().map(|(a, b)| shortest.get(a, b)).sum::<f64>() / 2.0
}

/// Both decompositions of one cycle with the lower bound.
#[derive(Debug, Clone)]
pub struct CycleResult {
    pub cycle: Cycle,
    pub mld: Decomposition,
    pub mld_cost: f64,
    pub std: Decomposition,
    pub std_cost: f64,
    pub lower_bound: f64,
}

/// Runs [`min_cost_mld`] and [`simple_decomposition`] and computes the lower bound.
pub fn analyze_cycle(cycle: &Cycle, phi_star: &CostMatrix, shortest: &CostMatrix) -> Result<CycleResult> {
    let (mld, mld_cost) = min_cost_mld(cycle, phi_star)?;
    let (std, std_cost) = simple_decomposition(cycle, phi_star)?;
    Ok(CycleResult {
        cycle: cycle.clone(),
        mld,
        mld_cost,
        std,
        std_cost,
        lower_bound: cycle_lower_bound(cycle, shortest),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::extended_metric_path;
    use crate::optimizer::{all_pairs_optimize, shortest_path_costs};

    fn cyc(v: &[usize]) -> Cycle {
        Cycle::new(v.to_vec()).unwrap()
    }

    fn eq12_star() -> CostMatrix {
        CostMatrix::from_pairs(
            4,
            &[
                (1, 2, 5.0),
                (1, 3, 9.0),
                (1, 4, 3.0),
                (2, 3, 2.0),
                (2, 4, 3.0),
                (3, 4, 7.0),
            ],
        )
        .unwrap()
        .trust_as_optimized()
    }

    fn sparse_example() -> CostMatrix {
        CostMatrix::from_fn(5, |a, b| match (a, b) {
            (2, 4) | (2, 5) | (3, 5) => 1.0,
            _ => 100.0,
        })
        .unwrap()
    }

    fn mod5_example() -> CostMatrix {
        CostMatrix::from_fn(5, |a, b| match (b - a) % 5 {
            1 | 4 => 3.0,
            _ => 1.0,
        })
        .unwrap()
    }

    #[test]
    fn dp_table_example() {
        let cycle = cyc(&[1, 2, 3, 4]);
        let table = mld_table(&cycle, &eq12_star());
        let expected = [
            [0.0, 5.0, 7.0, 8.0],
            [f64::NAN, 0.0, 2.0, 5.0],
            [f64::NAN, f64::NAN, 0.0, 7.0],
        ];
        for (i, row) in expected.iter().enumerate() {
            for j in i..4 {
                assert_eq!(table.cost(i, j), row[j], "C({}, {})", i + 1, j + 1);
            }
        }
        assert_eq!(table.split(0, 3), Some((0, 3)));
        assert_eq!(table.split(1, 3), Some((2, 3)));
        let (d, cost) = min_cost_mld(&cycle, &eq12_star()).unwrap();
        assert_eq!(cost, 8.0);
        assert_eq!(d.to_string(), "(2 4)(2 3)(1 4)");
        assert!(d.validate(&cycle.to_permutation(4).unwrap()));
    }

    #[test]
    fn sparse_example_mld_and_std() {
        let raw = sparse_example();
        let star = all_pairs_optimize(&raw);
        let cycle = cyc(&[1, 2, 3, 4, 5]);
        let (d, cost) = min_cost_mld(&cycle, &star).unwrap();
        assert_eq!(cost, 105.0);
        assert_eq!(d.len(), 4);
        assert!(d.validate(&cycle.to_permutation(5).unwrap()));

        let (s, cost) = simple_decomposition(&cycle, &star).unwrap();
        assert_eq!(cost, 111.0);
        assert_eq!(s.to_string(), "(1 2)(2 3)(3 4)(4 5)");

        let lb = cycle_lower_bound(&cycle, &shortest_path_costs(&raw));
        assert_eq!(lb, 103.5);
    }

    #[test]
    fn mod5_example_mld() {
        let star = all_pairs_optimize(&mod5_example());
        let cycle = cyc(&[1, 2, 3, 4, 5]);
        let (_, cost) = min_cost_mld(&cycle, &star).unwrap();
        assert_eq!(cost, 8.0);
        let (_, s) = simple_decomposition(&cycle, &star).unwrap();
        assert_eq!(s, 12.0);
    }

    #[test]
    fn ring_example_std() {
        let ring: Vec<_> = (1..=10).map(|i| (i, i % 10 + 1, 1.0)).collect();
        let star = all_pairs_optimize(&CostMatrix::from_pairs(10, &ring).unwrap());
        let cycle = cyc(&[1, 7, 3, 9, 5]);
        let (s, cost) = simple_decomposition(&cycle, &star).unwrap();
        assert_eq!(cost, 28.0);
        assert_eq!(s.to_string(), "(1 7)(3 7)(3 9)(5 9)");
        let (_, cost) = min_cost_mld(&cycle, &star).unwrap();
        assert_eq!(cost, 20.0);
    }

    #[test]
    fn two_cycles_and_fixed_points() {
        let star = eq12_star();
        let c = cyc(&[2, 4]);
        let (d, cost) = min_cost_mld(&c, &star).unwrap();
        assert_eq!((d.to_string(), cost), ("(2 4)".to_string(), 3.0));
        let (d, cost) = simple_decomposition(&c, &star).unwrap();
        assert_eq!((d.to_string(), cost), ("(2 4)".to_string(), 3.0));
        let (d, cost) = min_cost_mld(&cyc(&[3]), &star).unwrap();
        assert!(d.is_empty());
        assert_eq!(cost, 0.0);
    }

    #[test]
    fn raw_matrix_is_rejected() {
        let raw = CostMatrix::from_fn(3, |_, _| 1.0).unwrap();
        assert!(matches!(
            min_cost_mld(&cyc(&[1, 2, 3]), &raw),
            Err(Error::Contract(_))
        ));
        assert!(min_cost_mld(&cyc(&[1, 2, 3]), &raw.trust_as_optimized()).is_ok());
    }

    #[test]
    fn infinite_costs() {
        let m = CostMatrix::from_pairs(4, &[(1, 2, 1.0), (3, 4, 1.0)])
            .unwrap()
            .trust_as_optimized();
        assert_eq!(
            min_cost_mld(&cyc(&[1, 2, 3, 4]), &m).unwrap_err(),
            Error::Infeasible { a: 2, b: 3 }
        );
        assert!(matches!(
            simple_decomposition(&cyc(&[1, 2, 3, 4]), &m),
            Err(Error::Infeasible { .. })
        ));
        // a single infinite edge is the one skipped
        let m = CostMatrix::from_pairs(3, &[(1, 2, 1.0), (2, 3, 1.0)])
            .unwrap()
            .trust_as_optimized();
        let (d, cost) = simple_decomposition(&cyc(&[1, 2, 3]), &m).unwrap();
        assert_eq!(cost, 2.0);
        assert!(d.validate(&cyc(&[1, 2, 3]).to_permutation(3).unwrap()));
    }

    #[test]
    fn metric_path_construction() {
        let path = DefiningPath::new(vec![3, 1, 5, 2, 4], vec![2.0, 1.0, 4.0, 3.0]).unwrap();
        let metric = metric_path(&path);
        let cycle = cyc(&[1, 4, 2, 3, 5]);
        let (d, cost) = metric_path_mcd(&cycle, &metric, &path).unwrap();
        let half: f64 = cycle.edges().map(|(a, b)| metric.get(a, b)).sum::<f64>() / 2.0;
        assert_eq!(cost, half);
        assert!(d.validate(&cycle.to_permutation(5).unwrap()));
        let (_, dp) = min_cost_mld(&cycle, &metric.clone().trust_as_optimized()).unwrap();
        assert_eq!(dp, half);

        let unit = DefiningPath::along_labels(vec![1.0; 5]).unwrap();
        let m = metric_path(&unit);
        let c = cyc(&[1, 6, 2, 5]);
        let (_, cost) = metric_path_mcd(&c, &m, &unit).unwrap();
        assert_eq!(cost, (5 + 4 + 3 + 4) as f64 / 2.0);

        let (d, cost) = metric_path_mcd(&cyc(&[2, 5]), &m, &unit).unwrap();
        assert_eq!((d.to_string(), cost), ("(2 5)".to_string(), 3.0));
    }

    #[test]
    fn metric_path_rejects_other_costs() {
        let path = DefiningPath::along_labels(vec![1.0, 1.0]).unwrap();
        let ext = extended_metric_path(&path);
        assert!(matches!(
            metric_path_mcd(&cyc(&[1, 2, 3]), &ext, &path),
            Err(Error::Contract(_))
        ));
    }
}

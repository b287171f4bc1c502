//! Decompositions of whole permutations.

use crate::cost::{metric_path, CostMatrix, DefiningPath};
use crate::cycle::{cycle_lower_bound, metric_path_mcd, min_cost_mld, simple_decomposition};
use crate::error::{Error, Result};
use crate::optimizer::shortest_path_costs;
use crate::permutation::{Cycle, Decomposition, Permutation, Transposition};

/// How a permutation is decomposed.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    /// Minimum cost MLD of every non-trivial cycle.
    PerCycleMld,
    /// Simple transposition decomposition of every non-trivial cycle.
    PerCycleStd,
    /// Join all non-trivial cycles into one, then take its minimum cost MLD.
    MergedMld,
    /// Exact construction for a metric-path cost generated by the given path.
    MetricExact(DefiningPath),
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::PerCycleMld => "mld",
            Method::PerCycleStd => "std",
            Method::MergedMld => "merge",
            Method::MetricExact(_) => "metric-exact",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub target: Permutation,
    pub method: Method,
    pub decomposition: Decomposition,
    pub cost: f64,
    /// `½ Σ_i d(i, π(i))` over shortest path costs `d`.
    pub lower_bound: f64,
    /// `cost / lower_bound`, an upper estimate of the true approximation
    /// ratio; `None` when the bound is zero.
    pub alpha: Option<f64>,
}

/// `½ Σ_i d(i, π(i))`, where `d` is the shortest path cost under `costs`.
/// Shortest paths are the same under `φ` and `φ*`, so either may be passed.
pub fn permutation_lower_bound(p: &Permutation, costs: &CostMatrix) -> f64 {
    let shortest = shortest_path_costs(costs);
    p.nontrivial_cycles()
        .iter()
        .map(|c| cycle_lower_bound(c, &shortest))
        .sum()
}

fn check_size(p: &Permutation, costs: &CostMatrix) -> Result<()> {
    if p.len() != costs.n() {
        return Err(Error::SizeMismatch {
            expected: costs.n(),
            found: p.len(),
        });
    }
    Ok(())
}

fn ratio(cost: f64, bound: f64) -> Option<f64> {
    (bound > 0.0).then(|| cost / bound)
}

/// Decomposes `p` with `method`. Costs are reported under `costs`, which
/// must be `φ*` (or the metric itself for [`Method::MetricExact`]).
pub fn decompose(p: &Permutation, costs: &CostMatrix, method: Method) -> Result<DecompositionReport> {
    check_size(p, costs)?;
    let (decomposition, cost) = match &method {
        Method::MergedMld => {
            let plan = merge_cycles(p, costs)?;
            merged_from_plan(p, costs, &plan)?
        }
        m => {
            let mut parts = Vec::new();
            let mut total = 0.0;
            for cycle in p.nontrivial_cycles() {
                let (d, c) = match m {
                    Method::PerCycleMld => min_cost_mld(&cycle, costs)?,
                    Method::PerCycleStd => simple_decomposition(&cycle, costs)?,
                    Method::MetricExact(path) => metric_path_mcd(&cycle, costs, path)?,
                    Method::MergedMld => unreachable!(),
                };
                parts.extend(d.into_inner());
                total += c;
            }
            (Decomposition::new(parts), total)
        }
    };
    finish(p, costs, method, decomposition, cost)
}

fn finish(
    p: &Permutation,
    costs: &CostMatrix,
    method: Method,
    decomposition: Decomposition,
    cost: f64,
) -> Result<DecompositionReport> {
    if !decomposition.validate(p) {
        return Err(Error::Contract(format!(
            "{} decomposition does not multiply to the target",
            method.name()
        )));
    }
    let lower_bound = permutation_lower_bound(p, costs);
    Ok(DecompositionReport {
        target: p.clone(),
        alpha: ratio(cost, lower_bound),
        method,
        decomposition,
        cost,
        lower_bound,
    })
}

/// Joining transpositions `τ'` (written order) and the single cycle
/// `σ' = τ' π` they produce.
#[derive(Debug, Clone)]
pub struct MergePlan {
    pub joining: Decomposition,
    pub merged: Option<Cycle>,
}

/// Greedily joins the non-trivial cycles of `p` along the cheapest edges
/// between distinct cycles. Fixed points are left alone.
pub fn merge_cycles(p: &Permutation, phi_star: &CostMatrix) -> Result<MergePlan> {
    check_size(p, phi_star)?;
    let cycles = p.nontrivial_cycles();
    let mut comp = vec![usize::MAX; p.len() + 1];
    for (i, c) in cycles.iter().enumerate() {
        for &x in c.elements() {
            comp[x] = i;
        }
    }
    let mut edges: Vec<(usize, usize, f64)> = phi_star
        .finite_pairs()
        .filter(|&(a, b, _)| comp[a] != usize::MAX && comp[b] != usize::MAX && comp[a] != comp[b])
        .collect();
    edges.sort_by(|x, y| x.2.total_cmp(&y.2));

    let mut parent: Vec<usize> = (0..cycles.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut joins = Vec::new();
    for (a, b, _) in edges {
        if joins.len() + 1 >= cycles.len() {
            break;
        }
        let (ra, rb) = (find(&mut parent, comp[a]), find(&mut parent, comp[b]));
        if ra != rb {
            parent[ra] = rb;
            joins.push(Transposition::pair(a, b));
        }
    }
    if cycles.len() > 1 && joins.len() + 1 < cycles.len() {
        let (a, b) = (cycles[0].elements()[0], cycles[1].elements()[0]);
        return Err(Error::Infeasible { a, b });
    }
    merge_cycles_with(p, &joins)
}

/// Applies explicit joins `t_1, t_2, …` in order: `σ' = t_k ⋯ t_1 π`.
/// Each join must connect two distinct cycles of the running product, and
/// the result must have exactly one non-trivial cycle.
pub fn merge_cycles_with(p: &Permutation, joins: &[Transposition]) -> Result<MergePlan> {
    let mut current = p.clone();
    for &t in joins {
        let before = current.cycle_count();
        current = current.apply_transposition(t)?;
        if current.cycle_count() >= before {
            return Err(Error::InvalidArgument(format!(
                "join {t} does not connect two distinct cycles"
            )));
        }
    }
    let mut rest = current.nontrivial_cycles();
    if rest.len() > 1 {
        return Err(Error::InvalidArgument(format!(
            "joins leave {} non-trivial cycles",
            rest.len()
        )));
    }
    let joining: Decomposition = joins.iter().rev().copied().collect();
    Ok(MergePlan {
        joining,
        merged: rest.pop(),
    })
}

fn merged_from_plan(
    p: &Permutation,
    phi_star: &CostMatrix,
    plan: &MergePlan,
) -> Result<(Decomposition, f64)> {
    let (mld, cost) = match &plan.merged {
        Some(c) => min_cost_mld(c, phi_star)?,
        None => (Decomposition::empty(), 0.0),
    };
    let join_cost = plan.joining.cost(phi_star);
    if !join_cost.is_finite() {
        let t = plan
            .joining
            .transpositions()
            .iter()
            .find(|t| !phi_star.get(t.a(), t.b()).is_finite())
            .expect("an infinite join");
        return Err(Error::Infeasible { a: t.a(), b: t.b() });
    }
    debug_assert_eq!(p.len(), phi_star.n());
    Ok((plan.joining.reversed().then_after(mld), join_cost + cost))
}

/// [`decompose`] with [`Method::MergedMld`] but explicit joins.
pub fn merged_decompose_with(
    p: &Permutation,
    phi_star: &CostMatrix,
    joins: &[Transposition],
) -> Result<DecompositionReport> {
    check_size(p, phi_star)?;
    let plan = merge_cycles_with(p, joins)?;
    let (d, cost) = merged_from_plan(p, phi_star, &plan)?;
    finish(p, phi_star, Method::MergedMld, d, cost)
}

pub fn merged_decompose(p: &Permutation, phi_star: &CostMatrix) -> Result<DecompositionReport> {
    decompose(p, phi_star, Method::MergedMld)
}

/// Costs of every method next to the lower bound.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub lower_bound: f64,
    /// `⌈lower_bound⌉` when every finite raw cost is an integer.
    pub integral_bound: Option<f64>,
    pub mld: f64,
    pub std: f64,
    pub merged: f64,
    /// Best of the three divided by the lower bound.
    pub ratio: Option<f64>,
    /// `4 + 5k φmax / ((n − k) φmin)` with `k` the number of cycles.
    pub worst_case_alpha: Option<f64>,
    /// The best cost matches the (integral) lower bound, so it is optimal.
    pub gap_closed: bool,
}

pub fn bound_report(p: &Permutation, raw: &CostMatrix, phi_star: &CostMatrix) -> Result<BoundReport> {
    check_size(p, raw)?;
    check_size(p, phi_star)?;
    let lower_bound = permutation_lower_bound(p, raw);
    let cost_of = |m: Method| decompose(p, phi_star, m).map(|r| r.cost);
    let mld = cost_of(Method::PerCycleMld)?;
    let std = cost_of(Method::PerCycleStd)?;
    let merged = cost_of(Method::MergedMld)?;
    let best = mld.min(std).min(merged);
    let integral_bound = raw.is_integral().then(|| lower_bound.ceil());
    let certified = integral_bound.unwrap_or(lower_bound);

    let n = p.len();
    let k = p.cycle_count();
    let worst_case_alpha = match raw.min_max() {
        Some((lo, hi)) if lo > 0.0 && n > k && fully_finite(raw) => {
            Some(4.0 + 5.0 * k as f64 * hi / ((n - k) as f64 * lo))
        }
        _ => None,
    };
    Ok(BoundReport {
        lower_bound,
        integral_bound,
        mld,
        std,
        merged,
        ratio: ratio(best, lower_bound),
        worst_case_alpha,
        gap_closed: best <= certified,
    })
}

fn fully_finite(costs: &CostMatrix) -> bool {
    costs.pairs().all(|(_, _, v)| v.is_finite())
}

/// True if `costs` is exactly the metric-path cost of `path`.
pub fn is_generated_by(costs: &CostMatrix, path: &DefiningPath) -> bool {
    path.n() == costs.n() && metric_path(path).max_abs_diff(costs) == 0.0
}

//! Optimal costs of single transpositions.
//!
//! Two independent routes compute `φ*(a, b)`, the cheapest decomposition of
//! `(a b)` into raw transpositions:
//!
//! * [`optimize_costs`] repeatedly replaces a transposition by a conjugate
//!   triple `(ac)(bc)(ac)` whenever that is cheaper, until nothing changes.
//! * [`bellman_ford`] searches the cost graph for the path minimising
//!   `2·cost(p) − max edge(p)`, tracking the plain shortest path alongside.
//!
//! Both come with an expander that turns `(a b)` into an explicit sequence
//! of raw transpositions whose cost is `φ*(a, b)`.

use rayon::prelude::*;

use crate::cost::{CostKind, CostMatrix};
use crate::error::{Error, Result};
use crate::permutation::{Decomposition, Transposition};

fn pair_index(n: usize, t: Transposition) -> usize {
    (t.a() - 1) * n + (t.b() - 1)
}

/// Optimized costs together with the substitutions that realise them.
#[derive(Debug, Clone)]
pub struct OptimizerReport {
    pub optimized: CostMatrix,
    /// `witness[pair]` is `(outer, inner)` with `pair = outer · inner · outer`,
    /// or `None` when the raw transposition is already optimal.
    witness: Vec<Option<(Transposition, Transposition)>>,
    raw: CostMatrix,
}

impl OptimizerReport {
    pub fn witness(&self, t: Transposition) -> Option<(Transposition, Transposition)> {
        self.witness[pair_index(self.optimized.n(), t)]
    }

    /// Pairs whose cost was lowered, as `(a, b, raw, optimized)`.
    pub fn changed(&self) -> Vec<(usize, usize, f64, f64)> {
        self.raw
            .pairs()
            .filter_map(|(a, b, old)| {
                let new = self.optimized.get(a, b);
                (new != old).then_some((a, b, old, new))
            })
            .collect()
    }

    /// Replays the recorded substitutions into raw transpositions.
    pub fn expand(&self, t: Transposition) -> Result<Decomposition> {
        if !self.optimized.get(t.a(), t.b()).is_finite() {
            return Err(Error::Infeasible { a: t.a(), b: t.b() });
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.expand_into(t, &mut out, &mut stack)?;
        Ok(Decomposition::new(out))
    }

    fn expand_into(
        &self,
        t: Transposition,
        out: &mut Vec<Transposition>,
        stack: &mut Vec<Transposition>,
    ) -> Result<()> {
        match self.witness(t) {
            None => {
                out.push(t);
                Ok(())
            }
            Some((outer, inner)) => {
                if stack.contains(&t) {
                    return Err(Error::Contract(format!(
                        "substitution witnesses for {t} are cyclic"
                    )));
                }
                stack.push(t);
                self.expand_into(outer, out, stack)?;
                self.expand_into(inner, out, stack)?;
                self.expand_into(outer, out, stack)?;
                stack.pop();
                Ok(())
            }
        }
    }
}

/// Triple-replacement fixpoint over the cost-sorted transposition list.
///
/// The list is kept sorted by `(cost, pair)`. For each entry `t1` and each
/// cheaper-or-equal entry `t2` before it that shares one label, the partner
/// `t3` is lowered to `φ(t1) + 2φ(t2)` when that is cheaper; the list is
/// re-sorted after each `t1`. Sweeps repeat until one makes no change.
pub fn optimize_costs(raw: &CostMatrix) -> OptimizerReport {
    let n = raw.n();
    let mut cur = raw.clone();
    let mut witness: Vec<Option<(Transposition, Transposition)>> = vec![None; n * n];
    let mut omega: Vec<Transposition> = raw
        .pairs()
        .map(|(a, b, _)| Transposition::pair(a, b))
        .collect();

    let sort = |omega: &mut Vec<Transposition>, cur: &CostMatrix| {
        omega.sort_by(|x, y| {
            cur.get(x.a(), x.b())
                .total_cmp(&cur.get(y.a(), y.b()))
                .then(x.cmp(y))
        });
    };

    loop {
        let mut changed = false;
        sort(&mut omega, &cur);
        for i in 1..omega.len() {
            let t1 = omega[i];
            for j in 0..i {
                let t2 = omega[j];
                let Some(t3) = t1.triangle_partner(t2) else {
                    continue;
                };
                let phi1 = cur.get(t1.a(), t1.b());
                let phi2 = cur.get(t2.a(), t2.b());
                // the cheaper of the two goes on the outside
                let (outer, inner, candidate) = if phi2 <= phi1 {
                    (t2, t1, phi1 + 2.0 * phi2)
                } else {
                    (t1, t2, phi2 + 2.0 * phi1)
                };
                if candidate < cur.get(t3.a(), t3.b()) {
                    cur.put(t3.a() - 1, t3.b() - 1, candidate);
                    witness[pair_index(n, t3)] = Some((outer, inner));
                    changed = true;
                }
            }
            sort(&mut omega, &cur);
        }
        if !changed {
            break;
        }
    }

    OptimizerReport {
        optimized: cur.with_kind(CostKind::Optimized),
        witness,
        raw: raw.clone(),
    }
}

/// Which of the two tables a predecessor link points into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Table {
    /// Minimum transposition path cost.
    Transposition,
    /// Twice the minimum plain path cost.
    Doubled,
}

/// Single-source output of [`bellman_ford`]. Vectors are indexed by `label - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathTable {
    pub source: usize,
    /// Minimum over paths `p` from the source of `2·cost(p) − max edge(p)`.
    pub d1: Vec<f64>,
    /// Twice the shortest path cost from the source.
    pub d2: Vec<f64>,
    pub pred1: Vec<Option<(usize, Table)>>,
    pub pred2: Vec<Option<(usize, Table)>>,
}

impl PathTable {
    pub fn d1(&self, v: usize) -> f64 {
        self.d1[v - 1]
    }

    pub fn d2(&self, v: usize) -> f64 {
        self.d2[v - 1]
    }

    /// Shortest path cost from the source to `v`.
    pub fn distance(&self, v: usize) -> f64 {
        self.d2[v - 1] / 2.0
    }

    /// Walks predecessor links back from `(v, table)` and returns the vertex
    /// sequence from the source to `v`. For the transposition table the
    /// second value is the index of the edge counted once.
    pub fn walk(&self, v: usize, table: Table) -> Result<(Vec<usize>, Option<usize>)> {
        let dist = match table {
            Table::Transposition => &self.d1,
            Table::Doubled => &self.d2,
        };
        if !dist[v - 1].is_finite() {
            return Err(Error::Infeasible {
                a: self.source.min(v),
                b: self.source.max(v),
            });
        }
        let mut rev = vec![v];
        let mut single_from_end = None;
        let mut at = (v, table);
        let mut seen = std::collections::HashSet::new();
        while at.0 != self.source {
            if !seen.insert(at) {
                return Err(Error::Contract(format!(
                    "predecessor links from {v} revisit vertex {}",
                    at.0
                )));
            }
            let link = match at.1 {
                Table::Transposition => self.pred1[at.0 - 1],
                Table::Doubled => self.pred2[at.0 - 1],
            };
            let Some((u, t)) = link else {
                return Err(Error::Contract(format!(
                    "missing predecessor for vertex {}",
                    at.0
                )));
            };
            if at.1 == Table::Transposition && t == Table::Doubled {
                single_from_end = Some(rev.len() - 1);
            }
            rev.push(u);
            at = (u, t);
        }
        rev.reverse();
        let edges = rev.len() - 1;
        let single = single_from_end.map(|k| edges - 1 - k);
        Ok((rev, single))
    }

    /// A simple path from the source to `v` minimising the transposition path cost.
    pub fn transposition_path(&self, v: usize) -> Result<Vec<usize>> {
        let (walk, _) = self.walk(v, Table::Transposition)?;
        Ok(erase_loops(&walk))
    }
}

/// Drops closed sub-walks; never increases `2·cost − max edge`.
pub(crate) fn erase_loops(walk: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(walk.len());
    for &v in walk {
        if let Some(pos) = out.iter().position(|&x| x == v) {
            out.truncate(pos + 1);
        } else {
            out.push(v);
        }
    }
    out
}

fn relax(costs: &CostMatrix, t: &mut PathTable, u: usize, v: usize) -> bool {
    let w = costs.at(u, v);
    let mut changed = false;
    if t.d2[v] > t.d2[u] + 2.0 * w {
        t.d2[v] = t.d2[u] + 2.0 * w;
        t.pred2[v] = Some((u + 1, Table::Doubled));
        changed = true;
    }
    if t.d2[u] > t.d2[v] + 2.0 * w {
        t.d2[u] = t.d2[v] + 2.0 * w;
        t.pred2[u] = Some((v + 1, Table::Doubled));
        changed = true;
    }
    if t.d1[v] > t.d2[u] + w {
        t.d1[v] = t.d2[u] + w;
        t.pred1[v] = Some((u + 1, Table::Doubled));
        changed = true;
    }
    if t.d1[u] > t.d2[v] + w {
        t.d1[u] = t.d2[v] + w;
        t.pred1[u] = Some((v + 1, Table::Doubled));
        changed = true;
    }
    if t.d1[v] > t.d1[u] + 2.0 * w {
        t.d1[v] = t.d1[u] + 2.0 * w;
        t.pred1[v] = Some((u + 1, Table::Transposition));
        changed = true;
    }
    if t.d1[u] > t.d1[v] + 2.0 * w {
        t.d1[u] = t.d1[v] + 2.0 * w;
        t.pred1[u] = Some((v + 1, Table::Transposition));
        changed = true;
    }
    changed
}

/// Single-source search for minimum transposition path costs.
///
/// Runs at most `n − 1` passes over the finite edges in lexicographic order,
/// stopping early after a pass with no update. Unreachable vertices keep
/// infinite entries.
pub fn bellman_ford(raw: &CostMatrix, source: usize) -> Result<PathTable> {
    let n = raw.n();
    if source == 0 || source > n {
        return Err(Error::LabelOutOfRange { label: source, n });
    }
    let s = source - 1;
    let mut t = PathTable {
        source,
        d1: (0..n).map(|u| raw.at(s, u)).collect(),
        d2: (0..n).map(|u| 2.0 * raw.at(s, u)).collect(),
        pred1: vec![None; n],
        pred2: vec![None; n],
    };
    for u in 0..n {
        if u != s && raw.at(s, u).is_finite() {
            t.pred1[u] = Some((source, Table::Doubled));
            t.pred2[u] = Some((source, Table::Doubled));
        }
    }
    t.d1[s] = 0.0;
    t.d2[s] = 0.0;

    let edges: Vec<(usize, usize)> = raw
        .finite_pairs()
        .map(|(a, b, _)| (a - 1, b - 1))
        .collect();
    for _ in 1..n {
        let mut changed = false;
        for &(u, v) in &edges {
            changed |= relax(raw, &mut t, u, v);
        }
        if !changed {
            break;
        }
    }
    // the source never gets a better value than its empty path
    t.pred1[s] = None;
    t.pred2[s] = None;
    Ok(t)
}

/// `2·Σ edge costs − max edge cost` along a vertex path.
pub fn transposition_path_cost(path: &[usize], raw: &CostMatrix) -> Result<f64> {
    if path.len() < 2 {
        return Err(Error::InvalidArgument(
            "a path needs at least two vertices".into(),
        ));
    }
    let mut sum = 0.0;
    let mut max = 0.0f64;
    for w in path.windows(2) {
        let c = raw.get(w[0], w[1]);
        if !c.is_finite() {
            return Ok(f64::INFINITY);
        }
        sum += c;
        max = max.max(c);
    }
    Ok(2.0 * sum - max)
}

/// Index of the first maximum-cost edge along `path`.
fn heaviest_edge(path: &[usize], raw: &CostMatrix) -> usize {
    let mut best = 0;
    for i in 1..path.len() - 1 {
        if raw.get(path[i], path[i + 1]) > raw.get(path[best], path[best + 1]) {
            best = i;
        }
    }
    best
}

/// Writes `(a b)` as a palindrome along the simple path `c_0 = a, …, c_{m+1} = b`,
/// with the path's heaviest edge `(c_i c_{i+1})` in the middle:
/// `P (c_i c_{i+1}) P⁻¹` where
/// `P = (c_0 c_1)⋯(c_{i-1} c_i) · (c_m c_{m+1})⋯(c_{i+1} c_{i+2})`
/// carries `c_i` to `a` and `c_{i+1}` to `b`.
pub fn palindrome_along(path: &[usize], raw: &CostMatrix) -> Decomposition {
    let i = heaviest_edge(path, raw);
    let last = path.len() - 1;
    let edge = |j: usize| Transposition::pair(path[j], path[j + 1]);
    let mut conj: Vec<Transposition> = (0..i).map(edge).collect();
    conj.extend((i + 1..last).rev().map(edge));
    let mut out = conj.clone();
    out.push(edge(i));
    out.extend(conj.into_iter().rev());
    Decomposition::new(out)
}

/// Expands `(a b)` into raw transpositions along a minimum transposition path
/// recovered from `table`, whose source must be `a` or `b`.
pub fn expand_transposition(
    t: Transposition,
    table: &PathTable,
    raw: &CostMatrix,
) -> Result<Decomposition> {
    let target = if table.source == t.a() {
        t.b()
    } else if table.source == t.b() {
        t.a()
    } else {
        return Err(Error::InvalidArgument(format!(
            "path table rooted at {} cannot expand {t}",
            table.source
        )));
    };
    let mut path = table.transposition_path(target)?;
    if path[0] != t.a() {
        path.reverse();
    }
    Ok(palindrome_along(&path, raw))
}

/// Per-source path tables for every label, computed in parallel.
pub fn all_path_tables(raw: &CostMatrix) -> Vec<PathTable> {
    (1..=raw.n())
        .into_par_iter()
        .map(|s| bellman_ford(raw, s).expect("source in range"))
        .collect()
}

/// `φ*` from per-source searches: `φ*(a, b) = D1_a(b)` for `a < b`.
pub fn all_pairs_optimize(raw: &CostMatrix) -> CostMatrix {
    optimized_from_tables(raw.n(), &all_path_tables(raw))
}

pub(crate) fn optimized_from_tables(n: usize, tables: &[PathTable]) -> CostMatrix {
    let mut m = CostMatrix::unreachable(n);
    for a in 0..n {
        for b in a + 1..n {
            m.put(a, b, tables[a].d1[b]);
        }
    }
    m.with_kind(CostKind::Optimized)
}

/// Shortest plain path costs between all pairs, from the doubled tables.
pub fn shortest_path_costs(raw: &CostMatrix) -> CostMatrix {
    let tables = all_path_tables(raw);
    let n = raw.n();
    let mut m = CostMatrix::unreachable(n);
    for a in 0..n {
        for b in a + 1..n {
            m.put(a, b, tables[a].d2[b] / 2.0);
        }
    }
    m
}

/// Everything needed to turn optimized transpositions back into raw ones.
#[derive(Debug, Clone)]
pub struct Optimized {
    pub raw: CostMatrix,
    pub report: OptimizerReport,
    pub tables: Vec<PathTable>,
}

/// Which optimizer route produced, or should produce, `φ*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Substitution,
    PathSearch,
}

impl Optimized {
    /// Runs both routes and fails if they disagree beyond `tol`.
    pub fn new(raw: &CostMatrix, tol: f64) -> Result<Optimized> {
        let report = optimize_costs(raw);
        let tables = all_path_tables(raw);
        let bf = optimized_from_tables(raw.n(), &tables);
        let diff = report.optimized.max_abs_diff(&bf);
        if diff > tol {
            return Err(Error::Contract(format!(
                "optimizer routes disagree by {diff}"
            )));
        }
        Ok(Optimized {
            raw: raw.clone(),
            report,
            tables,
        })
    }

    pub fn costs(&self) -> &CostMatrix {
        &self.report.optimized
    }

    pub fn expand(&self, t: Transposition, route: Route) -> Result<Decomposition> {
        match route {
            Route::Substitution => self.report.expand(t),
            Route::PathSearch => expand_transposition(t, &self.tables[t.a() - 1], &self.raw),
        }
    }

    /// Replaces every member of `d` by its raw expansion.
    pub fn expand_all(&self, d: &Decomposition, route: Route) -> Result<Decomposition> {
        let mut out = Vec::new();
        for &t in d.transpositions() {
            out.extend(self.expand(t, route)?.into_inner());
        }
        Ok(Decomposition::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: usize, b: usize) -> Transposition {
        Transposition::new(a, b).unwrap()
    }

    fn eq4_raw() -> CostMatrix {
        CostMatrix::from_pairs(
            4,
            &[
                (3, 4, 2.0),
                (1, 3, 4.0),
                (2, 4, 7.0),
                (1, 4, 12.0),
                (1, 2, 15.0),
                (2, 3, 23.0),
            ],
        )
        .unwrap()
    }

    fn eq12_raw() -> CostMatrix {
        CostMatrix::from_pairs(
            4,
            &[
                (1, 2, 5.0),
                (1, 3, 10.0),
                (1, 4, 3.0),
                (2, 3, 2.0),
                (2, 4, 3.0),
                (3, 4, 9.0),
            ],
        )
        .unwrap()
    }

    /// The six-vertex example graph, `a..f` as `1..6`.
    fn bf_example() -> CostMatrix {
        CostMatrix::from_pairs(
            6,
            &[
                (1, 2, 4.0),
                (1, 3, 1.0),
                (2, 4, 4.0),
                (3, 4, 8.0),
                (4, 5, 20.0),
                (4, 6, 2.0),
                (2, 5, 30.0),
                (3, 6, 10.0),
                (6, 5, 3.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn substitution_worked_example() {
        let raw = eq4_raw();
        let rep = optimize_costs(&raw);
        let opt = &rep.optimized;
        assert_eq!(opt.get(1, 4), 8.0);
        assert_eq!(opt.get(2, 3), 11.0);
        for (a, b, v) in raw.pairs() {
            if (a, b) != (1, 4) && (a, b) != (2, 3) {
                assert_eq!(opt.get(a, b), v, "({a} {b})");
            }
        }
        assert_eq!(opt.kind(), CostKind::Optimized);
        assert_eq!(rep.witness(t(1, 4)), Some((t(3, 4), t(1, 3))));
        assert_eq!(rep.changed().len(), 2);
    }

    #[test]
    fn substitution_matrix_example() {
        let rep = optimize_costs(&eq12_raw());
        let expected = CostMatrix::from_pairs(
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
        .unwrap();
        assert!(rep.optimized.same_costs(&expected));
    }

    #[test]
    fn metric_input_unchanged() {
        let raw = CostMatrix::from_fn(6, |a, b| (b - a) as f64).unwrap();
        assert!(raw.is_metric());
        assert!(optimize_costs(&raw).optimized.same_costs(&raw));
        assert!(all_pairs_optimize(&raw).same_costs(&raw));
    }

    #[test]
    fn all_infinite_passes_through() {
        let raw = CostMatrix::unreachable(4);
        assert!(optimize_costs(&raw).optimized.same_costs(&raw));
        let table = bellman_ford(&raw, 2).unwrap();
        assert_eq!(table.d1(2), 0.0);
        assert_eq!(table.d1(1), f64::INFINITY);
        assert!(matches!(
            table.walk(1, Table::Transposition),
            Err(Error::Infeasible { a: 1, b: 2 })
        ));
    }

    #[test]
    fn bellman_ford_figure() {
        let table = bellman_ford(&bf_example(), 1).unwrap();
        let expected = [
            (0.0, 0.0),
            (4.0, 8.0),
            (1.0, 2.0),
            (10.0, 16.0),
            (18.0, 26.0),
            (12.0, 20.0),
        ];
        for (v, &(d1, d2)) in expected.iter().enumerate() {
            assert_eq!((table.d1[v], table.d2[v]), (d1, d2), "vertex {}", v + 1);
        }
        // e is reached as a-c-f-e with (c f) counted once
        assert_eq!(table.transposition_path(5).unwrap(), vec![1, 3, 6, 5]);
        let (walk, single) = table.walk(5, Table::Transposition).unwrap();
        assert_eq!(walk, vec![1, 3, 6, 5]);
        assert_eq!(single, Some(1));
        let (walk, single) = table.walk(5, Table::Doubled).unwrap();
        assert_eq!(walk, vec![1, 2, 4, 6, 5]);
        assert_eq!(single, None);
    }

    #[test]
    fn bellman_ford_small_cases() {
        let raw = CostMatrix::from_pairs(2, &[(1, 2, 3.5)]).unwrap();
        let table = bellman_ford(&raw, 1).unwrap();
        assert_eq!((table.d1(2), table.d2(2)), (3.5, 7.0));
        assert_eq!((table.d1(1), table.d2(1)), (0.0, 0.0));
        assert!(bellman_ford(&raw, 3).is_err());
    }

    #[test]
    fn path_cost_examples() {
        let raw = CostMatrix::from_fn(5, |a, b| match (a, b) {
            (2, 4) | (2, 5) | (3, 5) => 1.0,
            _ => 100.0,
        })
        .unwrap();
        assert_eq!(transposition_path_cost(&[2, 5], &raw).unwrap(), 1.0);
        assert_eq!(transposition_path_cost(&[2, 5, 3], &raw).unwrap(), 3.0);
        let eq = CostMatrix::from_fn(6, |_, _| 2.5).unwrap();
        assert_eq!(
            transposition_path_cost(&[1, 2, 3, 4, 5], &eq).unwrap(),
            7.0 * 2.5
        );
        let ext = CostMatrix::from_pairs(3, &[(1, 2, 1.0)]).unwrap();
        assert_eq!(
            transposition_path_cost(&[1, 2, 3], &ext).unwrap(),
            f64::INFINITY
        );
        assert!(transposition_path_cost(&[1], &ext).is_err());
    }

    #[test]
    fn expansion_examples() {
        let raw = eq4_raw();
        let opt = Optimized::new(&raw, 0.0).unwrap();
        let d = opt.expand(t(1, 4), Route::Substitution).unwrap();
        assert_eq!(d.to_string(), "(3 4)(1 3)(3 4)");
        let d = opt.expand(t(1, 4), Route::PathSearch).unwrap();
        assert_eq!(d.to_string(), "(3 4)(1 3)(3 4)");
        assert_eq!(d.cost(&raw), 8.0);

        // already minimal
        let d = opt.expand(t(3, 4), Route::PathSearch).unwrap();
        assert_eq!(d.to_string(), "(3 4)");

        let raw = CostMatrix::from_fn(5, |a, b| match (a, b) {
            (2, 4) | (2, 5) | (3, 5) => 1.0,
            _ => 100.0,
        })
        .unwrap();
        let opt = Optimized::new(&raw, 0.0).unwrap();
        let d = opt.expand(t(4, 5), Route::Substitution).unwrap();
        assert_eq!(d.to_string(), "(2 4)(2 5)(2 4)");
        let d = opt.expand(t(4, 5), Route::PathSearch).unwrap();
        assert_eq!(d.cost(&raw), 3.0);
        assert!(d.validate(&t(4, 5).to_permutation(5).unwrap()));
    }

    #[test]
    fn palindrome_with_long_sides() {
        let raw = CostMatrix::from_fn(6, |a, b| if (a, b) == (3, 4) { 5.0 } else { 1.0 }).unwrap();
        let path = [1, 2, 3, 4, 5, 6];
        let d = palindrome_along(&path, &raw);
        assert_eq!(d.to_string(), "(1 2)(2 3)(5 6)(4 5)(3 4)(4 5)(5 6)(2 3)(1 2)");
        assert!(d.validate(&t(1, 6).to_permutation(6).unwrap()));
        for center in 0..5 {
            let raw = CostMatrix::from_fn(6, |a, b| if (a, b) == (center + 1, center + 2) { 9.0 } else { 1.0 }).unwrap();
            let d = palindrome_along(&path, &raw);
            assert!(d.validate(&t(1, 6).to_permutation(6).unwrap()), "center {center}: {d}");
        }
    }

    #[test]
    fn expansion_infeasible() {
        let raw = CostMatrix::from_pairs(4, &[(1, 2, 1.0), (3, 4, 1.0)]).unwrap();
        let opt = Optimized::new(&raw, 0.0).unwrap();
        for route in [Route::Substitution, Route::PathSearch] {
            assert!(matches!(
                opt.expand(t(1, 3), route),
                Err(Error::Infeasible { .. })
            ));
        }
    }

    #[test]
    fn ring_costs_give_odd_distances() {
        let ring: Vec<_> = (1..=10).map(|i| (i, i % 10 + 1, 1.0)).collect();
        let raw = CostMatrix::from_pairs(10, &ring).unwrap();
        let opt = all_pairs_optimize(&raw);
        for (a, b, v) in opt.pairs() {
            let d = (b - a).min(10 - (b - a));
            assert_eq!(v, (2 * d - 1) as f64, "({a} {b})");
        }
        assert!(optimize_costs(&raw).optimized.same_costs(&opt));
    }

    #[test]
    fn erase_loops_keeps_endpoints() {
        assert_eq!(erase_loops(&[1, 2, 3, 2, 4]), vec![1, 2, 4]);
        assert_eq!(erase_loops(&[1, 2, 1, 3]), vec![1, 3]);
        assert_eq!(erase_loops(&[5, 6]), vec![5, 6]);
    }
}

//! Brute-force ground truth for small instances.
//!
//! [`mcd_exact`] runs Dijkstra on the weighted Cayley graph of `S_n`
//! generated by all finite-cost transpositions. States are indexed by their
//! Lehmer rank so distances live in a dense `n!` array.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::cost::CostMatrix;
use crate::error::{Error, Result};
use crate::permutation::{Cycle, Decomposition, Permutation, Transposition};
use crate::tree::{is_non_crossing, tree_to_mld};

/// Largest `n` searched by default.
pub const DEFAULT_LIMIT: usize = 7;

/// Largest cycle length enumerated by default.
pub const DEFAULT_TREE_LIMIT: usize = 8;

/// The search size guard, overridable through `PERMSORT_LIMIT`.
pub fn default_limit() -> usize {
    std::env::var("PERMSORT_LIMIT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_LIMIT)
}

#[derive(Debug, Clone)]
pub struct CayleySearchResult {
    pub target: Permutation,
    /// `M(π)`; infinite when `π` cannot be reached.
    pub min_cost: f64,
    pub witness: Option<Decomposition>,
}

fn factorials(n: usize) -> Vec<usize> {
    let mut f = vec![1usize; n + 1];
    for i in 1..=n {
        f[i] = f[i - 1] * i;
    }
    f
}

fn lehmer_rank(p: &[u8], fact: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank += smaller * fact[n - 1 - i];
    }
    rank
}

#[derive(PartialEq)]
struct Entry(f64, Vec<u8>);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then_with(|| self.1.cmp(&other.1))
    }
}

// left multiplication by (i j) on 0-based images: swap the values i and j
fn swap_values(p: &mut [u8], i: u8, j: u8) {
    for x in p.iter_mut() {
        if *x == i {
            *x = j;
        } else if *x == j {
            *x = i;
        }
    }
}

/// Cheapest sequence of allowed moves from `start` to the identity, where a
/// move is left multiplication by `(i j)` at cost `w`, provided
/// `allowed(state, i, j)`. Returns the cost and the moves in application
/// order, so that `start = t_1 t_2 ⋯ t_m` in written order.
fn search(
    start: &[u8],
    edges: &[(u8, u8, f64)],
    allowed: impl Fn(&[u8], u8, u8) -> bool,
) -> (f64, Option<Vec<(u8, u8)>>) {
    let n = start.len();
    let fact = factorials(n);
    let mut dist = vec![f64::INFINITY; fact[n]];
    let mut pred: Vec<Option<(u8, u8)>> = vec![None; fact[n]];
    let goal: Vec<u8> = (0..n as u8).collect();
    let goal_rank = lehmer_rank(&goal, &fact);

    let mut heap = BinaryHeap::new();
    dist[lehmer_rank(start, &fact)] = 0.0;
    heap.push(Reverse(Entry(0.0, start.to_vec())));
    while let Some(Reverse(Entry(d, state))) = heap.pop() {
        let rank = lehmer_rank(&state, &fact);
        if d > dist[rank] {
            continue;
        }
        if rank == goal_rank {
            break;
        }
        for &(i, j, w) in edges {
            if !allowed(&state, i, j) {
                continue;
            }
            let mut next = state.clone();
            swap_values(&mut next, i, j);
            let r = lehmer_rank(&next, &fact);
            let nd = d + w;
            if nd < dist[r] {
                dist[r] = nd;
                pred[r] = Some((i, j));
                heap.push(Reverse(Entry(nd, next)));
            }
        }
    }
    let cost = dist[goal_rank];
    if !cost.is_finite() {
        return (cost, None);
    }
    // walk back from the identity; every move is an involution
    let start_rank = lehmer_rank(start, &fact);
    let mut state = goal;
    let mut moves = Vec::new();
    let mut rank = goal_rank;
    while rank != start_rank {
        let (i, j) = pred[rank].expect("reached states have predecessors");
        moves.push((i, j));
        swap_values(&mut state, i, j);
        rank = lehmer_rank(&state, &fact);
    }
    moves.reverse();
    (cost, Some(moves))
}

fn finite_edges(n: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<(u8, u8, f64)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = cost(i, j);
            if w.is_finite() {
                edges.push((i as u8, j as u8, w));
            }
        }
    }
    edges
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::SizeLimit { n, limit });
    }
    Ok(())
}

/// Exact minimum cost decomposition of `p` under `raw`.
pub fn mcd_exact(p: &Permutation, raw: &CostMatrix, limit: usize) -> Result<CayleySearchResult> {
    let n = p.len();
    if n != raw.n() {
        return Err(Error::SizeMismatch {
            expected: raw.n(),
            found: n,
        });
    }
    check_limit(n, limit)?;
    let start: Vec<u8> = p.raw_images().iter().map(|&x| x as u8).collect();
    let edges = finite_edges(n, |i, j| raw.get(i + 1, j + 1));
    let (min_cost, moves) = search(&start, &edges, |_, _, _| true);
    let witness = moves.map(|m| {
        m.into_iter()
            .map(|(i, j)| Transposition::pair(i as usize + 1, j as usize + 1))
            .collect()
    });
    Ok(CayleySearchResult {
        target: p.clone(),
        min_cost,
        witness,
    })
}

/// Exact cost of the cheapest decomposition of `(a b)`.
pub fn transposition_min_cost_exact(a: usize, b: usize, raw: &CostMatrix, limit: usize) -> Result<f64> {
    let t = Transposition::new(a, b)?;
    let p = t.to_permutation(raw.n())?;
    Ok(mcd_exact(&p, raw, limit)?.min_cost)
}

/// Outcome of enumerating every spanning tree on a cycle's labels.
#[derive(Debug, Clone)]
pub struct TreeEnumeration {
    pub trees: usize,
    pub non_crossing: usize,
    /// Cheapest MLD, i.e. cheapest non-crossing tree.
    pub min_cost: f64,
    pub best: Option<Decomposition>,
    /// Cheapest tree of any shape; crossing ones yield no decomposition.
    pub min_cost_any_tree: f64,
}

fn prufer_decode(seq: &[usize], k: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; k];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &x in seq {
        let leaf = (0..k).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Enumerates all `k^(k-2)` labelled trees on the cycle's positions via
/// Prüfer sequences, converts each non-crossing one into an MLD and returns
/// the cheapest under `phi_star`. Each converted MLD is validated.
pub fn mld_exact_enumeration(cycle: &Cycle, phi_star: &CostMatrix, limit: usize) -> Result<TreeEnumeration> {
    let k = cycle.len();
    check_limit(k, limit)?;
    let elems = cycle.elements();
    if k < 2 {
        return Ok(TreeEnumeration {
            trees: 1,
            non_crossing: 1,
            min_cost: 0.0,
            best: Some(Decomposition::empty()),
            min_cost_any_tree: 0.0,
        });
    }
    let n = cycle.max_label().max(phi_star.n());
    let target = cycle.to_permutation(n)?;
    let mut out = TreeEnumeration {
        trees: 0,
        non_crossing: 0,
        min_cost: f64::INFINITY,
        best: None,
        min_cost_any_tree: f64::INFINITY,
    };
    let mut seq = vec![0usize; k - 2];
    loop {
        let edges = if k == 2 { vec![(0, 1)] } else { prufer_decode(&seq, k) };
        out.trees += 1;
        let cost: f64 = edges.iter().map(|&(i, j)| phi_star.get(elems[i], elems[j])).sum();
        out.min_cost_any_tree = out.min_cost_any_tree.min(cost);
        if is_non_crossing(&edges) {
            out.non_crossing += 1;
            let labelled: Vec<_> = edges.iter().map(|&(i, j)| (elems[i], elems[j])).collect();
            let d = tree_to_mld(elems, &labelled)
                .map(Decomposition::new)
                .filter(|d| d.validate(&target))
                .ok_or_else(|| Error::Contract(format!("non-crossing tree {labelled:?} gave no MLD")))?;
            if cost < out.min_cost {
                out.min_cost = cost;
                out.best = Some(d);
            }
        }
        // next sequence in lexicographic order
        let mut i = seq.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < k {
                break;
            }
            seq[i] = 0;
        }
    }
}

/// Exact minimum cost over all length `k − 1` decompositions of the cycle,
/// by Dijkstra restricted to transpositions that split a cycle.
pub fn mld_exact_search(cycle: &Cycle, phi_star: &CostMatrix, limit: usize) -> Result<(f64, Option<Decomposition>)> {
    let k = cycle.len();
    check_limit(k, limit)?;
    let elems = cycle.elements();
    // the cycle relabelled onto positions 0..k
    let start: Vec<u8> = (0..k).map(|i| ((i + 1) % k) as u8).collect();
    let edges = finite_edges(k, |i, j| phi_star.get(elems[i], elems[j]));
    let same_cycle = |state: &[u8], i: u8, j: u8| {
        let mut x = state[i as usize];
        while x != i {
            if x == j {
                return true;
            }
            x = state[x as usize];
        }
        false
    };
    let (cost, moves) = search(&start, &edges, same_cycle);
    let d = moves.map(|m| {
        m.into_iter()
            .map(|(i, j)| Transposition::pair(elems[i as usize], elems[j as usize]))
            .collect()
    });
    Ok((cost, d))
}

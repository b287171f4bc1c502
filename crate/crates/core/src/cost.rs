//! Transposition cost functions.
//!
//! Costs are `f64` with `f64::INFINITY` marking pairs that cannot be used.
//! Sums involving infinity stay infinite; nothing here subtracts from an
//! infinite cost.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Whether a matrix holds raw costs or optimized ones (every transposition
/// priced at its cheapest decomposition).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostKind {
    Raw,
    Optimized,
}

/// Symmetric non-negative cost table over `{1..n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    cost: Vec<f64>,
    kind: CostKind,
}

fn check_value(a: usize, b: usize, value: f64) -> Result<()> {
    if value.is_nan() || value < 0.0 || value == f64::NEG_INFINITY {
        Err(Error::InvalidCost { a, b, value })
    } else {
        Ok(())
    }
}

impl CostMatrix {
    /// All off-diagonal pairs infinite.
    pub fn unreachable(n: usize) -> CostMatrix {
        let mut cost = vec![f64::INFINITY; n * n];
        for i in 0..n {
            cost[i * n + i] = 0.0;
        }
        CostMatrix {
            n,
            cost,
            kind: CostKind::Raw,
        }
    }

    /// Builds a raw matrix from `(a, b, value)` entries; unspecified pairs are infinite.
    pub fn from_pairs(n: usize, entries: &[(usize, usize, f64)]) -> Result<CostMatrix> {
        let mut m = CostMatrix::unreachable(n);
        let mut given = vec![false; n * n];
        for &(a, b, value) in entries {
            for label in [a, b] {
                if label == 0 || label > n {
                    return Err(Error::LabelOutOfRange { label, n });
                }
            }
            if a == b {
                return Err(Error::DegenerateTransposition(a));
            }
            check_value(a, b, value)?;
            let idx = (a - 1) * n + (b - 1);
            if given[idx] && m.cost[idx] != value {
                return Err(Error::ConflictingCost {
                    a: a.min(b),
                    b: a.max(b),
                });
            }
            given[idx] = true;
            given[(b - 1) * n + (a - 1)] = true;
            m.put(a - 1, b - 1, value);
        }
        Ok(m)
    }

    /// Raw matrix with `φ(a, b) = f(a, b)` for `a < b`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<CostMatrix> {
        let mut m = CostMatrix::unreachable(n);
        for a in 1..=n {
            for b in a + 1..=n {
                let v = f(a, b);
                check_value(a, b, v)?;
                m.put(a - 1, b - 1, v);
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CostKind {
        self.kind
    }

    /// `φ(a, b)` for 1-based labels; `0` on the diagonal.
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.cost[(a - 1) * self.n + (b - 1)]
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> f64 {
        self.cost[i * self.n + j]
    }

    pub(crate) fn put(&mut self, i: usize, j: usize, v: f64) {
        self.cost[i * self.n + j] = v;
        self.cost[j * self.n + i] = v;
    }

    pub(crate) fn with_kind(mut self, kind: CostKind) -> CostMatrix {
        self.kind = kind;
        self
    }

    /// Relabels a raw matrix as optimized without optimizing it, so the
    /// cycle decomposers can be run directly on raw costs.
    pub fn trust_as_optimized(self) -> CostMatrix {
        self.with_kind(CostKind::Optimized)
    }

    /// Unordered pairs `(a, b, φ(a, b))` with `a < b`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (1..=self.n).flat_map(move |a| (a + 1..=self.n).map(move |b| (a, b, self.get(a, b))))
    }

    pub fn finite_pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.pairs().filter(|&(_, _, v)| v.is_finite())
    }

    /// True when every finite entry is a whole number.
    pub fn is_integral(&self) -> bool {
        self.finite_pairs().all(|(_, _, v)| v.fract() == 0.0)
    }

    /// Smallest and largest off-diagonal entry, `None` for `n < 2`.
    pub fn min_max(&self) -> Option<(f64, f64)> {
        self.pairs().fold(None, |acc, (_, _, v)| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
    }

    /// Triangle inequality over all triples; triples with an infinite side
    /// on the right-hand side hold trivially.
    pub fn is_metric(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for c in 0..n {
                if a == c {
                    continue;
                }
                let ac = self.at(a, c);
                for b in 0..n {
                    if b == a || b == c {
                        continue;
                    }
                    if ac > self.at(a, b) + self.at(b, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `φ(a, b) ≤ 2φ(a, x) + φ(b, x)` for all distinct `a, b, x`.
    pub fn satisfies_triple_bound(&self) -> bool {
        self.first_triple_violation().is_none()
    }

    pub(crate) fn first_triple_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                for x in 0..n {
                    if x == a || x == b {
                        continue;
                    }
                    if self.at(a, b) > 2.0 * self.at(a, x) + self.at(b, x) {
                        return Some((a + 1, b + 1, x + 1));
                    }
                }
            }
        }
        None
    }

    /// Largest absolute entrywise difference, with matching infinities counting as equal.
    pub fn max_abs_diff(&self, other: &CostMatrix) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.cost
            .iter()
            .zip(&other.cost)
            .map(|(&x, &y)| if x == y { 0.0 } else { (x - y).abs() })
            .fold(0.0, f64::max)
    }

    /// Same entries, ignoring `kind`.
    pub fn same_costs(&self, other: &CostMatrix) -> bool {
        self.n == other.n && self.cost == other.cost
    }

    /// Serializes as `n <N>` followed by one `a b value` line per pair.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.n).unwrap();
        for (a, b, v) in self.pairs() {
            if v.is_finite() {
                writeln!(out, "{a} {b} {v}").unwrap();
            } else {
                writeln!(out, "{a} {b} inf").unwrap();
            }
        }
        out
    }

    /// Parses the pair-list format or, if the first line is `path`, a defining path.
    pub fn parse(text: &str) -> Result<CostInput> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first_no, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty cost file".into(),
        })?;
        if first == "path" {
            let path = DefiningPath::parse_lines(lines)?;
            return Ok(CostInput::Path(path));
        }
        let mut head = first.split_whitespace();
        let n = match (head.next(), head.next(), head.next()) {
            (Some("n"), Some(v), None) => v.parse::<usize>().map_err(|_| Error::Parse {
                line: first_no,
                msg: format!("bad size {v:?}"),
            })?,
            _ => {
                return Err(Error::Parse {
                    line: first_no,
                    msg: "expected `n <N>` or `path`".into(),
                })
            }
        };
        if n == 0 {
            return Err(Error::Parse {
                line: first_no,
                msg: "n must be at least 1".into(),
            });
        }
        let mut entries = Vec::new();
        for (no, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::Parse {
                    line: no,
                    msg: "expected `<a> <b> <value>`".into(),
                });
            }
            let label = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: no,
                    msg: format!("bad label {s:?}"),
                })
            };
            let a = label(toks[0])?;
            let b = label(toks[1])?;
            let value = parse_cost(toks[2]).ok_or_else(|| Error::Parse {
                line: no,
                msg: format!("bad cost {:?}", toks[2]),
            })?;
            entries.push((a, b, value));
        }
        CostMatrix::from_pairs(n, &entries)
            .map(CostInput::Matrix)
            .map_err(|e| match e {
                Error::Parse { .. } => e,
                other => Error::Parse {
                    line: 0,
                    msg: other.to_string(),
                },
            })
    }
}

fn parse_cost(tok: &str) -> Option<f64> {
    match tok {
        "inf" | "Inf" | "INF" | "∞" => Some(f64::INFINITY),
        _ => tok.parse::<f64>().ok().filter(|v| v.is_finite()),
    }
}

/// Result of reading a cost file.
#[derive(Debug, Clone, PartialEq)]
pub enum CostInput {
    Matrix(CostMatrix),
    Path(DefiningPath),
}

impl CostInput {
    /// Matrix view; a defining path is read as a metric-path cost.
    pub fn into_matrix(self) -> CostMatrix {
        match self {
            CostInput::Matrix(m) => m,
            CostInput::Path(p) => metric_path(&p),
        }
    }
}

/// A weighted path through all of `{1..n}`: `order[i]` and `order[i + 1]`
/// are joined by an edge of weight `weights[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DefiningPath {
    order: Vec<usize>,
    weights: Vec<f64>,
}

impl DefiningPath {
    pub fn new(order: Vec<usize>, weights: Vec<f64>) -> Result<DefiningPath> {
        let n = order.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty path".into()));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v == 0 || v > n {
                return Err(Error::LabelOutOfRange { label: v, n });
            }
            if seen[v - 1] {
                return Err(Error::InvalidArgument(format!("vertex {v} repeated on path")));
            }
            seen[v - 1] = true;
        }
        if weights.len() != n - 1 {
            return Err(Error::SizeMismatch {
                expected: n - 1,
                found: weights.len(),
            });
        }
        for (i, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidCost {
                    a: order[i],
                    b: order[i + 1],
                    value: w,
                });
            }
        }
        Ok(DefiningPath { order, weights })
    }

    /// The path `1 - 2 - ⋯ - n` with the given weights.
    pub fn along_labels(weights: Vec<f64>) -> Result<DefiningPath> {
        DefiningPath::new((1..=weights.len() + 1).collect(), weights)
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `position[label - 1]` is the index of `label` along the path.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v - 1] = i;
        }
        pos
    }

    /// Edge weights on the sub-path between two labels, in path order.
    pub fn segment(&self, a: usize, b: usize) -> &[f64] {
        let pos = self.positions();
        let (lo, hi) = {
            let (x, y) = (pos[a - 1], pos[b - 1]);
            (x.min(y), x.max(y))
        };
        &self.weights[lo..hi]
    }

    pub fn to_text(&self) -> String {
        let order: Vec<String> = self.order.iter().map(|v| v.to_string()).collect();
        let weights: Vec<String> = self.weights.iter().map(|v| v.to_string()).collect();
        format!("path\n{}\n{}\n", order.join(" "), weights.join(" "))
    }

    fn parse_lines<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<DefiningPath> {
        let (no, order_line) = lines.next().ok_or(Error::Parse {
            line: 2,
            msg: "missing vertex order".into(),
        })?;
        let order = order_line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: no,
                    msg: format!("bad vertex {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let weights = match lines.next() {
            Some((no, line)) => line
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>().map_err(|_| Error::Parse {
                        line: no,
                        msg: format!("bad weight {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            None if order.len() == 1 => Vec::new(),
            None => {
                return Err(Error::Parse {
                    line: no + 1,
                    msg: "missing weights".into(),
                })
            }
        };
        if let Some((no, _)) = lines.next() {
            return Err(Error::Parse {
                line: no,
                msg: "unexpected trailing line".into(),
            });
        }
        DefiningPath::new(order, weights).map_err(|e| Error::Parse {
            line: no,
            msg: e.to_string(),
        })
    }
}

/// `φ(i, j)` is the weight of the sub-path between `i` and `j`.
pub fn metric_path(path: &DefiningPath) -> CostMatrix {
    let n = path.n();
    let mut m = CostMatrix::unreachable(n);
    for i in 0..n {
        let mut acc = 0.0;
        for j in i + 1..n {
            acc += path.weights[j - 1];
            m.put(path.order[i] - 1, path.order[j] - 1, acc);
        }
    }
    m
}

/// Finite only on the path's own edges.
pub fn extended_metric_path(path: &DefiningPath) -> CostMatrix {
    let mut m = CostMatrix::unreachable(path.n());
    for (i, &w) in path.weights.iter().enumerate() {
        m.put(path.order[i] - 1, path.order[i + 1] - 1, w);
    }
    m
}

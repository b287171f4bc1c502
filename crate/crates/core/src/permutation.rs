//! Permutations of `{1..n}`, their cycles, and transposition decompositions.
//!
//! Every public API speaks in 1-based labels. A permutation maps position
//! `i` to the object `π(i)`; the product `p2 ∘ p1` applies `p1` first.

use std::fmt;
use std::str::FromStr;

use crate::cost::CostMatrix;
use crate::error::{Error, Result};

/// A bijection on `{1..n}`, stored 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_len(len: usize) -> Parity {
        if len % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from one-line notation, `images[i - 1] = π(i)`.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty ground set".into()));
        }
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::LabelOutOfRange { label: img, n });
            }
            if seen[img - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "image {img} appears twice"
                )));
            }
            seen[img - 1] = true;
            zero_based.push(img - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// Builds a permutation on `{1..n}` from a product of disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Cycle]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            let elems = cycle.elements();
            for (i, &a) in elems.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::LabelOutOfRange { label: a, n });
                }
                if touched[a - 1] {
                    return Err(Error::InvalidCycle(format!(
                        "element {a} appears in more than one cycle"
                    )));
                }
                touched[a - 1] = true;
                images[a - 1] = elems[(i + 1) % elems.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `π(label)`.
    pub fn image(&self, label: usize) -> usize {
        self.images[label - 1] + 1
    }

    /// One-line notation, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub(crate) fn raw_images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ first`: applies `first`, then `self`.
    pub fn compose(&self, first: &Permutation) -> Result<Permutation> {
        if self.len() != first.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: first.len(),
            });
        }
        Ok(Permutation {
            images: first.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles covering `{1..n}` in canonical form, fixed points included.
    pub fn cycles(&self) -> Vec<Cycle> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut elems = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                elems.push(cur + 1);
                cur = self.images[cur];
            }
            // `start` is the smallest unseen element, so the rotation is already canonical.
            out.push(Cycle { elements: elems });
        }
        out
    }

    /// Cycles of length at least two.
    pub fn nontrivial_cycles(&self) -> Vec<Cycle> {
        self.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
            }
        }
        count
    }

    /// Parity of the inversion count.
    pub fn parity(&self) -> Parity {
        let inversions = self
            .images
            .iter()
            .enumerate()
            .map(|(i, &a)| self.images[i + 1..].iter().filter(|&&b| b < a).count())
            .sum::<usize>();
        Parity::of_len(inversions)
    }

    /// Length of a minimum length decomposition, `n - ℓ`.
    pub fn cayley_distance(&self) -> usize {
        self.len() - self.cycle_count()
    }

    /// Returns `(a b) ∘ self`, which exchanges the predecessors of `a` and `b`.
    pub fn apply_transposition(&self, t: Transposition) -> Result<Permutation> {
        self.check_label(t.b())?;
        let (a, b) = (t.a() - 1, t.b() - 1);
        let images = self
            .images
            .iter()
            .map(|&v| {
                if v == a {
                    b
                } else if v == b {
                    a
                } else {
                    v
                }
            })
            .collect();
        Ok(Permutation { images })
    }

    pub(crate) fn check_label(&self, label: usize) -> Result<()> {
        if label == 0 || label > self.len() {
            Err(Error::LabelOutOfRange {
                label,
                n: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Parses one-line notation (`"3 1 2 5 4"`) or, when `n` is given, cycle
    /// notation (`"(1 3 2)(4 5)"`).
    pub fn parse(text: &str, n: Option<usize>) -> Result<Permutation> {
        let trimmed = text.trim();
        if trimmed.starts_with('(') {
            let cycles = Cycle::parse_product(trimmed)?;
            let n = match n {
                Some(n) => n,
                None => cycles
                    .iter()
                    .flat_map(|c| c.elements().iter().copied())
                    .max()
                    .unwrap_or(1),
            };
            Permutation::from_cycles(n, &cycles)
        } else {
            let images = trimmed
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: 1,
                        msg: format!("bad image {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let perm = Permutation::from_images(&images)?;
            if let Some(n) = n {
                if n != perm.len() {
                    return Err(Error::SizeMismatch {
                        expected: n,
                        found: perm.len(),
                    });
                }
            }
            Ok(perm)
        }
    }

    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.nontrivial_cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for Permutation {
    /// One-line notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s, None)
    }
}

/// A swap of two labels, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    a: usize,
    b: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Result<Transposition> {
        if a == b {
            return Err(Error::DegenerateTransposition(a));
        }
        if a == 0 || b == 0 {
            return Err(Error::LabelOutOfRange {
                label: 0,
                n: a.max(b),
            });
        }
        Ok(Transposition {
            a: a.min(b),
            b: a.max(b),
        })
    }

    /// Panics on `a == b`; for labels already known to be distinct.
    pub(crate) fn pair(a: usize, b: usize) -> Transposition {
        assert!(a != b && a > 0 && b > 0, "degenerate transposition ({a} {b})");
        Transposition {
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    pub fn contains(self, x: usize) -> bool {
        self.a == x || self.b == x
    }

    /// If `self` and `other` share exactly one label, the transposition on the
    /// two remaining labels, which both `s o s` and `o s o` equal.
    pub fn triangle_partner(self, other: Transposition) -> Option<Transposition> {
        if self == other {
            return None;
        }
        let common = if other.contains(self.a) {
            self.a
        } else if other.contains(self.b) {
            self.b
        } else {
            return None;
        };
        let x = if self.a == common { self.b } else { self.a };
        let y = if other.a == common { other.b } else { other.a };
        Some(Transposition::pair(x, y))
    }

    pub fn to_permutation(self, n: usize) -> Result<Permutation> {
        Permutation::identity(n).apply_transposition(self)
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.a, self.b)
    }
}

/// A cycle `(a1 a2 … ak)` with `a_{i+1} = σ(a_i)`, rotated to start at its minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    elements: Vec<usize>,
}

impl Cycle {
    pub fn new(elements: Vec<usize>) -> Result<Cycle> {
        if elements.is_empty() {
            return Err(Error::InvalidCycle("empty cycle".into()));
        }
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        if sorted[0] == 0 {
            return Err(Error::InvalidCycle("labels start at 1".into()));
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCycle(format!(
                "repeated element in {elements:?}"
            )));
        }
        let start = elements
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut elements = elements;
        elements.rotate_left(start);
        Ok(Cycle { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_label(&self) -> usize {
        self.elements.iter().copied().max().unwrap_or(0)
    }

    /// `σ(a)`, or `a` itself when `a` is not on the cycle.
    pub fn image(&self, a: usize) -> usize {
        match self.elements.iter().position(|&x| x == a) {
            Some(i) => self.elements[(i + 1) % self.elements.len()],
            None => a,
        }
    }

    /// Consecutive pairs `(a_i, σ(a_i))`, closing edge last.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.elements.len();
        (0..k).map(move |i| (self.elements[i], self.elements[(i + 1) % k]))
    }

    pub fn to_permutation(&self, n: usize) -> Result<Permutation> {
        Permutation::from_cycles(n, std::slice::from_ref(self))
    }

    /// Parses `"(1 3 2)(4 5)"`; a single cycle may also be written `"(1 3 2)"`.
    pub fn parse_product(text: &str) -> Result<Vec<Cycle>> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("expected '(' at {rest:?}"),
            })?;
            let close = open.find(')').ok_or_else(|| Error::Parse {
                line: 1,
                msg: "unbalanced parenthesis".into(),
            })?;
            let body = &open[..close];
            let elems = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: 1,
                        msg: format!("bad cycle element {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if !elems.is_empty() {
                cycles.push(Cycle::new(elems)?);
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(cycles)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A sequence `t_m ⋯ t_1` stored as written: index 0 is `t_m`, applied last.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    transpositions: Vec<Transposition>,
}

impl Decomposition {
    pub fn new(transpositions: Vec<Transposition>) -> Decomposition {
        Decomposition { transpositions }
    }

    pub fn empty() -> Decomposition {
        Decomposition::default()
    }

    pub fn transpositions(&self) -> &[Transposition] {
        &self.transpositions
    }

    pub fn into_inner(self) -> Vec<Transposition> {
        self.transpositions
    }

    pub fn len(&self) -> usize {
        self.transpositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transpositions.is_empty()
    }

    /// Writes `other` to the right of `self`, so `other` is applied first.
    pub fn then_after(mut self, other: Decomposition) -> Decomposition {
        self.transpositions.extend(other.transpositions);
        self
    }

    pub fn reversed(&self) -> Decomposition {
        let mut t = self.transpositions.clone();
        t.reverse();
        Decomposition { transpositions: t }
    }

    /// Product over `{1..n}`, applying the rightmost transposition first.
    pub fn product(&self, n: usize) -> Result<Permutation> {
        let mut p = Permutation::identity(n);
        for &t in self.transpositions.iter().rev() {
            p = p.apply_transposition(t)?;
        }
        Ok(p)
    }

    /// Sum of member costs; `+∞` if any member is infinite.
    pub fn cost(&self, costs: &CostMatrix) -> f64 {
        self.transpositions
            .iter()
            .map(|t| costs.get(t.a(), t.b()))
            .sum()
    }

    /// True iff the product equals `target` and the length has the parity of `target`.
    pub fn validate(&self, target: &Permutation) -> bool {
        match self.product(target.len()) {
            Ok(p) => p == *target && Parity::of_len(self.len()) == target.parity(),
            Err(_) => false,
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.transpositions.iter().flat_map(|t| [t.a(), t.b()])
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.transpositions {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromIterator<Transposition> for Decomposition {
    fn from_iter<I: IntoIterator<Item = Transposition>>(iter: I) -> Self {
        Decomposition {
            transpositions: iter.into_iter().collect(),
        }
    }
}

/// Parses a written product such as `"(45)(23)(12)"` or `"(4 5)(2 3)(1 2)"`.
///
/// Compact two-character bodies like `(45)` are read as two single-digit labels.
pub fn parse_transpositions(text: &str) -> Result<Decomposition> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse {
            line: 1,
            msg: format!("expected '(' at {rest:?}"),
        })?;
        let close = open.find(')').ok_or_else(|| Error::Parse {
            line: 1,
            msg: "unbalanced parenthesis".into(),
        })?;
        let body = open[..close].trim();
        let toks: Vec<&str> = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        let labels: Vec<usize> = if toks.len() == 1 && toks[0].len() == 2 {
            toks[0]
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .unwrap_or_default()
        } else {
            toks.iter().filter_map(|t| t.parse().ok()).collect()
        };
        if labels.len() != 2 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("({body}) is not a transposition"),
            });
        }
        out.push(Transposition::new(labels[0], labels[1])?);
        rest = open[close + 1..].trim_start();
    }
    Ok(Decomposition::new(out))
}

//! Spanning trees drawn inside a cycle's circle, and their conversion to
//! minimum length decompositions.

use crate::permutation::Transposition;

/// True if two chords of a circle cross in their interiors. Endpoints are
/// positions around the circle; chords sharing an endpoint never cross.
pub fn chords_cross(e: (usize, usize), f: (usize, usize)) -> bool {
    let (a, b) = (e.0.min(e.1), e.0.max(e.1));
    let (c, d) = (f.0.min(f.1), f.0.max(f.1));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// True if no two edges (given as circle positions) cross.
pub fn is_non_crossing(edges: &[(usize, usize)]) -> bool {
    edges
        .iter()
        .enumerate()
        .all(|(i, &e)| edges[i + 1..].iter().all(|&f| !chords_cross(e, f)))
}

/// Turns a non-crossing spanning tree on the labels of the cycle
/// `(verts[0] verts[1] ⋯)` into a decomposition of that cycle with one
/// transposition per tree edge, written left to right.
///
/// Works by splitting at a vertex `v` of degree at least two: with `r` its
/// furthest neighbour, removing `(v r)` separates an arc `v ⋯ v_{s-1}` from
/// `v_s ⋯`, and `(v ⋯ v_{m-1}) = (v_s ⋯ v_{m-1} v)(v ⋯ v_{s-1})`.
/// Returns `None` if the tree is not a non-crossing spanning tree.
pub fn tree_to_mld(verts: &[usize], edges: &[(usize, usize)]) -> Option<Vec<Transposition>> {
    if edges.len() + 1 != verts.len() {
        return None;
    }
    let mut seen: Vec<(usize, usize)> = edges.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != edges.len() || seen.iter().any(|&(x, y)| x == y) {
        return None;
    }
    let mut out = Vec::with_capacity(edges.len());
    convert(verts, edges, &mut out).then_some(out)
}

fn convert(verts: &[usize], edges: &[(usize, usize)], out: &mut Vec<Transposition>) -> bool {
    let m = verts.len();
    if edges.len() + 1 != m {
        return false;
    }
    match m {
        1 => return edges.is_empty(),
        2 => {
            if edges.len() != 1 {
                return false;
            }
            let (x, y) = edges[0];
            if !((x == verts[0] && y == verts[1]) || (x == verts[1] && y == verts[0])) {
                return false;
            }
            out.push(Transposition::pair(x, y));
            return true;
        }
        _ => {}
    }
    let degree = |v: usize| edges.iter().filter(|&&(x, y)| x == v || y == v).count();
    let Some(pivot) = (0..m).find(|&i| degree(verts[i]) > 1) else {
        return false;
    };
    let mut rotated = verts.to_vec();
    rotated.rotate_left(pivot);
    let pos = |label: usize| rotated.iter().position(|&x| x == label);
    let v0 = rotated[0];

    // furthest neighbour of v0 along the circle
    let mut r_pos = 0;
    for &(x, y) in edges {
        let other = if x == v0 {
            y
        } else if y == v0 {
            x
        } else {
            continue;
        };
        match pos(other) {
            Some(p) => r_pos = r_pos.max(p),
            None => return false,
        }
    }
    let r = rotated[r_pos];

    // component of v0 once (v0 r) is removed
    let mut in_comp = vec![false; m];
    in_comp[0] = true;
    let mut stack = vec![v0];
    while let Some(u) = stack.pop() {
        for &(x, y) in edges {
            if (x == v0 && y == r) || (y == v0 && x == r) {
                continue;
            }
            let next = if x == u {
                y
            } else if y == u {
                x
            } else {
                continue;
            };
            let Some(p) = pos(next) else { return false };
            if !in_comp[p] {
                in_comp[p] = true;
                stack.push(next);
            }
        }
    }
    let s = in_comp.iter().take_while(|&&c| c).count();
    if in_comp[s..].iter().any(|&c| c) || s >= m {
        return false;
    }

    let left: Vec<usize> = rotated[..s].to_vec();
    let mut right: Vec<usize> = rotated[s..].to_vec();
    right.push(v0);
    let within = |set: &[usize]| -> Vec<(usize, usize)> {
        edges
            .iter()
            .copied()
            .filter(|&(x, y)| set.contains(&x) && set.contains(&y))
            .collect()
    };
    let left_edges = within(&left);
    let right_edges = within(&right);
    convert(&right, &right_edges, out) && convert(&left, &left_edges, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::{Cycle, Decomposition};

    #[test]
    fn crossing_chords() {
        assert!(chords_cross((0, 2), (1, 3)));
        assert!(chords_cross((1, 3), (2, 0)));
        assert!(!chords_cross((0, 2), (2, 3)));
        assert!(!chords_cross((0, 3), (1, 2)));
        assert!(!is_non_crossing(&[(0, 2), (1, 3), (0, 1)]));
        assert!(is_non_crossing(&[(0, 1), (0, 2), (0, 3)]));
    }

    #[test]
    fn star_and_path_trees() {
        let verts = [1, 2, 3, 4, 5];
        let cycle = Cycle::new(verts.to_vec()).unwrap();
        let target = cycle.to_permutation(5).unwrap();

        let star: Vec<_> = (2..=5).map(|v| (1, v)).collect();
        let d = Decomposition::new(tree_to_mld(&verts, &star).unwrap());
        assert!(d.validate(&target));

        let path = vec![(1, 2), (2, 3), (3, 4), (4, 5)];
        let d = Decomposition::new(tree_to_mld(&verts, &path).unwrap());
        assert!(d.validate(&target));

        let mixed = vec![(1, 4), (2, 4), (2, 3), (4, 5)];
        let d = Decomposition::new(tree_to_mld(&verts, &mixed).unwrap());
        assert!(d.validate(&target));
    }

    #[test]
    fn rejects_crossing_and_non_trees() {
        let verts = [1, 2, 3, 4];
        assert!(tree_to_mld(&verts, &[(1, 3), (2, 4), (1, 2)]).is_none());
        assert!(tree_to_mld(&verts, &[(1, 2), (2, 3)]).is_none());
        assert!(tree_to_mld(&verts, &[(1, 2), (2, 1), (3, 4)]).is_none());
        assert_eq!(tree_to_mld(&[7], &[]), Some(vec![]));
    }

    #[test]
    fn non_canonical_labels() {
        let verts = [1, 7, 3, 9, 5];
        let cycle = Cycle::new(verts.to_vec()).unwrap();
        let tree = vec![(1, 9), (3, 7), (1, 3), (9, 5)];
        let d = Decomposition::new(tree_to_mld(&verts, &tree).unwrap());
        assert!(d.validate(&cycle.to_permutation(10).unwrap()));
    }
}

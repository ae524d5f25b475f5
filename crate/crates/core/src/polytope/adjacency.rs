//! Linear-programming predicates on vertex sets: the edge oracle, origin
//! interiority, and convex position.

use super::{Polytope, Result};
use crate::lp::{self, LpOutcome};

/// Weight on outside vertices below which a midpoint counts as on an edge.
const EDGE_EPS: f64 = 1e-7;
/// Minimal uniform weight for the origin to count as interior.
const INTERIOR_EPS: f64 = 1e-10;

/// Rows `sum_k w_k v_k = target` and `sum_k w_k = 1` over the given columns.
fn combination_rows(p: &Polytope, cols: &[usize], target: &[f64]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut a = Vec::with_capacity(p.dim + 1);
    let mut b = Vec::with_capacity(p.dim + 1);
    for (c, &t) in target.iter().enumerate() {
        a.push(cols.iter().map(|&k| p.vertices[k][c]).collect());
        b.push(t);
    }
    a.push(vec![1.0; cols.len()]);
    b.push(1.0);
    (a, b)
}

/// Whether `[v_i, v_j]` is an edge of `conv(P)`.
///
/// The segment is an edge iff its midpoint cannot be written as a convex
/// combination that puts positive weight on any vertex other than `i`, `j`.
pub fn is_edge(p: &Polytope, i: usize, j: usize) -> Result<bool> {
    p.check_index(i)?;
    p.check_index(j)?;
    if i == j {
        return Err(super::PolytopeError::Loop(i));
    }
    let mid = p.vertices[i].add(&p.vertices[j]).scale(0.5);
    let cols: Vec<usize> = (0..p.vertices.len()).collect();
    let (a, b) = combination_rows(p, &cols, &mid);
    let c: Vec<f64> = cols
        .iter()
        .map(|&k| if k == i || k == j { 0.0 } else { 1.0 })
        .collect();
    Ok(match lp::maximize(&a, &b, &c)? {
        LpOutcome::Optimal { value, .. } => value <= EDGE_EPS,
        // The midpoint is always feasible and the objective bounded by 1.
        LpOutcome::Infeasible | LpOutcome::Unbounded => false,
    })
}

/// All pairs passing [`is_edge`], sorted.
pub fn derive_edges(p: &Polytope) -> Result<Vec<[usize; 2]>> {
    let n = p.vertices.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if is_edge(p, i, j)? {
                edges.push([i, j]);
            }
        }
    }
    Ok(edges)
}

/// Whether the origin is strictly inside `conv(P)`.
///
/// For a full-dimensional vertex set this holds iff the origin is a convex
/// combination with every weight positive; maximizes the smallest weight.
pub fn contains_origin_interior(p: &Polytope) -> Result<bool> {
    let n = p.vertices.len();
    if n == 0 {
        return Ok(false);
    }
    // Weights are mu_k + t with mu_k >= 0 and t the common floor.
    let mut a = Vec::with_capacity(p.dim + 1);
    for c in 0..p.dim {
        let mut row: Vec<f64> = p.vertices.iter().map(|v| v[c]).collect();
        row.push(p.vertices.iter().map(|v| v[c]).sum());
        a.push(row);
    }
    let mut last = vec![1.0; n];
    last.push(n as f64);
    a.push(last);
    let mut b = vec![0.0; p.dim];
    b.push(1.0);
    let mut c = vec![0.0; n];
    c.push(1.0);
    Ok(match lp::maximize(&a, &b, &c)? {
        LpOutcome::Optimal { value, .. } => value > INTERIOR_EPS,
        _ => false,
    })
}

/// First vertex lying in the convex hull of the others, if any.
pub fn in_convex_position(p: &Polytope) -> Result<Option<usize>> {
    let n = p.vertices.len();
    for i in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        if cols.is_empty() {
            continue;
        }
        let (a, b) = combination_rows(p, &cols, &p.vertices[i]);
        if lp::is_feasible(&a, &b)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Point;

    fn square() -> Polytope {
        let v: Vec<Point> = vec![
            [0.0, 0.0].into(),
            [1.0, 0.0].into(),
            [1.0, 1.0].into(),
            [0.0, 1.0].into(),
        ];
        Polytope::new(2, v, vec![], None, "").unwrap()
    }

    fn cube() -> Polytope {
        let mut v = Vec::new();
        for m in 0..8 {
            v.push(Point(
                (0..3)
                    .map(|b| if m >> b & 1 == 1 { 1.0 } else { -1.0 })
                    .collect(),
            ));
        }
        Polytope::new(3, v, vec![], None, "").unwrap()
    }

    #[test]
    fn square_adjacency() {
        let sq = square();
        assert!(is_edge(&sq, 0, 1).unwrap());
        assert!(!is_edge(&sq, 0, 2).unwrap());
        assert_eq!(derive_edges(&sq).unwrap().len(), 4);
        assert!(is_edge(&sq, 0, 9).is_err());
    }

    #[test]
    fn cube_edges_and_interior() {
        let c = cube();
        let edges = derive_edges(&c).unwrap();
        assert_eq!(edges.len(), 12);
        for [i, j] in edges {
            assert_eq!((i ^ j).count_ones(), 1);
        }
        assert!(contains_origin_interior(&c).unwrap());
        let moved = c.translated(&Point(vec![10.0, 0.0, 0.0]));
        assert!(!contains_origin_interior(&moved).unwrap());
        // Origin on a facet is not interior.
        let touching = c.translated(&Point(vec![1.0, 0.0, 0.0]));
        assert!(!contains_origin_interior(&touching).unwrap());
    }

    #[test]
    fn convex_position() {
        assert_eq!(in_convex_position(&cube()).unwrap(), None);
        let mut c = cube();
        c.vertices.push(Point(vec![0.5, 0.0, 0.0]));
        assert_eq!(in_convex_position(&c).unwrap(), Some(8));
    }
}

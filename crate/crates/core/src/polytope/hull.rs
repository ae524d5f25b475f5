//! 2-faces of 3-polytopes from the vertex set and edge graph.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::{derive_edges, Point, Polytope, PolytopeError, Result};
use crate::scalar::Tolerance;

/// A 2-face of a 3-polytope: vertex cycle ordered counter-clockwise when
/// seen from outside, with unit outward normal and plane offset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub normal: [f64; 3],
    pub offset: f64,
}

impl Face {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Whether `a` and `b` are consecutive on the boundary cycle.
    pub fn has_side(&self, a: usize, b: usize) -> bool {
        let n = self.vertices.len();
        (0..n).any(|i| {
            let (x, y) = (self.vertices[i], self.vertices[(i + 1) % n]);
            (x == a && y == b) || (x == b && y == a)
        })
    }

    pub fn normal(&self) -> Vector3<f64> {
        Vector3::from(self.normal)
    }
}

fn v3(p: &Point) -> Vector3<f64> {
    Vector3::new(p[0], p[1], p[2])
}

/// Orders coplanar points counter-clockwise about `normal`.
fn order_cycle(p: &Polytope, mut ids: Vec<usize>, normal: &Vector3<f64>) -> Vec<usize> {
    let pts: Vec<Vector3<f64>> = ids.iter().map(|&i| v3(&p.vertices[i])).collect();
    let c = pts.iter().sum::<Vector3<f64>>() / pts.len() as f64;
    let u = (pts[0] - c).normalize();
    let w = normal.cross(&u);
    let angle = |x: &Vector3<f64>| {
        let d = x - c;
        d.dot(&w).atan2(d.dot(&u))
    };
    let mut keyed: Vec<(f64, usize)> = ids.iter().zip(&pts).map(|(&i, x)| (angle(x), i)).collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    ids = keyed.into_iter().map(|(_, i)| i).collect();
    ids
}

/// All 2-faces of a 3-polytope.
///
/// Every face contains a path `a - b - c` of edges; each such path spans a
/// candidate plane, kept when all vertices lie on one side. Uses the stored
/// edges, or derives them when none are stored.
pub fn faces_3d(p: &Polytope, tol: &Tolerance) -> Result<Vec<Face>> {
    if p.dim != 3 {
        return Err(PolytopeError::WrongDimension {
            expected: 3,
            got: p.dim,
        });
    }
    let rank = p.affine_rank(tol);
    if rank != 3 {
        return Err(PolytopeError::NotFullDimensional { rank, dim: 3 });
    }
    let owned;
    let edges = if p.edges.is_empty() {
        owned = derive_edges(p)?;
        &owned
    } else {
        &p.edges
    };
    let graph = super::EdgeGraph::new(p.vertices.len(), edges);
    let eps = tol.abs_eps.max(1e-9) * p.scale();
    let pts: Vec<Vector3<f64>> = p.vertices.iter().map(v3).collect();

    let mut seen = BTreeSet::new();
    let mut faces = Vec::new();
    for b in 0..pts.len() {
        let nb = graph.neighbors(b);
        for (x, &a) in nb.iter().enumerate() {
            for &c in &nb[x + 1..] {
                let cross = (pts[a] - pts[b]).cross(&(pts[c] - pts[b]));
                if cross.norm() <= eps {
                    continue;
                }
                let mut n = cross.normalize();
                let mut off = n.dot(&pts[b]);
                let side: Vec<f64> = pts.iter().map(|q| n.dot(q) - off).collect();
                if side.iter().all(|&s| s <= eps) {
                } else if side.iter().all(|&s| s >= -eps) {
                    n = -n;
                    off = -off;
                } else {
                    continue;
                }
                let on: Vec<usize> = (0..pts.len()).filter(|&k| side[k].abs() <= eps).collect();
                if seen.insert(on.clone()) {
                    faces.push(Face {
                        vertices: order_cycle(p, on, &n),
                        normal: [n.x, n.y, n.z],
                        offset: off,
                    });
                }
            }
        }
    }
    faces.sort_by(|a, b| {
        let mut x = a.vertices.clone();
        let mut y = b.vertices.clone();
        x.sort_unstable();
        y.sort_unstable();
        x.cmp(&y)
    });
    let euler = p.vertices.len() as i64 - edges.len() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(PolytopeError::EulerMismatch(euler));
    }
    Ok(faces)
}

/// Interior dihedral angle at edge `e`, from the two faces containing it.
pub fn dihedral_angle(faces: &[Face], e: [usize; 2]) -> Result<f64> {
    let incident: Vec<&Face> = faces.iter().filter(|f| f.has_side(e[0], e[1])).collect();
    if incident.len() != 2 {
        return Err(PolytopeError::EdgeFaceCount(e[0], e[1], incident.len()));
    }
    let cos = incident[0]
        .normal()
        .dot(&incident[1].normal())
        .clamp(-1.0, 1.0);
    Ok(PI - cos.acos())
}

/// Indices of the face cycles through vertex `v`, in cyclic order around it.
pub fn faces_around(faces: &[Vec<usize>], v: usize) -> Vec<usize> {
    let inc: Vec<usize> = (0..faces.len())
        .filter(|&k| faces[k].contains(&v))
        .collect();
    if inc.len() < 3 {
        return inc;
    }
    // Walk across shared edges: each face at v has two sides through v.
    let sides = |k: usize| -> [usize; 2] {
        let f = &faces[k];
        let n = f.len();
        let i = f.iter().position(|&x| x == v).unwrap();
        [f[(i + n - 1) % n], f[(i + 1) % n]]
    };
    let mut order = vec![inc[0]];
    let mut next_side = sides(inc[0])[1];
    while order.len() < inc.len() {
        let Some(&k) = inc
            .iter()
            .find(|&&k| !order.contains(&k) && sides(k).contains(&next_side))
        else {
            break;
        };
        let s = sides(k);
        next_side = if s[0] == next_side { s[1] } else { s[0] };
        order.push(k);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::derive_edges;

    fn cube() -> Polytope {
        let v: Vec<Point> = (0..8)
            .map(|m| {
                Point(
                    (0..3)
                        .map(|b| if m >> b & 1 == 1 { 1.0 } else { -1.0 })
                        .collect(),
                )
            })
            .collect();
        let p = Polytope::new(3, v, vec![], None, "").unwrap();
        let e = derive_edges(&p).unwrap();
        Polytope { edges: e, ..p }
    }

    fn tetrahedron() -> Polytope {
        let v: Vec<Point> = vec![
            [1.0, 1.0, 1.0].into(),
            [1.0, -1.0, -1.0].into(),
            [-1.0, 1.0, -1.0].into(),
            [-1.0, -1.0, 1.0].into(),
        ];
        Polytope::new(
            3,
            v,
            vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
            None,
            "",
        )
        .unwrap()
    }

    #[test]
    fn cube_faces() {
        let c = cube();
        let faces = faces_3d(&c, &Tolerance::default()).unwrap();
        assert_eq!(faces.len(), 6);
        for f in &faces {
            assert_eq!(f.len(), 4);
            // Consecutive vertices are cube edges, and the cycle is CCW from outside.
            for i in 0..4 {
                assert!(c.has_edge(f.vertices[i], f.vertices[(i + 1) % 4]));
            }
            let [a, b, d] = [0, 1, 2].map(|i| v3(&c.vertices[f.vertices[i]]));
            assert!((b - a).cross(&(d - b)).dot(&f.normal()) > 0.0);
        }
        for &e in &c.edges {
            assert!((dihedral_angle(&faces, e).unwrap() - PI / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tetrahedron_dihedral() {
        let t = tetrahedron();
        let faces = faces_3d(&t, &Tolerance::default()).unwrap();
        assert_eq!(faces.len(), 4);
        let d = dihedral_angle(&faces, [0, 1]).unwrap();
        assert!((d - (1.0f64 / 3.0).acos()).abs() < 1e-12);
        assert!(dihedral_angle(&faces, [0, 0]).is_err());
    }

    #[test]
    fn faces_around_vertex_are_cyclic() {
        let c = cube();
        let faces = faces_3d(&c, &Tolerance::default()).unwrap();
        let cycles: Vec<Vec<usize>> = faces.into_iter().map(|f| f.vertices).collect();
        let ring = faces_around(&cycles, 0);
        assert_eq!(ring.len(), 3);
        for w in 0..3 {
            let (f, g) = (&cycles[ring[w]], &cycles[ring[(w + 1) % 3]]);
            assert_eq!(f.iter().filter(|v| g.contains(v)).count(), 2);
        }
    }

    #[test]
    fn rejects_planar_input() {
        let p = Polytope::new(
            3,
            vec![
                [0.0, 0.0, 0.0].into(),
                [1.0, 0.0, 0.0].into(),
                [0.0, 1.0, 0.0].into(),
            ],
            vec![[0, 1], [1, 2], [0, 2]],
            None,
            "",
        )
        .unwrap();
        assert!(faces_3d(&p, &Tolerance::default()).is_err());
        let sq = Polytope::new(2, vec![[0.0, 0.0].into()], vec![], None, "").unwrap();
        assert!(matches!(
            faces_3d(&sq, &Tolerance::default()),
            Err(PolytopeError::WrongDimension { .. })
        ));
    }
}

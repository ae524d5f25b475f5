//! Angle relations at simple vertices, positive linear dependencies, and the
//! central-symmetry test for 2-faces.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};

use super::{centroid, Point, Polytope, PolytopeError, Result};
use crate::scalar::Tolerance;

/// Unit vectors `u1, u2, u3` (columns) with `angle(u1,u2) = a12`,
/// `angle(u2,u3) = a23`, `angle(u3,u1) = a31`, and positive orientation.
fn frame_with_angles(a12: f64, a23: f64, a31: f64) -> Option<Matrix3<f64>> {
    let (c12, s12) = (a12.cos(), a12.sin());
    let c31 = a31.cos();
    if s12 <= 1e-12 {
        return None;
    }
    let y = (a23.cos() - c12 * c31) / s12;
    let z2 = 1.0 - c31 * c31 - y * y;
    if z2 <= 1e-14 {
        return None;
    }
    Some(Matrix3::new(
        1.0,
        c12,
        c31, //
        0.0,
        s12,
        y, //
        0.0,
        0.0,
        z2.sqrt(),
    ))
}

fn angle(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    (a.dot(b) / (a.norm() * b.norm())).clamp(-1.0, 1.0).acos()
}

fn valid_angles(a: [f64; 3]) -> bool {
    a.iter().all(|&x| x > 0.0 && x < PI)
}

/// Dihedral angles at the three edges of a simple vertex whose face angles
/// are `a12`, `a23`, `a31` (face `ij` spanned by edge directions `u_i`,
/// `u_j`). Returns `[D1, D2, D3]`, the dihedral at the edge along `u_i`.
///
/// The inward facet normals are the dual basis of the edge directions; the
/// dihedral at `u_j` is `pi` minus the angle between the normals of the two
/// facets through `u_j`.
pub fn dihedral_from_interior_angles(a12: f64, a23: f64, a31: f64) -> Result<[f64; 3]> {
    let input = [a12, a23, a31];
    if !valid_angles(input) {
        return Err(PolytopeError::UnrealizableAngles(input));
    }
    let u = frame_with_angles(a12, a23, a31).ok_or(PolytopeError::UnrealizableAngles(input))?;
    let d = u
        .try_inverse()
        .ok_or(PolytopeError::UnrealizableAngles(input))?
        .transpose();
    // Column i of d is normal to the facet not containing u_i.
    let n = |i: usize| d.column(i).into_owned();
    Ok([
        PI - angle(&n(1), &n(2)),
        PI - angle(&n(2), &n(0)),
        PI - angle(&n(0), &n(1)),
    ])
}

/// Inverse of [`dihedral_from_interior_angles`]: face angles
/// `[a12, a23, a31]` from dihedral angles `[D1, D2, D3]`.
pub fn interior_angles_from_dihedral(d1: f64, d2: f64, d3: f64) -> Result<[f64; 3]> {
    let input = [d1, d2, d3];
    if !valid_angles(input) {
        return Err(PolytopeError::UnrealizableAngles(input));
    }
    // Normals n_i (facet opposite u_i) meet at pi - D_k, k the shared edge.
    let n = frame_with_angles(PI - d3, PI - d1, PI - d2)
        .ok_or(PolytopeError::UnrealizableAngles(input))?;
    let u = n
        .try_inverse()
        .ok_or(PolytopeError::UnrealizableAngles(input))?
        .transpose();
    let col = |i: usize| u.column(i).into_owned();
    Ok([
        angle(&col(0), &col(1)),
        angle(&col(1), &col(2)),
        angle(&col(2), &col(0)),
    ])
}

/// Positive coefficients `alpha` with `sum alpha_i x_i = 0` for `d + 1`
/// vectors in `R^d` with pairwise negative inner products.
///
/// Projects `x_1..x_d` onto the complement of `x_0`, recurses, and reads off
/// `alpha_0` from the remaining multiple of `x_0`.
pub fn sum_to_zero_coefficients(vectors: &[Point]) -> Result<Vec<f64>> {
    let d = vectors.len().saturating_sub(1);
    if d == 0 || vectors.iter().any(|v| v.dim() != d) {
        return Err(PolytopeError::Precondition(format!(
            "need d + 1 vectors in R^d, got {} vectors",
            vectors.len()
        )));
    }
    for (i, x) in vectors.iter().enumerate() {
        if x.norm() == 0.0 {
            return Err(PolytopeError::Precondition(format!("vector {i} is zero")));
        }
        for (j, y) in vectors.iter().enumerate().skip(i + 1) {
            if x.dot(y) >= 0.0 {
                return Err(PolytopeError::Precondition(format!(
                    "vectors {i} and {j} have inner product {} >= 0",
                    x.dot(y)
                )));
            }
        }
    }
    let xs: Vec<DVector<f64>> = vectors
        .iter()
        .map(|v| DVector::from_column_slice(v))
        .collect();
    Ok(recurse(&xs))
}

fn recurse(xs: &[DVector<f64>]) -> Vec<f64> {
    let d = xs.len() - 1;
    if d == 1 {
        return vec![xs[1][0].abs(), xs[0][0].abs()];
    }
    let x0 = &xs[0];
    let h = householder_to_last(&(x0 / x0.norm()));
    // After h, x0 lies along the last axis; drop that coordinate.
    let projected: Vec<DVector<f64>> = xs[1..]
        .iter()
        .map(|x| (&h * x).rows(0, d - 1).into_owned())
        .collect();
    let tail = recurse(&projected);
    let sum = xs[1..]
        .iter()
        .zip(&tail)
        .fold(DVector::zeros(d), |acc, (x, a)| acc + x * *a);
    let alpha0 = -sum.dot(x0) / x0.norm_squared();
    let mut out = vec![alpha0];
    out.extend(tail);
    out
}

/// Orthogonal reflection mapping unit `v` to `+-e_last`.
fn householder_to_last(v: &DVector<f64>) -> DMatrix<f64> {
    let d = v.len();
    let mut e = DVector::zeros(d);
    e[d - 1] = if v[d - 1] > 0.0 { -1.0 } else { 1.0 };
    let w = v - &e;
    let mut h = DMatrix::identity(d, d);
    let ww = w.norm_squared();
    if ww > 0.0 {
        h -= (&w * w.transpose()) * (2.0 / ww);
    }
    h
}

/// Whether every 2-face is centrally symmetric about its vertex centroid.
/// Polytopes without stored faces yield `false`.
pub fn centrally_symmetric_2faces(p: &Polytope, tol: &Tolerance) -> bool {
    let Some(faces) = &p.faces else {
        return false;
    };
    let eps = tol.abs_eps.max(1e-9) * p.scale();
    faces.iter().all(|f| {
        let pts: Vec<&Point> = f.iter().map(|&i| &p.vertices[i]).collect();
        let c = centroid(pts.iter().copied()).unwrap();
        pts.iter().all(|v| {
            let mirror = c.scale(2.0).sub(v);
            pts.iter().any(|w| w.dist(&mirror) <= eps)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Spherical law of cosines: angle at vertex `j` of the link triangle.
    fn law_of_cosines(a12: f64, a23: f64, a31: f64) -> [f64; 3] {
        let at = |opp: f64, s1: f64, s2: f64| {
            ((opp.cos() - s1.cos() * s2.cos()) / (s1.sin() * s2.sin())).acos()
        };
        [at(a23, a12, a31), at(a31, a12, a23), at(a12, a23, a31)]
    }

    #[test]
    fn cube_corner() {
        let r = PI / 2.0;
        let d = dihedral_from_interior_angles(r, r, r).unwrap();
        for x in d {
            assert!((x - r).abs() < 1e-12);
        }
    }

    #[test]
    fn tetrahedron_corner() {
        let t = PI / 3.0;
        let d = dihedral_from_interior_angles(t, t, t).unwrap();
        let expected = (1.0f64 / 3.0).acos();
        for x in d {
            assert!((x - expected).abs() < 1e-12);
            assert!((x.to_degrees() - 70.5288).abs() < 1e-4);
        }
    }

    #[test]
    fn obtuse_rhombic_corner() {
        let a = (-1.0f64 / 3.0).acos();
        let d = dihedral_from_interior_angles(a, a, a).unwrap();
        for x in d {
            assert!((x - 2.0 * PI / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unrealizable_triples() {
        // Triangle inequality on the sphere fails.
        assert!(dihedral_from_interior_angles(0.3, 0.3, 1.5).is_err());
        // Angle sum reaches 2 pi (flat vertex).
        let t = 2.0 * PI / 3.0;
        assert!(dihedral_from_interior_angles(t, t, t).is_err());
        assert!(dihedral_from_interior_angles(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn sum_to_zero_small_cases() {
        let a = sum_to_zero_coefficients(&[Point(vec![1.0]), Point(vec![-2.0])]).unwrap();
        assert_eq!(a, vec![2.0, 1.0]);
        let dirs: Vec<Point> = (0..3)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 3.0;
                Point(vec![t.cos(), t.sin()])
            })
            .collect();
        let a = sum_to_zero_coefficients(&dirs).unwrap();
        assert!((a[0] - a[1]).abs() < 1e-12 && (a[1] - a[2]).abs() < 1e-12);
        assert!(sum_to_zero_coefficients(&[Point(vec![1.0]), Point(vec![2.0])]).is_err());
        assert!(sum_to_zero_coefficients(&[Point(vec![1.0, 0.0])]).is_err());
    }

    /// Regular simplex directions in R^d.
    fn simplex_dirs(d: usize) -> Vec<DVector<f64>> {
        let n = d + 1;
        // Centered standard basis of R^{d+1}, then coordinates in the sum-zero hyperplane.
        let mut pts: Vec<DVector<f64>> = (0..n)
            .map(|i| {
                let mut v = DVector::from_element(n, -1.0 / n as f64);
                v[i] += 1.0;
                v
            })
            .collect();
        let ones = DVector::from_element(n, 1.0 / (n as f64).sqrt());
        let h = householder_to_last(&ones);
        for p in &mut pts {
            *p = (&h * &*p).rows(0, d).into_owned();
        }
        pts
    }

    proptest! {
        #[test]
        fn sum_to_zero_on_perturbed_simplices(
            d in 1usize..6,
            noise in proptest::collection::vec(-0.15f64..0.15, 36),
        ) {
            let base = simplex_dirs(d);
            let vecs: Vec<Point> = base
                .iter()
                .enumerate()
                .map(|(i, v)| Point(v.iter().enumerate().map(|(c, x)| x + noise[i * 6 + c]).collect()))
                .collect();
            prop_assume!(sum_to_zero_coefficients(&vecs).is_ok());
            let alpha = sum_to_zero_coefficients(&vecs).unwrap();
            prop_assert!(alpha.iter().all(|&a| a > 0.0));
            let mut res = vec![0.0; d];
            for (a, v) in alpha.iter().zip(&vecs) {
                for c in 0..d {
                    res[c] += a * v[c];
                }
            }
            let scale = vecs.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let r: f64 = res.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!(r <= 1e-9 * scale * alpha.iter().cloned().fold(1.0, f64::max));
        }

        #[test]
        fn dihedral_round_trip(
            a12 in 0.2f64..2.6, a23 in 0.2f64..2.6, a31 in 0.2f64..2.6,
        ) {
            let Ok(d) = dihedral_from_interior_angles(a12, a23, a31) else {
                return Ok(());
            };
            let oracle = law_of_cosines(a12, a23, a31);
            for k in 0..3 {
                prop_assert!((d[k] - oracle[k]).abs() < 1e-9);
            }
            let back = interior_angles_from_dihedral(d[0], d[1], d[2]).unwrap();
            prop_assert!((back[0] - a12).abs() < 1e-9);
            prop_assert!((back[1] - a23).abs() < 1e-9);
            prop_assert!((back[2] - a31).abs() < 1e-9);
        }
    }
}

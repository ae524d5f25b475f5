//! Vertex/edge/face model of convex polytopes and the geometric predicates
//! built on it.

mod adjacency;
mod angles;
mod graph;
mod hull;
pub mod io;

use std::fmt;
use std::ops::{Deref, Index};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp::LpError;
use crate::scalar::Tolerance;

pub use adjacency::{contains_origin_interior, derive_edges, in_convex_position, is_edge};
pub use angles::{
    centrally_symmetric_2faces, dihedral_from_interior_angles, interior_angles_from_dihedral,
    sum_to_zero_coefficients,
};
pub use graph::EdgeGraph;
pub use hull::{dihedral_angle, faces_3d, faces_around, Face};

#[derive(Debug, Error)]
pub enum PolytopeError {
    #[error("vertex index {index} out of range for {count} vertices")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("vertex {vertex} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        vertex: usize,
        got: usize,
        expected: usize,
    },
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("edge ({0}, {0}) is a loop")]
    Loop(usize),
    #[error("vertex {0} lies in the hull of the others")]
    NotConvexPosition(usize),
    #[error("vertices span an affine subspace of dimension {rank}, expected {dim}")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("({0}, {1}) is not an edge of the hull")]
    NotAnEdge(usize, usize),
    #[error("face {0} is not planar")]
    NonPlanarFace(usize),
    #[error("operation requires dimension {expected}, polytope has {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("edge ({0}, {1}) lies in {2} faces, expected 2")]
    EdgeFaceCount(usize, usize, usize),
    #[error("face extraction failed Euler check: V - E + F = {0}")]
    EulerMismatch(i64),
    #[error("angles {0:?} do not bound a realizable simple vertex")]
    UnrealizableAngles([f64; 3]),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Solver(#[from] LpError),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, PolytopeError>;

/// A point in `R^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn zeros(d: usize) -> Self {
        Self(vec![0.0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: f64) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.sub(other).norm()
    }

    pub fn concat(&self, other: &Point) -> Point {
        let mut c = self.0.clone();
        c.extend_from_slice(&other.0);
        Point(c)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Deref for Point {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(v: [f64; N]) -> Self {
        Self(v.to_vec())
    }
}

/// Mean of a set of points; `None` for an empty set.
pub fn centroid<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Point> {
    let mut it = points.into_iter();
    let first = it.next()?;
    let mut sum = first.clone();
    let mut n = 1.0;
    for p in it {
        sum = sum.add(p);
        n += 1.0;
    }
    Some(sum.scale(1.0 / n))
}

/// Convex polytope given by its vertices, edges, and optionally its 2-faces.
///
/// Edges are stored as sorted pairs `i < j` in lexicographic order. Faces are
/// vertex cycles; for a polygon the single face is the polygon itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polytope {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub provenance: String,
}

impl Polytope {
    /// Structural checks only (lengths, indices, finiteness). Use
    /// [`Polytope::validate`] for the geometric invariants.
    pub fn new(
        dim: usize,
        vertices: Vec<Point>,
        edges: Vec<[usize; 2]>,
        faces: Option<Vec<Vec<usize>>>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let n = vertices.len();
        for (i, v) in vertices.iter().enumerate() {
            if v.dim() != dim {
                return Err(PolytopeError::DimensionMismatch {
                    vertex: i,
                    got: v.dim(),
                    expected: dim,
                });
            }
            if !v.is_finite() {
                return Err(PolytopeError::NonFinite(i));
            }
        }
        let check = |index: usize| {
            if index >= n {
                Err(PolytopeError::IndexOutOfRange { index, count: n })
            } else {
                Ok(())
            }
        };
        let mut normalized = Vec::with_capacity(edges.len());
        for [a, b] in edges {
            check(a)?;
            check(b)?;
            if a == b {
                return Err(PolytopeError::Loop(a));
            }
            normalized.push([a.min(b), a.max(b)]);
        }
        normalized.sort_unstable();
        normalized.dedup();
        if let Some(fs) = &faces {
            for &i in fs.iter().flatten() {
                check(i)?;
            }
        }
        Ok(Self {
            dim,
            vertices,
            edges: normalized,
            faces,
            provenance: provenance.into(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> Option<usize> {
        self.faces.as_ref().map(Vec::len)
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.vertices.len() {
            Ok(())
        } else {
            Err(PolytopeError::IndexOutOfRange {
                index,
                count: self.vertices.len(),
            })
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&[i.min(j), i.max(j)]).is_ok()
    }

    pub fn edge_length(&self, e: [usize; 2]) -> f64 {
        self.vertices[e[0]].dist(&self.vertices[e[1]])
    }

    pub fn graph(&self) -> EdgeGraph {
        EdgeGraph::new(self.vertices.len(), &self.edges)
    }

    pub fn centroid(&self) -> Point {
        centroid(&self.vertices).unwrap_or_else(|| Point::zeros(self.dim))
    }

    /// Largest vertex norm, at least 1; used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.vertices.iter().map(Point::norm).fold(1.0, f64::max)
    }

    /// Translates so that the vertex centroid is the origin.
    pub fn centered(&self) -> Polytope {
        let c = self.centroid();
        let mut p = self.clone();
        for v in &mut p.vertices {
            *v = v.sub(&c);
        }
        p
    }

    pub fn translated(&self, offset: &Point) -> Polytope {
        let mut p = self.clone();
        for v in &mut p.vertices {
            *v = v.add(offset);
        }
        p
    }

    /// Applies a linear map given as a `dim x dim` matrix.
    pub fn transformed(&self, m: &DMatrix<f64>) -> Polytope {
        let mut p = self.clone();
        for v in &mut p.vertices {
            let x = m * nalgebra::DVector::from_column_slice(v);
            *v = Point(x.iter().copied().collect());
        }
        p
    }

    /// Dimension of the affine hull of the vertices.
    pub fn affine_rank(&self, tol: &Tolerance) -> usize {
        affine_rank(&self.vertices, tol.abs_eps.max(1e-9) * self.scale())
    }

    /// Checks convex position, full dimension, the edge oracle, and face
    /// planarity.
    pub fn validate(&self, tol: &Tolerance) -> Result<()> {
        let rank = self.affine_rank(tol);
        if rank != self.dim {
            return Err(PolytopeError::NotFullDimensional {
                rank,
                dim: self.dim,
            });
        }
        if let Some(i) = in_convex_position(self)? {
            return Err(PolytopeError::NotConvexPosition(i));
        }
        for &[i, j] in &self.edges {
            if !is_edge(self, i, j)? {
                return Err(PolytopeError::NotAnEdge(i, j));
            }
        }
        if let Some(faces) = &self.faces {
            let eps = tol.abs_eps.max(1e-9) * self.scale();
            for (k, f) in faces.iter().enumerate() {
                let pts: Vec<Point> = f.iter().map(|&i| self.vertices[i].clone()).collect();
                if affine_rank(&pts, eps) > 2 {
                    return Err(PolytopeError::NonPlanarFace(k));
                }
            }
        }
        Ok(())
    }
}

impl Index<usize> for Polytope {
    type Output = Point;
    fn index(&self, i: usize) -> &Point {
        &self.vertices[i]
    }
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-polytope: {} vertices, {} edges",
            self.dim,
            self.vertices.len(),
            self.edges.len()
        )?;
        if let Some(n) = self.face_count() {
            write!(f, ", {n} 2-faces")?;
        }
        if !self.provenance.is_empty() {
            write!(f, " [{}]", self.provenance)?;
        }
        Ok(())
    }
}

/// Dimension of the affine hull of `points` by singular values above `eps`.
pub fn affine_rank(points: &[Point], eps: f64) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let d = first.dim();
    if points.len() < 2 || d == 0 {
        return 0;
    }
    let rows = points.len() - 1;
    let m = DMatrix::from_fn(rows, d, |r, c| points[r + 1][c] - first[c]);
    m.rank(eps)
}

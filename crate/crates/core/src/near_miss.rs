//! The near-miss polyhedron built from the icosahedron by replacing each
//! vertex with a star of five 4-gons whose outer corners sit at edge
//! midpoints.
//!
//! Around icosahedron vertex `v` the new vertices are the apex `a = t v/|v|`
//! and one 1-vertex `b` per incident triangle, on the segment from `v` to
//! the triangle's centroid, so the hexagons stay in the icosahedron's face
//! planes. For a given `t` the position of `b` is fixed by requiring each
//! 4-gon `a, b, m, b'` to be planar. The apex height `t` is then chosen to
//! make all edges equal or all edges tangent to one sphere.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3x2, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bipartite::{analyze_bipartite, edge_tangency, vertex_types, Reason, TypeSignature};
use crate::catalog::{icosahedron_from_cube, CatalogError};
use crate::polytope::{faces_3d, faces_around, EdgeGraph, Point, Polytope, PolytopeError};
use crate::scalar::{GoldenNumber, Tolerance, PHI};

/// Bisection bracket for the apex height, in units of the midpoint norm.
const BRACKET: (f64, f64) = (0.5, 2.0);

#[derive(Debug, Error)]
pub enum NearMissError {
    #[error("no sign change of the {0} residual on [{lo}, {hi}]", lo = BRACKET.0, hi = BRACKET.1)]
    NoBracket(Variant),
    #[error("expected 102/180/80 vertices/edges/faces, got {0}/{1}/{2}")]
    Counts(usize, usize, usize),
    #[error("no {0} vertex found on the expected axis")]
    MissingPoint(&'static str),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

pub type Result<T> = std::result::Result<T, NearMissError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// All edges of equal length.
    Equilateral,
    /// All edges tangent to a sphere about the origin.
    Tangent,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Equilateral => "equilateral",
            Variant::Tangent => "tangent",
        })
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "equilateral" => Ok(Variant::Equilateral),
            "tangent" => Ok(Variant::Tangent),
            _ => Err(format!(
                "unknown variant {s:?}, expected equilateral or tangent"
            )),
        }
    }
}

/// `(4 phi - 3)^2 + (3 phi - 1)^2`, checked against `25 phi^2 - 30 phi + 10`,
/// `35 - 55 phi` and `1 + phi^10`.
pub fn near_miss_identity() -> GoldenNumber {
    let phi = GoldenNumber::phi();
    let y = GoldenNumber::from_ints(-3, 4);
    let z = GoldenNumber::from_ints(-1, 3);
    let sq = &y.square() + &z.square();
    let expanded =
        &(&GoldenNumber::from_ints(25, 0) * &phi.square()) + &GoldenNumber::from_ints(10, -30);
    assert_eq!(sq, expanded);
    assert_eq!(sq, GoldenNumber::from_ints(35, -55));
    assert_eq!(sq, &GoldenNumber::one() + &phi.pow(10));
    sq
}

/// A point in the `(y, z)` projection plane with golden coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectedPoint {
    pub y: GoldenNumber,
    pub z: GoldenNumber,
}

impl ProjectedPoint {
    pub fn new(y: GoldenNumber, z: GoldenNumber) -> Self {
        Self { y, z }
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [self.y.to_f64(), self.z.to_f64()]
    }

    pub fn norm_sq(&self) -> GoldenNumber {
        &self.y.square() + &self.z.square()
    }

    /// The apex `A = (4 phi - 3, 3 phi - 1)`.
    pub fn apex() -> Self {
        Self::new(
            GoldenNumber::from_ints(-3, 4),
            GoldenNumber::from_ints(-1, 3),
        )
    }

    /// The edge midpoint `C = (0, 1)`.
    pub fn midpoint() -> Self {
        Self::new(GoldenNumber::zero(), GoldenNumber::one())
    }
}

/// Raw construction for a given apex height, before canonical ordering.
struct Star {
    vertices: Vec<Point>,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
    /// Edges from an apex to a 1-vertex.
    apex_edges: Vec<[usize; 2]>,
    /// Edges from a 1-vertex to a midpoint.
    rim_edges: Vec<[usize; 2]>,
}

fn v3(p: &Point) -> Vector3<f64> {
    Vector3::new(p[0], p[1], p[2])
}

fn pt(v: Vector3<f64>) -> Point {
    Point(vec![v.x, v.y, v.z])
}

struct Icosahedron {
    vertices: Vec<Vector3<f64>>,
    faces: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
}

fn icosahedron() -> Result<Icosahedron> {
    let ico = icosahedron_from_cube()?;
    let faces = ico.faces.clone().ok_or(NearMissError::Counts(12, 30, 0))?;
    Ok(Icosahedron {
        vertices: ico.vertices.iter().map(v3).collect(),
        faces,
        edges: ico.edges.clone(),
    })
}

/// Parameter `s` placing `b = v + s (c - v)` so that the midpoint of the
/// two 1-vertices of a 4-gon lies on the line from apex `a` to the outer
/// corner `m`. `q` is the mean of the two face centroids.
fn kite_parameter(v: &Vector3<f64>, q: &Vector3<f64>, a: &Vector3<f64>, m: &Vector3<f64>) -> f64 {
    // v + s (q - v) = a + u (m - a), least squares over the common plane.
    let lhs = Matrix3x2::from_columns(&[q - v, a - m]);
    let rhs = a - v;
    let sol = (lhs.transpose() * lhs)
        .try_inverse()
        .map(|inv| inv * lhs.transpose() * rhs)
        .unwrap_or_else(nalgebra::Vector2::zeros);
    sol[0]
}

fn build(ico: &Icosahedron, t: f64) -> Star {
    let n = ico.vertices.len();
    let mut vertices: Vec<Point> = Vec::new();
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    let mut apex_edges = Vec::new();
    let mut rim_edges = Vec::new();

    let apex: Vec<usize> = (0..n)
        .map(|i| {
            vertices.push(pt(ico.vertices[i].normalize() * t));
            vertices.len() - 1
        })
        .collect();
    let mut mid: HashMap<[usize; 2], usize> = HashMap::new();
    for &[i, j] in &ico.edges {
        vertices.push(pt((ico.vertices[i] + ico.vertices[j]) / 2.0));
        mid.insert([i, j], vertices.len() - 1);
    }
    let mid_of = |i: usize, j: usize| mid[&[i.min(j), i.max(j)]];
    let centroid = |f: usize| {
        ico.faces[f]
            .iter()
            .map(|&i| ico.vertices[i])
            .sum::<Vector3<f64>>()
            / 3.0
    };

    // One 1-vertex per (icosahedron vertex, incident face).
    let mut bvert: HashMap<(usize, usize), usize> = HashMap::new();
    for v in 0..n {
        let ring = faces_around(&ico.faces, v);
        let pv = ico.vertices[v];
        let a = v3(&vertices[apex[v]]);
        let shared = |f: usize, g: usize| {
            *ico.faces[f]
                .iter()
                .find(|&&x| x != v && ico.faces[g].contains(&x))
                .expect("consecutive faces share an edge")
        };
        let (f0, f1) = (ring[0], ring[1]);
        let w = shared(f0, f1);
        let q = (centroid(f0) + centroid(f1)) / 2.0;
        let s = kite_parameter(&pv, &q, &a, &v3(&vertices[mid_of(v, w)]));
        for &f in &ring {
            vertices.push(pt(pv + (centroid(f) - pv) * s));
            bvert.insert((v, f), vertices.len() - 1);
        }
        for k in 0..ring.len() {
            let (f, g) = (ring[k], ring[(k + 1) % ring.len()]);
            let m = mid_of(v, shared(f, g));
            let (bf, bg) = (bvert[&(v, f)], bvert[&(v, g)]);
            faces.push(vec![apex[v], bf, m, bg]);
            apex_edges.push([apex[v], bf]);
        }
    }
    for (f, cyc) in ico.faces.iter().enumerate() {
        let mut hex = Vec::new();
        for k in 0..3 {
            let (x, y) = (cyc[k], cyc[(k + 1) % 3]);
            let m = mid_of(x, y);
            hex.push(bvert[&(x, f)]);
            hex.push(m);
            rim_edges.push([bvert[&(x, f)], m]);
            rim_edges.push([bvert[&(y, f)], m]);
        }
        faces.push(hex);
    }
    edges.extend(apex_edges.iter().copied());
    edges.extend(rim_edges.iter().copied());
    Star {
        vertices,
        edges,
        faces,
        apex_edges,
        rim_edges,
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    s / n as f64
}

fn line_distance(a: &Point, b: &Point) -> f64 {
    let (a, b) = (v3(a), v3(b));
    a.cross(&b).norm() / (b - a).norm()
}

fn residual(star: &Star, variant: Variant) -> f64 {
    let v = &star.vertices;
    let f: &dyn Fn(&[usize; 2]) -> f64 = match variant {
        Variant::Equilateral => &|&[i, j]| v[i].dist(&v[j]),
        Variant::Tangent => &|&[i, j]| line_distance(&v[i], &v[j]),
    };
    mean(star.apex_edges.iter().map(f)) - mean(star.rim_edges.iter().map(f))
}

/// Apex height for the variant: the first sign change of the residual on
/// a 64-step grid over the bracket, refined by bisection. Past the root the
/// 4-gon closure degenerates, so the residual is only monotone near it.
pub fn apex_height(variant: Variant) -> Result<f64> {
    let ico = icosahedron()?;
    let r = |t: f64| residual(&build(&ico, t), variant);
    let steps = 64;
    let grid = |i: usize| BRACKET.0 + (BRACKET.1 - BRACKET.0) * i as f64 / steps as f64;
    let cell = (0..steps)
        .find(|&i| r(grid(i)).signum() != r(grid(i + 1)).signum())
        .ok_or(NearMissError::NoBracket(variant))?;
    let (mut lo, mut hi) = (grid(cell), grid(cell + 1));
    let rlo = r(lo);
    for _ in 0..200 {
        if hi - lo <= 1e-15 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if r(mid).signum() == rlo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Lexicographic order on coordinates rounded to 1e-9.
fn canonical(star: Star, provenance: String) -> Result<Polytope> {
    let key = |p: &Point| -> Vec<i64> { p.iter().map(|x| (x * 1e9).round() as i64).collect() };
    let mut order: Vec<usize> = (0..star.vertices.len()).collect();
    order.sort_by_key(|&i| key(&star.vertices[i]));
    let mut new_index = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let vertices = order.iter().map(|&i| star.vertices[i].clone()).collect();
    let edges = star.edges.iter().map(|e| e.map(|i| new_index[i])).collect();
    let mut faces: Vec<Vec<usize>> = star
        .faces
        .iter()
        .map(|f| {
            let g: Vec<usize> = f.iter().map(|&i| new_index[i]).collect();
            // Start each cycle at its smallest vertex.
            let k = (0..g.len()).min_by_key(|&k| g[k]).unwrap_or(0);
            g[k..].iter().chain(&g[..k]).copied().collect()
        })
        .collect();
    faces.sort();
    Ok(Polytope::new(3, vertices, edges, Some(faces), &provenance)?)
}

pub fn construct_q(variant: Variant) -> Result<Polytope> {
    let t = apex_height(variant)?;
    let star = build(&icosahedron()?, t);
    let q = canonical(star, format!("near-miss ({variant}), apex height {t:.15}"))?;
    let counts = (
        q.vertex_count(),
        q.edge_count(),
        q.face_count().unwrap_or(0),
    );
    if counts != (102, 180, 80) {
        return Err(NearMissError::Counts(counts.0, counts.1, counts.2));
    }
    Ok(q)
}

/// The apex and its neighbourhood in the `(y, z)` plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApexProjection {
    /// Measured projection of the apex above `(0, -phi, 1)`.
    pub apex: [f64; 2],
    pub expected: ProjectedPoint,
    pub deviation: f64,
    pub midpoint: [f64; 2],
    /// Common projection of the two 1-vertices shared by the apex and
    /// the midpoint.
    pub b: [f64; 2],
    /// `2B - C`.
    pub a_from_b: [f64; 2],
}

/// Projects the apex above icosahedron vertex `(0, -phi, 1)` onto the
/// `(y, z)` plane.
pub fn project_apex(q: &Polytope) -> Result<ApexProjection> {
    let dir = Vector3::new(0.0, -PHI, 1.0).normalize();
    let graph = EdgeGraph::new(q.vertex_count(), &q.edges);
    let on_axis = |u: Vector3<f64>, deg: usize| {
        (0..q.vertex_count()).find(|&i| {
            let x = v3(&q.vertices[i]);
            graph.degree(i) == deg && (x.normalize() - u).norm() < 1e-9
        })
    };
    let a = on_axis(dir, 5).ok_or(NearMissError::MissingPoint("apex"))?;
    let c = on_axis(Vector3::z(), 4).ok_or(NearMissError::MissingPoint("midpoint"))?;
    let shared: Vec<usize> = graph
        .neighbors(a)
        .iter()
        .copied()
        .filter(|x| graph.neighbors(c).contains(x))
        .collect();
    if shared.len() != 2 {
        return Err(NearMissError::MissingPoint("1-vertex"));
    }
    let yz = |i: usize| [q.vertices[i][1], q.vertices[i][2]];
    let (pa, pc) = (yz(a), yz(c));
    let (b0, b1) = (yz(shared[0]), yz(shared[1]));
    let b = [(b0[0] + b1[0]) / 2.0, (b0[1] + b1[1]) / 2.0];
    let expected = ProjectedPoint::apex();
    let e = expected.to_f64();
    Ok(ApexProjection {
        apex: pa,
        deviation: (pa[0] - e[0]).hypot(pa[1] - e[1]),
        expected,
        midpoint: pc,
        b,
        a_from_b: [2.0 * b[0] - pc[0], 2.0 * b[1] - pc[1]],
    })
}

/// `max / min` of a nonempty sample.
fn spread(xs: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| {
        (l.min(x), h.max(x))
    });
    hi / lo
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NearMissReport {
    pub variant: Variant,
    pub apex_height: f64,
    /// `|OA|^2 = 1 + phi^10`, exactly.
    pub oa_sq_exact: GoldenNumber,
    pub oa_float: f64,
    pub oc: f64,
    /// `|OA| / |OC| = sqrt(1 + phi^10)`.
    pub ratio: f64,
    pub gap_percent: f64,
    /// `max / min` vertex norm over the degree-3 vertices.
    pub v1_radius_spread: f64,
    /// `max / min` vertex norm over the degree-4 and degree-5 vertices.
    pub v2_radius_spread: f64,
    pub edge_length_spread: f64,
    pub edge_tangent: bool,
    /// `None` would mean bipartite.
    pub failure: Option<Reason>,
    pub failure_detail: Option<String>,
}

pub fn near_miss_report(variant: Variant) -> Result<NearMissReport> {
    let q = construct_q(variant)?;
    let tol = Tolerance::default();
    let graph = EdgeGraph::new(q.vertex_count(), &q.edges);
    let norms = |deg: &[usize]| {
        spread(
            (0..q.vertex_count())
                .filter(|&i| deg.contains(&graph.degree(i)))
                .map(|i| q.vertices[i].norm()),
        )
    };
    let oa_sq_exact = near_miss_identity();
    let oa_float = oa_sq_exact.to_f64().sqrt();
    let failure = analyze_bipartite(&q, &tol).err();
    Ok(NearMissReport {
        variant,
        apex_height: apex_height(variant)?,
        oa_float,
        oc: 1.0,
        ratio: oa_float,
        gap_percent: (oa_float - 1.0) * 100.0,
        oa_sq_exact,
        v1_radius_spread: norms(&[3]),
        v2_radius_spread: norms(&[4, 5]),
        edge_length_spread: spread(q.edges.iter().map(|&e| q.edge_length(e))),
        edge_tangent: edge_tangency(&q, &tol).is_some(),
        failure: failure.as_ref().map(|f| f.reason),
        failure_detail: failure.map(|f| f.detail),
    })
}

impl fmt::Display for NearMissReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variant: {}", self.variant)?;
        writeln!(
            f,
            "|OA|^2 = (4φ-3)^2 + (3φ-1)^2 = {} = 1 + φ^10",
            self.oa_sq_exact
        )?;
        writeln!(f, "|OA| = {:.8}, |OC| = {}", self.oa_float, self.oc)?;
        writeln!(
            f,
            "ratio = {:.8}, gap = {:.4}%",
            self.ratio, self.gap_percent
        )?;
        writeln!(f, "apex height = {:.10}", self.apex_height)?;
        writeln!(f, "edge length max/min = {:.10}", self.edge_length_spread)?;
        writeln!(f, "V1 radius max/min = {:.10}", self.v1_radius_spread)?;
        writeln!(f, "V2 radius max/min = {:.10}", self.v2_radius_spread)?;
        writeln!(f, "edge tangent: {}", self.edge_tangent)?;
        match (&self.failure, &self.failure_detail) {
            (Some(r), Some(d)) => write!(f, "NOT bipartite ({r}: {d})"),
            _ => write!(f, "bipartite"),
        }
    }
}

/// Checks the local structure forced on the final candidate: 1-vertices of
/// type `(4,4,6)`, 2-vertices of type `(4,6,4,6)` (alternating) or `(4^5)`,
/// no `(6,6)` edge. Faces are recomputed from the vertices, so a
/// non-planar 4-gon fails.
pub fn verify_local_types(q: &Polytope) -> bool {
    let tol = Tolerance::default();
    let Ok(hull) = faces_3d(q, &tol) else {
        return false;
    };
    let mut cycles: Vec<Vec<usize>> = hull.into_iter().map(|f| f.vertices).collect();
    if let Some(stored) = &q.faces {
        let sorted = |fs: &[Vec<usize>]| {
            let mut v: Vec<Vec<usize>> = fs
                .iter()
                .map(|f| {
                    let mut g = f.clone();
                    g.sort_unstable();
                    g
                })
                .collect();
            v.sort();
            v
        };
        if sorted(stored) != sorted(&cycles) {
            return false;
        }
    }
    cycles.sort();
    let with_faces = Polytope {
        faces: Some(cycles),
        ..q.clone()
    };
    let Ok(types) = vertex_types(&with_faces, &tol) else {
        return false;
    };
    let Some(colors) = EdgeGraph::new(q.vertex_count(), &q.edges).two_coloring() else {
        return false;
    };
    let t446 = TypeSignature::new(vec![4, 4, 6]);
    let t4646 = TypeSignature::from_cycle(vec![4, 6, 4, 6]);
    let t4x5 = TypeSignature::new(vec![4; 5]);
    let ok_1 = |t: &TypeSignature| t.same_multiset(&t446);
    let ok_2 = |t: &TypeSignature| (t.cyclic == t4646.cyclic) || t.same_multiset(&t4x5);
    let fits = |one: u8| {
        (0..q.vertex_count()).all(|v| {
            let t = &types.vertices[v];
            if colors[v] == one {
                ok_1(t)
            } else {
                ok_2(t)
            }
        })
    };
    let no_66 = q.edges.iter().all(|&e| types.edge_type(e) != Some((6, 6)));
    no_66 && (fits(0) || fits(1))
}

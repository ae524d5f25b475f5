//! Constructors for the polytope families: bipartite polygons, cubes and
//! hyperprisms, reflection-group permutahedra, and the rhombic isohedra.

mod reflection;

use std::collections::HashMap;
use std::f64::consts::PI;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polytope::{derive_edges, faces_3d, Point, Polytope, PolytopeError};
use crate::scalar::{Tolerance, PHI};

pub use reflection::{GroupDescriptor, Irreducible, GROUP_CAP};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown reflection group {0:?}")]
    UnknownGroup(String),
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("seed is not generic: orbit has {orbit} points, group order is {order}")]
    NonGenericSeed { orbit: usize, order: usize },
    #[error("unknown polytope name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("near-miss construction failed: {0}")]
    NearMiss(Box<crate::near_miss::NearMissError>),
}

pub type Result<T> = std::result::Result<T, CatalogError>;

fn invalid(msg: impl Into<String>) -> CatalogError {
    CatalogError::InvalidParameter(msg.into())
}

/// 3D faces from the hull, stored as vertex cycles.
fn with_hull_faces(mut p: Polytope) -> Result<Polytope> {
    let faces = faces_3d(&p, &Tolerance::default())?;
    p.faces = Some(faces.into_iter().map(|f| f.vertices).collect());
    Ok(p)
}

/// Pairs of vertices at distance `len` (relative tolerance 1e-9).
fn pairs_at_distance(vertices: &[Point], len: f64) -> Vec<[usize; 2]> {
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if (vertices[i].dist(&vertices[j]) - len).abs() <= 1e-9 * len.max(1.0) {
                edges.push([i, j]);
            }
        }
    }
    edges
}

/// Merges points closer than 1e-9 (keeping first occurrences).
fn dedup_points(points: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for p in points {
        let key: Vec<i64> = p.iter().map(|x| (x * 1e6).round() as i64).collect();
        // Neighbouring buckets guard against rounding at a cell boundary.
        let dup = neighbour_keys(&key)
            .iter()
            .filter_map(|k| buckets.get(k))
            .flatten()
            .any(|&i| out[i].dist(&p) < 1e-9);
        if !dup {
            buckets.entry(key).or_default().push(out.len());
            out.push(p);
        }
    }
    out
}

fn neighbour_keys(key: &[i64]) -> Vec<Vec<i64>> {
    key.iter()
        .map(|&k| k - 1..=k + 1)
        .multi_cartesian_product()
        .collect()
}

/// The `2k`-gon with vertex `i` at angle `i pi / k`, radius `r1` for even
/// `i` and `r2` for odd `i`.
pub fn bipartite_polygon(r1: f64, r2: f64, k: usize) -> Result<Polytope> {
    if k < 2 {
        return Err(invalid(format!("k = {k} < 2")));
    }
    if !(r1 > 0.0 && r1 <= r2 && r2.is_finite()) {
        return Err(invalid(format!(
            "need 0 < r1 <= r2, got r1 = {r1}, r2 = {r2}"
        )));
    }
    let step = PI / k as f64;
    // A 1-vertex must lie beyond the chord through its two neighbours.
    if r1 <= r2 * step.cos() * (1.0 + 1e-12) {
        return Err(invalid(format!(
            "polygon is not convex: r1 = {r1} <= r2 cos(pi/{k})"
        )));
    }
    let n = 2 * k;
    let vertices = (0..n)
        .map(|i| {
            let r = if i % 2 == 0 { r1 } else { r2 };
            let t = step * i as f64;
            Point(vec![r * t.cos(), r * t.sin()])
        })
        .collect();
    let edges = (0..n).map(|i| [i, (i + 1) % n]).collect();
    let p = Polytope::new(
        2,
        vertices,
        edges,
        Some(vec![(0..n).collect()]),
        format!("bipartite_polygon(r1={r1}, r2={r2}, k={k})"),
    )?;
    Ok(p)
}

/// Regular `2k`-gon with unit edges.
pub fn regular_polygon(k: usize) -> Result<Polytope> {
    let r = 1.0 / (2.0 * (PI / (2 * k) as f64).sin());
    let mut p = bipartite_polygon(r, r, k)?;
    p.provenance = format!("regular {}-gon", 2 * k);
    Ok(p)
}

/// Cube `{-h, h}^d`; vertex `m` has `+h` in coordinate `b` iff bit `b` of
/// `m` is set.
pub fn cube(d: usize, half_edge: f64) -> Result<Polytope> {
    if d == 0 || d > 16 {
        return Err(invalid(format!("cube dimension {d} outside 1..=16")));
    }
    if !(half_edge > 0.0 && half_edge.is_finite()) {
        return Err(invalid(format!("half edge {half_edge} must be positive")));
    }
    let n = 1usize << d;
    let vertices = (0..n)
        .map(|m| {
            Point(
                (0..d)
                    .map(|b| {
                        if m >> b & 1 == 1 {
                            half_edge
                        } else {
                            -half_edge
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    for m in 0..n {
        for a in 0..d {
            if m >> a & 1 == 0 {
                edges.push([m, m | 1 << a]);
                for b in a + 1..d {
                    if m >> b & 1 == 0 {
                        faces.push(vec![m, m | 1 << a, m | 1 << a | 1 << b, m | 1 << b]);
                    }
                }
            }
        }
    }
    let faces = (d >= 2).then_some(faces);
    Ok(Polytope::new(
        d,
        vertices,
        edges,
        faces,
        format!("cube(d={d}, half_edge={half_edge})"),
    )?)
}

/// A single point in `R^0`, the unit for [`cartesian_product`].
pub fn point() -> Polytope {
    Polytope::new(0, vec![Point(vec![])], vec![], None, "point").expect("valid point")
}

/// `P x Q` with vertex `(i, j)` at index `i * |Q| + j`.
///
/// 2-faces are edge x edge squares together with 2-face x vertex and
/// vertex x 2-face copies. If an operand of dimension >= 2 has no stored
/// faces the product has none either.
pub fn cartesian_product(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    let nq = q.vertex_count();
    let id = |i: usize, j: usize| i * nq + j;
    let vertices = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| a.concat(b)))
        .collect();
    let mut edges = Vec::new();
    for &[a, b] in &p.edges {
        for j in 0..nq {
            edges.push([id(a, j), id(b, j)]);
        }
    }
    for i in 0..p.vertex_count() {
        for &[c, d] in &q.edges {
            edges.push([id(i, c), id(i, d)]);
        }
    }
    let faces_known = |x: &Polytope| x.dim < 2 || x.faces.is_some();
    let faces = if faces_known(p) && faces_known(q) {
        let mut faces = Vec::new();
        for f in p.faces.iter().flatten() {
            for j in 0..nq {
                faces.push(f.iter().map(|&i| id(i, j)).collect());
            }
        }
        for i in 0..p.vertex_count() {
            for f in q.faces.iter().flatten() {
                faces.push(f.iter().map(|&j| id(i, j)).collect());
            }
        }
        for &[a, b] in &p.edges {
            for &[c, d] in &q.edges {
                faces.push(vec![id(a, c), id(b, c), id(b, d), id(a, d)]);
            }
        }
        (p.dim + q.dim >= 2).then_some(faces)
    } else {
        None
    };
    Ok(Polytope::new(
        p.dim + q.dim,
        vertices,
        edges,
        faces,
        format!("({}) x ({})", p.provenance, q.provenance),
    )?)
}

/// `folds`-fold product of the regular `2k`-gon with unit edges.
pub fn hyperprism(k: usize, folds: usize) -> Result<Polytope> {
    if folds == 0 {
        return Err(invalid("folds must be at least 1"));
    }
    let gon = regular_polygon(k)?;
    let mut p = gon.clone();
    for _ in 1..folds {
        p = cartesian_product(&p, &gon)?;
    }
    p.provenance = format!("hyperprism(k={k}, folds={folds})");
    Ok(p)
}

/// Convex hull of the orbit of `seed` under the reflection group.
///
/// Edges come from the adjacency oracle; 2-faces from the hull in
/// dimension 3 or as the polygon itself in dimension 2.
pub fn permutahedron(g: &GroupDescriptor, seed: &Point) -> Result<Polytope> {
    if seed.dim() != g.rank {
        return Err(invalid(format!(
            "seed has dimension {}, group has rank {}",
            seed.dim(),
            g.rank
        )));
    }
    let elements = g.elements()?;
    let x = DVector::from_column_slice(seed);
    let orbit: Vec<Point> = elements
        .iter()
        .map(|m| Point((m * &x).iter().copied().collect()))
        .collect();
    let vertices = dedup_points(orbit);
    if vertices.len() != elements.len() {
        return Err(CatalogError::NonGenericSeed {
            orbit: vertices.len(),
            order: elements.len(),
        });
    }
    let provenance = format!("permutahedron({}, seed={:?})", g.name, seed.coords());
    let mut p = Polytope::new(g.rank, vertices, vec![], None, provenance)?;
    if g.rank == 2 {
        // Sort the polygon by angle to get its boundary cycle.
        let mut order: Vec<usize> = (0..p.vertex_count()).collect();
        order.sort_by(|&a, &b| {
            let t = |i: usize| p.vertices[i][1].atan2(p.vertices[i][0]);
            t(a).total_cmp(&t(b))
        });
        let n = order.len();
        p.edges = (0..n).map(|i| [order[i], order[(i + 1) % n]]).collect();
        p = Polytope::new(2, p.vertices, p.edges, Some(vec![order]), p.provenance)?;
        return Ok(p);
    }
    p.edges = derive_edges(&p)?;
    if g.rank == 3 {
        p = with_hull_faces(p)?;
    }
    Ok(p)
}

/// Permutahedron with the seed equidistant from all mirrors (unit edges,
/// inscribed).
pub fn default_permutahedron(g: &GroupDescriptor) -> Result<Polytope> {
    permutahedron(g, &g.default_seed())
}

/// Cube `{-1,1}^3` stretched by `stretch` along the diagonal `(1,1,1)`.
pub fn rhombic_hexahedron(stretch: f64) -> Result<Polytope> {
    if !(stretch > 0.0 && stretch.is_finite()) {
        return Err(invalid(format!("stretch {stretch} must be positive")));
    }
    let n = Vector3::new(1.0, 1.0, 1.0).normalize();
    let m = Matrix3::identity() + (stretch - 1.0) * n * n.transpose();
    let c = cube(3, 1.0)?;
    let mut p = c.transformed(&DMatrix::from_column_slice(3, 3, m.as_slice()));
    p.provenance = format!("rhombic_hexahedron(stretch={stretch})");
    Ok(p)
}

/// `(+-1,+-1,+-1)` together with the permutations of `(+-2,0,0)`.
pub fn rhombic_dodecahedron() -> Result<Polytope> {
    let mut vertices = cube(3, 1.0)?.vertices;
    for axis in 0..3 {
        for s in [-2.0, 2.0] {
            let mut v = vec![0.0; 3];
            v[axis] = s;
            vertices.push(Point(v));
        }
    }
    let edges = pairs_at_distance(&vertices, 3f64.sqrt());
    with_hull_faces(Polytope::new(
        3,
        vertices,
        edges,
        None,
        "rhombic dodecahedron",
    )?)
}

/// Unit vectors along the six 5-fold axes of the icosahedron
/// `(0, +-phi, 1)` and cyclic permutations.
pub fn icosahedral_axes() -> [Vector3<f64>; 6] {
    [
        Vector3::new(0.0, PHI, 1.0),
        Vector3::new(0.0, -PHI, 1.0),
        Vector3::new(1.0, 0.0, PHI),
        Vector3::new(1.0, 0.0, -PHI),
        Vector3::new(PHI, 1.0, 0.0),
        Vector3::new(-PHI, 1.0, 0.0),
    ]
    .map(|v| v.normalize())
}

/// Minkowski sum of the unit segments `[-g/2, g/2]`. Generators must be in
/// general position (no three coplanar), so every face is a parallelogram
/// and two vertices are adjacent iff they differ in one generator sign.
pub fn zonohedron(generators: &[Vector3<f64>], provenance: &str) -> Result<Polytope> {
    let n = generators.len();
    if !(3..=16).contains(&n) {
        return Err(invalid(format!("{n} generators outside 3..=16")));
    }
    let mut signs = Vec::new();
    let mut candidates = Vec::new();
    for mask in 0u32..1 << n {
        let v: Vector3<f64> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { generators[i] } else { -generators[i] } * 0.5)
            .sum();
        signs.push(mask);
        candidates.push(Point(vec![v.x, v.y, v.z]));
    }
    let mut keep = Vec::new();
    for i in 0..candidates.len() {
        let others: Vec<&Point> = candidates
            .iter()
            .enumerate()
            .filter_map(|(j, p)| (j != i).then_some(p))
            .collect();
        if !in_hull(&candidates[i], &others)? {
            keep.push(i);
        }
    }
    let vertices: Vec<Point> = keep.iter().map(|&i| candidates[i].clone()).collect();
    let mut edges = Vec::new();
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate().skip(a + 1) {
            if (signs[i] ^ signs[j]).count_ones() == 1 {
                edges.push([a, b]);
            }
        }
    }
    with_hull_faces(Polytope::new(3, vertices, edges, None, provenance)?)
}

/// Whether `x` is a convex combination of `points`.
fn in_hull(x: &Point, points: &[&Point]) -> Result<bool> {
    let mut a: Vec<Vec<f64>> = (0..x.dim())
        .map(|c| points.iter().map(|v| v[c]).collect())
        .collect();
    a.push(vec![1.0; points.len()]);
    let mut b = x.coords().to_vec();
    b.push(1.0);
    Ok(crate::lp::is_feasible(&a, &b).map_err(PolytopeError::from)?)
}

pub fn rhombic_triacontahedron() -> Result<Polytope> {
    zonohedron(&icosahedral_axes(), "rhombic triacontahedron")
}

pub fn rhombic_icosahedron() -> Result<Polytope> {
    zonohedron(&icosahedral_axes()[..5], "rhombic icosahedron")
}

pub fn bilinski_dodecahedron() -> Result<Polytope> {
    zonohedron(&icosahedral_axes()[..4], "Bilinski dodecahedron")
}

/// Regular icosahedron on the cyclic permutations of `(0, +-phi, +-1)`,
/// edge length `2 phi`.
pub fn icosahedron_from_cube() -> Result<Polytope> {
    let mut vertices = Vec::new();
    for shift in 0..3 {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                let base = [0.0, sy * PHI, sz];
                let mut v = vec![0.0; 3];
                for (c, x) in base.iter().enumerate() {
                    v[(c + shift) % 3] = *x;
                }
                vertices.push(Point(v));
            }
        }
    }
    let edges = pairs_at_distance(&vertices, 2.0 * PHI);
    with_hull_faces(Polytope::new(3, vertices, edges, None, "icosahedron")?)
}

/// Parameters accepted by [`named`]; unused fields are ignored.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Params {
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub half_edge: Option<f64>,
    pub folds: Option<usize>,
    pub group: Option<String>,
    pub seed: Option<Vec<f64>>,
    pub stretch: Option<f64>,
}

/// Names accepted by [`named`].
pub const NAMES: &[&str] = &[
    "bipartite-polygon",
    "regular-polygon",
    "cube",
    "hyperprism",
    "permutahedron",
    "rhombic-hexahedron",
    "rhombic-dodecahedron",
    "rhombic-triacontahedron",
    "bilinski-dodecahedron",
    "rhombic-icosahedron",
    "icosahedron",
    "near-miss",
    "near-miss-tangent",
];

/// Constructor registry used by the command line.
pub fn named(name: &str, params: &Params) -> Result<Polytope> {
    let need = |v: Option<f64>, what: &str| v.ok_or_else(|| invalid(format!("missing --{what}")));
    let need_int =
        |v: Option<usize>, what: &str| v.ok_or_else(|| invalid(format!("missing --{what}")));
    match name {
        "bipartite-polygon" => bipartite_polygon(
            need(params.r1, "r1")?,
            need(params.r2, "r2")?,
            need_int(params.k, "k")?,
        ),
        "regular-polygon" => regular_polygon(need_int(params.k, "k")?),
        "cube" => cube(params.d.unwrap_or(3), params.half_edge.unwrap_or(1.0)),
        "hyperprism" => hyperprism(need_int(params.k, "k")?, params.folds.unwrap_or(2)),
        "permutahedron" => {
            let g: GroupDescriptor = params
                .group
                .as_deref()
                .ok_or_else(|| invalid("missing --group"))?
                .parse()?;
            match &params.seed {
                Some(s) => permutahedron(&g, &Point(s.clone())),
                None => default_permutahedron(&g),
            }
        }
        "rhombic-hexahedron" => rhombic_hexahedron(params.stretch.unwrap_or(2.0)),
        "rhombic-dodecahedron" => rhombic_dodecahedron(),
        "rhombic-triacontahedron" => rhombic_triacontahedron(),
        "bilinski-dodecahedron" => bilinski_dodecahedron(),
        "rhombic-icosahedron" => rhombic_icosahedron(),
        "icosahedron" => icosahedron_from_cube(),
        "near-miss" | "near-miss-tangent" => {
            use crate::near_miss::{construct_q, Variant};
            let v = if name == "near-miss" {
                Variant::Equilateral
            } else {
                Variant::Tangent
            };
            construct_q(v).map_err(|e| CatalogError::NearMiss(Box::new(e)))
        }
        other => Err(CatalogError::UnknownName(other.to_string())),
    }
}

/// Non-regular bipartite `2k`-gon with `r1 = 1` and `r2` halfway to the
/// convexity limit `sec(pi/2k)`.
pub fn sample_bipartite_polygon(k: usize) -> Result<Polytope> {
    let limit = 1.0 / (PI / (2 * k) as f64).cos();
    bipartite_polygon(1.0, 1.0 + (limit - 1.0) / 2.0, k)
}

/// The fixed list of instances used for cross-checks: every constructor
/// with representative parameters.
pub fn instances() -> Result<Vec<(String, Polytope)>> {
    let mut out = Vec::new();
    for k in 2..=6 {
        out.push((
            format!("bipartite {}-gon", 2 * k),
            sample_bipartite_polygon(k)?,
        ));
        out.push((format!("regular {}-gon", 2 * k), regular_polygon(k)?));
    }
    out.push(("3-cube".into(), cube(3, 1.0)?));
    out.push(("4-cube".into(), cube(4, 1.0)?));
    out.push(("(6,6)-duoprism".into(), hyperprism(3, 2)?));
    out.push(("(8,8)-duoprism".into(), hyperprism(4, 2)?));
    for g in [
        "A3", "B3", "H3", "I1+I2(3)", "I1+I2(4)", "I1+I2(5)", "I1+I1+I1",
    ] {
        let desc: GroupDescriptor = g.parse()?;
        out.push((format!("{g}-permutahedron"), default_permutahedron(&desc)?));
    }
    out.push(("rhombic hexahedron".into(), rhombic_hexahedron(2.0)?));
    out.push(("rhombic dodecahedron".into(), rhombic_dodecahedron()?));
    out.push(("rhombic triacontahedron".into(), rhombic_triacontahedron()?));
    out.push(("Bilinski dodecahedron".into(), bilinski_dodecahedron()?));
    out.push(("rhombic icosahedron".into(), rhombic_icosahedron()?));
    out.push(("icosahedron".into(), icosahedron_from_cube()?));
    let params = Params::default();
    out.push((
        "near-miss (equilateral)".into(),
        named("near-miss", &params)?,
    ));
    out.push((
        "near-miss (tangent)".into(),
        named("near-miss-tangent", &params)?,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_examples() {
        let hex = bipartite_polygon(1.0, 1.0, 3).unwrap();
        assert_eq!(hex.vertex_count(), 6);
        for &e in &hex.edges {
            assert!((hex.edge_length(e) - 1.0).abs() < 1e-12);
        }
        let rh = bipartite_polygon(1.0, 2.0, 2).unwrap();
        for &e in &rh.edges {
            assert!((rh.edge_length(e) - 5f64.sqrt()).abs() < 1e-12);
        }
        assert!(bipartite_polygon(1.0, 3.0, 3).is_err());
        assert!(bipartite_polygon(2.0, 1.0, 3).is_err());
        assert!(bipartite_polygon(1.0, 1.0, 1).is_err());
    }

    #[test]
    fn cube_counts() {
        let c3 = cube(3, 1.0).unwrap();
        assert_eq!(
            (c3.vertex_count(), c3.edge_count(), c3.face_count()),
            (8, 12, Some(6))
        );
        let c4 = cube(4, 1.0).unwrap();
        assert_eq!(
            (c4.vertex_count(), c4.edge_count(), c4.face_count()),
            (16, 32, Some(24))
        );
        let c1 = cube(1, 1.0).unwrap();
        assert_eq!((c1.edge_count(), c1.face_count()), (1, None));
    }

    #[test]
    fn product_counts() {
        let hex = regular_polygon(3).unwrap();
        let duo = cartesian_product(&hex, &hex).unwrap();
        assert_eq!((duo.vertex_count(), duo.edge_count()), (36, 72));
        // 36 edge x edge squares and 12 hexagon copies.
        assert_eq!(duo.face_count(), Some(48));
        let same = cartesian_product(&hex, &point()).unwrap();
        assert_eq!(same.vertices, hex.vertices);
        assert_eq!(same.edges, hex.edges);
        assert_eq!(same.faces, hex.faces);
    }

    #[test]
    fn permutahedron_orders() {
        let a3 = default_permutahedron(&"A3".parse().unwrap()).unwrap();
        assert_eq!(
            (a3.vertex_count(), a3.edge_count(), a3.face_count()),
            (24, 36, Some(14))
        );
        let prism = default_permutahedron(&"I1+I2(3)".parse().unwrap()).unwrap();
        assert_eq!((prism.vertex_count(), prism.edge_count()), (12, 18));
        let bad = permutahedron(&"A3".parse().unwrap(), &Point(vec![0.0, 0.0, 1.0]));
        assert!(matches!(bad, Err(CatalogError::NonGenericSeed { .. })));
    }

    #[test]
    fn rhombic_solids_counts() {
        let rd = rhombic_dodecahedron().unwrap();
        assert_eq!(
            (rd.vertex_count(), rd.edge_count(), rd.face_count()),
            (14, 24, Some(12))
        );
        let rt = rhombic_triacontahedron().unwrap();
        assert_eq!(
            (rt.vertex_count(), rt.edge_count(), rt.face_count()),
            (32, 60, Some(30))
        );
        let ri = rhombic_icosahedron().unwrap();
        assert_eq!(
            (ri.vertex_count(), ri.edge_count(), ri.face_count()),
            (22, 40, Some(20))
        );
        let bd = bilinski_dodecahedron().unwrap();
        assert_eq!(
            (bd.vertex_count(), bd.edge_count(), bd.face_count()),
            (14, 24, Some(12))
        );
    }

    #[test]
    fn icosahedron_edges() {
        let ico = icosahedron_from_cube().unwrap();
        assert_eq!(
            (ico.vertex_count(), ico.edge_count(), ico.face_count()),
            (12, 30, Some(20))
        );
        // (0, -phi, 1) and (0, phi, 1)
        let mid = ico.vertices[1].add(&ico.vertices[3]).scale(0.5);
        assert!(ico.has_edge(1, 3));
        assert_eq!(mid, Point(vec![0.0, 0.0, 1.0]));
        assert!((mid.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn registry_rejects_unknown() {
        assert!(matches!(
            named("dodecahedron", &Params::default()),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(named("bipartite-polygon", &Params::default()).is_err());
    }
}

//! Bipartiteness of polytopes and the metric data that comes with it: radii,
//! edge in-sphere, per-face-type planar and spherical angles, and vertex
//! types.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polytope::{
    contains_origin_interior, faces_3d, faces_around, Point, Polytope, PolytopeError,
};
use crate::scalar::Tolerance;

#[derive(Debug, Error)]
pub enum BipartiteError {
    #[error("foot of the perpendicular lies outside the edge (l1 = {ell1}, l2 = {ell2})")]
    Obtuse { ell1: f64, ell2: f64 },
    #[error("no triangle with sides r1 = {r1}, r2 = {r2}, l = {ell}")]
    NoTriangle { r1: f64, r2: f64, ell: f64 },
    #[error("faces of type {face_type} have inconsistent {quantity}: {min} vs {max}")]
    InconsistentAngles {
        face_type: usize,
        quantity: &'static str,
        min: f64,
        max: f64,
    },
    #[error("origin is not in the interior")]
    OriginNotInterior,
    #[error("2-faces are not available for a {0}-polytope without stored faces")]
    MissingFaces(usize),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

pub type Result<T> = std::result::Result<T, BipartiteError>;

/// Why a polytope is not bipartite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reason {
    UnequalEdges,
    OddCycle,
    RadiusSpread,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::UnequalEdges => "UNEQUAL_EDGES",
            Reason::OddCycle => "ODD_CYCLE",
            Reason::RadiusSpread => "RADIUS_SPREAD",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NotBipartite {
    pub reason: Reason,
    pub detail: String,
}

impl fmt::Display for NotBipartite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.reason, self.detail)
    }
}

/// Radii, edge length, and edge in-sphere radius; `ell1`/`ell2` are the
/// distances from the tangency point to the 1-/2-vertex of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BipartiteParameters {
    pub r1: f64,
    pub r2: f64,
    pub ell: f64,
    pub rho: f64,
    pub ell1: f64,
    pub ell2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BipartiteReport {
    /// `classes[0]` is V1 (smaller radius), `classes[1]` is V2.
    pub classes: [Vec<usize>; 2],
    pub params: BipartiteParameters,
    pub strict: bool,
}

impl BipartiteReport {
    /// 0 for a 1-vertex, 1 for a 2-vertex.
    pub fn class_of(&self, v: usize) -> usize {
        usize::from(self.classes[0].binary_search(&v).is_err())
    }
}

/// The edge in-sphere data of a triangle `(0, v1, v2)` with `|v1| = r1`,
/// `|v2| = r2`, `|v1 - v2| = ell`.
pub fn insphere_from_three(r1: f64, r2: f64, ell: f64) -> Result<BipartiteParameters> {
    if !(r1 > 0.0 && r2 > 0.0 && ell > 0.0) || ell >= r1 + r2 || ell <= (r1 - r2).abs() {
        return Err(BipartiteError::NoTriangle { r1, r2, ell });
    }
    let ell1 = (r1 * r1 - r2 * r2 + ell * ell) / (2.0 * ell);
    let ell2 = ell - ell1;
    if ell1 <= 0.0 || ell2 <= 0.0 {
        return Err(BipartiteError::Obtuse { ell1, ell2 });
    }
    let rho = (r1 * r1 - ell1 * ell1).sqrt();
    Ok(BipartiteParameters {
        r1,
        r2,
        ell,
        rho,
        ell1,
        ell2,
    })
}

fn spread(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    values
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x), hi.max(x))
        })
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Checks equal edge lengths, a 2-colorable edge graph, and constant vertex
/// norm on each color class, in that order. The origin is taken as given.
pub fn analyze_bipartite(
    p: &Polytope,
    tol: &Tolerance,
) -> std::result::Result<BipartiteReport, NotBipartite> {
    let lengths: Vec<f64> = p.edges.iter().map(|&e| p.edge_length(e)).collect();
    if lengths.is_empty() {
        return Err(NotBipartite {
            reason: Reason::UnequalEdges,
            detail: "polytope has no edges".into(),
        });
    }
    let (lo, hi) = spread(lengths.iter().copied());
    if !tol.close(lo, hi) {
        return Err(NotBipartite {
            reason: Reason::UnequalEdges,
            detail: format!("edge lengths range over [{lo}, {hi}]"),
        });
    }
    let Some(colors) = p.graph().two_coloring() else {
        return Err(NotBipartite {
            reason: Reason::OddCycle,
            detail: "edge graph contains an odd cycle".into(),
        });
    };
    let mut classes: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (v, &c) in colors.iter().enumerate() {
        classes[c as usize].push(v);
    }
    let mut radii = [0.0; 2];
    for c in 0..2 {
        let norms: Vec<f64> = classes[c].iter().map(|&v| p.vertices[v].norm()).collect();
        let (lo, hi) = spread(norms.iter().copied());
        if !tol.close(lo, hi) {
            return Err(NotBipartite {
                reason: Reason::RadiusSpread,
                detail: format!(
                    "class conflict: vertex norms in one color class range over [{lo}, {hi}]"
                ),
            });
        }
        radii[c] = mean(&norms);
    }
    let strict = !tol.close(radii[0], radii[1]);
    if strict && radii[1] < radii[0] {
        classes.swap(0, 1);
        radii.swap(0, 1);
    }
    let ell = mean(&lengths);
    let params = insphere_from_three(radii[0], radii[1], ell).unwrap_or(BipartiteParameters {
        r1: radii[0],
        r2: radii[1],
        ell,
        rho: f64::NAN,
        ell1: f64::NAN,
        ell2: f64::NAN,
    });
    Ok(BipartiteReport {
        classes,
        params,
        strict,
    })
}

/// Common distance from the origin to all edges, if every edge is touched
/// at a point strictly inside it and these distances agree.
pub fn edge_tangency(p: &Polytope, tol: &Tolerance) -> Option<f64> {
    let mut dists = Vec::with_capacity(p.edges.len());
    for &[i, j] in &p.edges {
        let (a, b) = (&p.vertices[i], &p.vertices[j]);
        let d = b.sub(a);
        let t = -a.dot(&d) / d.dot(&d);
        if t <= tol.abs_eps || t >= 1.0 - tol.abs_eps {
            return None;
        }
        dists.push(a.add(&d.scale(t)).norm());
    }
    let (lo, hi) = spread(dists.iter().copied());
    (!dists.is_empty() && tol.close(lo, hi)).then(|| mean(&dists))
}

/// Whether the sphere of radius `rho` from the report touches every edge in
/// its relative interior.
pub fn verify_edge_tangency(p: &Polytope, report: &BipartiteReport, tol: &Tolerance) -> bool {
    edge_tangency(p, tol).is_some_and(|rho| tol.close(rho, report.params.rho))
}

/// Stored 2-faces, or hull faces for a 3-polytope.
pub fn face_cycles(p: &Polytope, tol: &Tolerance) -> Result<Vec<Vec<usize>>> {
    if let Some(f) = &p.faces {
        return Ok(f.clone());
    }
    if p.dim == 3 {
        return Ok(faces_3d(p, tol)?.into_iter().map(|f| f.vertices).collect());
    }
    Err(BipartiteError::MissingFaces(p.dim))
}

/// Angles of all faces with `2k` vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceTypeAngles {
    pub face_size: usize,
    pub count: usize,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    pub alpha_reg: f64,
    pub height: f64,
    pub rho1: f64,
    pub rho2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleTable {
    /// Arc length of an edge after central projection to the unit sphere.
    pub ell_s: f64,
    /// Keyed by face size `2k`.
    pub types: BTreeMap<usize, FaceTypeAngles>,
}

/// Angle at `v` between the directions to `a` and `b`.
fn angle_at(v: &Point, a: &Point, b: &Point) -> f64 {
    let (x, y) = (a.sub(v), b.sub(v));
    (x.dot(&y) / (x.norm() * y.norm())).clamp(-1.0, 1.0).acos()
}

/// Spherical angle from planar angle `alpha` at a vertex whose neighbours
/// have norm `r_other`.
pub fn spherical_from_planar(alpha: f64, ell: f64, r_other: f64, ell_s: f64) -> f64 {
    let chi = (ell / r_other).powi(2) * (1.0 - alpha.cos()) / ell_s.sin().powi(2);
    (1.0 - chi).clamp(-1.0, 1.0).acos()
}

/// Orthogonal projection of the origin onto the affine hull of a face.
fn foot_of_origin(pts: &[&Point]) -> Point {
    // Gram-Schmidt on the edge directions from the first vertex.
    let base = pts[0];
    let mut basis: Vec<Point> = Vec::new();
    for q in &pts[1..] {
        let mut d = q.sub(base);
        for b in &basis {
            d = d.sub(&b.scale(d.dot(b)));
        }
        let n = d.norm();
        if n > 1e-9 * base.norm().max(1.0) {
            basis.push(d.scale(1.0 / n));
        }
    }
    let mut foot = base.clone();
    for b in &basis {
        foot = foot.sub(&b.scale(base.dot(b)));
    }
    foot
}

/// Per-face-type angle table. Faces of equal size must agree in all angles,
/// heights, and in-face radii within `tol`.
pub fn angle_table(p: &Polytope, report: &BipartiteReport, tol: &Tolerance) -> Result<AngleTable> {
    let faces = face_cycles(p, tol)?;
    let BipartiteParameters { r1, r2, ell, .. } = report.params;
    let ell_s = ((r1 * r1 + r2 * r2 - ell * ell) / (2.0 * r1 * r2))
        .clamp(-1.0, 1.0)
        .acos();

    // (alpha1, alpha2, height, rho1, rho2) samples per face size.
    let mut samples: BTreeMap<usize, [Vec<f64>; 5]> = BTreeMap::new();
    for f in &faces {
        let n = f.len();
        let pts: Vec<&Point> = f.iter().map(|&i| &p.vertices[i]).collect();
        let foot = foot_of_origin(&pts);
        let entry = samples.entry(n).or_default();
        for k in 0..n {
            let v = pts[k];
            let alpha = angle_at(v, pts[(k + n - 1) % n], pts[(k + 1) % n]);
            let c = report.class_of(f[k]);
            entry[c].push(alpha);
            entry[3 + c].push(v.dist(&foot));
        }
        entry[2].push(foot.norm());
    }

    let mut types = BTreeMap::new();
    for (size, s) in samples {
        let names = ["alpha1", "alpha2", "height", "rho1", "rho2"];
        let mut vals = [0.0; 5];
        for q in 0..5 {
            let (lo, hi) = spread(s[q].iter().copied());
            if !s[q].is_empty() && !tol.close(lo, hi) {
                return Err(BipartiteError::InconsistentAngles {
                    face_type: size,
                    quantity: names[q],
                    min: lo,
                    max: hi,
                });
            }
            vals[q] = if s[q].is_empty() {
                f64::NAN
            } else {
                mean(&s[q])
            };
        }
        let [alpha1, alpha2, height, rho1, rho2] = vals;
        let k = size as f64 / 2.0;
        types.insert(
            size,
            FaceTypeAngles {
                face_size: size,
                count: s[2].len(),
                alpha1,
                alpha2,
                beta1: spherical_from_planar(alpha1, ell, r2, ell_s),
                beta2: spherical_from_planar(alpha2, ell, r1, ell_s),
                eps: (alpha1 - alpha2) / (2.0 * PI),
                alpha_reg: (1.0 - 1.0 / k) * PI,
                height,
                rho1,
                rho2,
            },
        );
    }
    Ok(AngleTable { ell_s, types })
}

/// Vertex type: the multiset of incident face sizes, plus the cyclic order
/// around the vertex when known.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeSignature {
    pub entries: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<Vec<usize>>,
}

impl TypeSignature {
    /// Sorted multiset without cyclic information.
    pub fn new(mut entries: Vec<usize>) -> Self {
        entries.sort_unstable();
        Self {
            entries,
            cyclic: None,
        }
    }

    /// From face sizes in cyclic order; the cycle is stored in its
    /// lexicographically smallest rotation or reflection.
    pub fn from_cycle(cycle: Vec<usize>) -> Self {
        let n = cycle.len();
        let mut best = cycle.clone();
        for rev in [false, true] {
            for r in 0..n {
                let cand: Vec<usize> = (0..n)
                    .map(|i| {
                        let j = if rev { (r + n - i) % n } else { (r + i) % n };
                        cycle[j]
                    })
                    .collect();
                if cand < best {
                    best = cand;
                }
            }
        }
        let mut t = Self::new(cycle);
        t.cyclic = Some(best);
        t
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exactly two distinct sizes alternating around the vertex, as in
    /// `(4,6,4,6)`.
    pub fn is_alternating(&self) -> bool {
        let Some(c) = &self.cyclic else {
            return false;
        };
        let n = c.len();
        n >= 4 && n % 2 == 0 && c[0] != c[1] && (0..n).all(|i| c[i] == c[(i + 2) % n])
    }

    /// Same multiset, ignoring cyclic order.
    pub fn same_multiset(&self, other: &TypeSignature) -> bool {
        self.entries == other.entries
    }
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = if self.is_alternating() {
            self.cyclic.as_ref().unwrap()
        } else {
            &self.entries
        };
        let parts: Vec<String> = shown.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexTypes {
    pub vertices: Vec<TypeSignature>,
    /// Sizes of the two faces at each edge, smaller first.
    pub edges: BTreeMap<String, (usize, usize)>,
}

impl VertexTypes {
    /// Number of vertices per displayed type.
    pub fn census(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for t in &self.vertices {
            *m.entry(t.to_string()).or_insert(0) += 1;
        }
        m
    }

    pub fn edge_type(&self, e: [usize; 2]) -> Option<(usize, usize)> {
        self.edges.get(&edge_key(e)).copied()
    }
}

fn edge_key([a, b]: [usize; 2]) -> String {
    format!("{}-{}", a.min(b), a.max(b))
}

/// Vertex and edge types from the 2-faces, with cyclic order around each
/// vertex.
pub fn vertex_types(p: &Polytope, tol: &Tolerance) -> Result<VertexTypes> {
    let faces = face_cycles(p, tol)?;
    let vertices = (0..p.vertex_count())
        .map(|v| {
            let ring = faces_around(&faces, v);
            TypeSignature::from_cycle(ring.iter().map(|&k| faces[k].len()).collect())
        })
        .collect();
    let mut edges = BTreeMap::new();
    for &[a, b] in &p.edges {
        let sizes: Vec<usize> = faces
            .iter()
            .filter(|f| {
                let n = f.len();
                (0..n).any(|i| {
                    let (x, y) = (f[i], f[(i + 1) % n]);
                    (x == a && y == b) || (x == b && y == a)
                })
            })
            .map(Vec::len)
            .collect();
        if sizes.len() == 2 {
            edges.insert(
                edge_key([a, b]),
                (sizes[0].min(sizes[1]), sizes[0].max(sizes[1])),
            );
        }
    }
    Ok(VertexTypes { vertices, edges })
}

/// Outcome of the spherical angle-sum checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalSums {
    /// Largest deviation of a vertex's spherical angle sum from `2 pi`.
    pub max_vertex_deviation: f64,
    /// Face sizes whose spherical polygon fails `k b1 + k b2 > 2 (k - 1) pi`.
    pub excess_failures: Vec<usize>,
    pub ok: bool,
}

/// Spherical angles around each vertex must sum to `2 pi`, and every
/// spherical `2k`-gon must have positive excess. Requires the origin in the
/// interior.
pub fn check_spherical_sums(
    p: &Polytope,
    report: &BipartiteReport,
    table: &AngleTable,
    tol: &Tolerance,
) -> Result<SphericalSums> {
    if p.dim != 3 {
        return Err(PolytopeError::WrongDimension {
            expected: 3,
            got: p.dim,
        }
        .into());
    }
    if !contains_origin_interior(p)? {
        return Err(BipartiteError::OriginNotInterior);
    }
    let faces = face_cycles(p, tol)?;
    let mut sums = vec![0.0; p.vertex_count()];
    for f in &faces {
        let t = &table.types[&f.len()];
        for &v in f {
            sums[v] += if report.class_of(v) == 0 {
                t.beta1
            } else {
                t.beta2
            };
        }
    }
    let max_vertex_deviation = sums
        .iter()
        .map(|s| (s - 2.0 * PI).abs())
        .fold(0.0, f64::max);
    let excess_failures: Vec<usize> = table
        .types
        .values()
        .filter(|t| {
            let k = t.face_size as f64 / 2.0;
            k * t.beta1 + k * t.beta2 <= 2.0 * (k - 1.0) * PI
        })
        .map(|t| t.face_size)
        .collect();
    let ok = max_vertex_deviation <= tol.slack(2.0 * PI, 2.0 * PI) && excess_failures.is_empty();
    Ok(SphericalSums {
        max_vertex_deviation,
        excess_failures,
        ok,
    })
}

/// Combined bipartite dossier for reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dossier {
    pub bipartite: bool,
    pub strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<NotBipartite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<BipartiteParameters>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<[Vec<usize>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_tangent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle_table: Option<AngleTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_types: Option<BTreeMap<String, usize>>,
}

/// Runs every analysis that applies to `p`; parts that do not apply (no
/// faces, not bipartite) are left out.
pub fn dossier(p: &Polytope, tol: &Tolerance) -> Dossier {
    let types = vertex_types(p, tol).ok().map(|t| t.census());
    match analyze_bipartite(p, tol) {
        Ok(report) => Dossier {
            bipartite: true,
            strict: report.strict,
            reason: None,
            params: Some(report.params),
            edge_tangent: Some(verify_edge_tangency(p, &report, tol)),
            angle_table: angle_table(p, &report, tol).ok(),
            classes: Some(report.classes),
            vertex_types: types,
        },
        Err(reason) => Dossier {
            bipartite: false,
            strict: false,
            reason: Some(reason),
            params: None,
            classes: None,
            edge_tangent: None,
            angle_table: None,
            vertex_types: types,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn insphere_examples() {
        let p = insphere_from_three(3f64.sqrt(), 3f64.sqrt(), 2.0).unwrap();
        assert!((p.ell1 - 1.0).abs() < 1e-12 && (p.rho - 2f64.sqrt()).abs() < 1e-12);
        let p = insphere_from_three(3f64.sqrt(), 2.0, 3f64.sqrt()).unwrap();
        assert!((p.ell1 - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((p.rho - (8.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((p.rho * p.rho + p.ell2 * p.ell2 - 4.0).abs() < 1e-12);
        assert!(insphere_from_three(1.0, 3.0, 1.0).is_err());
        // Triangle exists but the foot falls outside the edge.
        assert!(matches!(
            insphere_from_three(1.0, 2.0, 1.5),
            Err(BipartiteError::Obtuse { .. })
        ));
    }

    proptest! {
        #[test]
        fn insphere_satisfies_relations(r1 in 0.5f64..3.0, r2 in 0.5f64..3.0, t in 0.05f64..0.95) {
            // Pick ell between |r1 - r2| and sqrt(r1^2 + r2^2) so both base
            // angles are acute.
            let lo = (r1 - r2).abs().max((r1 * r1 - r2 * r2).abs().sqrt());
            let hi = (r1 * r1 + r2 * r2).sqrt();
            let ell = lo + t * (hi - lo);
            let p = insphere_from_three(r1, r2, ell).unwrap();
            prop_assert!((p.ell1 + p.ell2 - ell).abs() < 1e-12);
            prop_assert!((p.rho * p.rho + p.ell1 * p.ell1 - r1 * r1).abs() < 1e-12);
            prop_assert!((p.rho * p.rho + p.ell2 * p.ell2 - r2 * r2).abs() < 1e-12);
        }
    }

    #[test]
    fn cube_is_bipartite_not_strict() {
        let c = catalog::cube(3, 1.0).unwrap();
        let r = analyze_bipartite(&c, &tol()).unwrap();
        assert!(!r.strict);
        assert!((r.params.r1 - 3f64.sqrt()).abs() < 1e-12);
        assert!(r.classes[0].contains(&0));
        assert!(verify_edge_tangency(&c, &r, &tol()));
        let moved = c.translated(&Point(vec![0.3, 0.1, 0.0]));
        assert!(!verify_edge_tangency(&moved, &r, &tol()));
        let table = angle_table(&c, &r, &tol()).unwrap();
        let sq = &table.types[&4];
        assert!((sq.alpha1 - PI / 2.0).abs() < 1e-12);
        assert!((sq.beta1 - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((sq.beta2 - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!(check_spherical_sums(&c, &r, &table, &tol()).unwrap().ok);
    }

    #[test]
    fn rhombic_dodecahedron_parameters() {
        let rd = catalog::rhombic_dodecahedron().unwrap();
        let r = analyze_bipartite(&rd, &tol()).unwrap();
        assert!(r.strict);
        assert_eq!(r.classes[0].len(), 8);
        assert!((r.params.r1 - 3f64.sqrt()).abs() < 1e-12);
        assert!((r.params.r2 - 2.0).abs() < 1e-12);
        let t = angle_table(&rd, &r, &tol()).unwrap();
        let sq = &t.types[&4];
        assert!((sq.alpha1.to_degrees() - 109.4712206).abs() < 1e-6);
        assert!((sq.alpha2.to_degrees() - 70.5287794).abs() < 1e-6);
        assert!((sq.eps - 0.10817).abs() < 1e-5);
        assert!((3.0 * sq.beta1 - 2.0 * PI).abs() < 1e-9);
        assert!((4.0 * sq.beta2 - 2.0 * PI).abs() < 1e-9);
        assert!(2.0 * sq.beta1 + 2.0 * sq.beta2 > 2.0 * PI);
        let census = vertex_types(&rd, &tol()).unwrap().census();
        assert_eq!(census["(4,4,4)"], 8);
        assert_eq!(census["(4,4,4,4)"], 6);
    }

    #[test]
    fn bilinski_has_class_conflict() {
        let b = catalog::bilinski_dodecahedron().unwrap();
        let e = analyze_bipartite(&b, &tol()).unwrap_err();
        assert_eq!(e.reason, Reason::RadiusSpread);
    }

    #[test]
    fn odd_cycle_reason() {
        let ico = catalog::icosahedron_from_cube().unwrap();
        assert_eq!(
            analyze_bipartite(&ico, &tol()).unwrap_err().reason,
            Reason::OddCycle
        );
    }

    #[test]
    fn polygon_angles_alternate() {
        let p = catalog::bipartite_polygon(1.0, 1.3, 3).unwrap();
        let r = analyze_bipartite(&p, &tol()).unwrap();
        let t = angle_table(&p, &r, &tol()).unwrap();
        let h = &t.types[&6];
        assert!((h.alpha1 + h.alpha2 - 2.0 * h.alpha_reg).abs() < 1e-12);
        assert!(h.alpha2 < h.alpha_reg && h.alpha_reg < h.alpha1);
        assert!(h.height.abs() < 1e-12);
    }

    #[test]
    fn type_signature_display() {
        let t = TypeSignature::from_cycle(vec![6, 4, 6, 4]);
        assert!(t.is_alternating());
        assert_eq!(t.to_string(), "(4,6,4,6)");
        let t = TypeSignature::from_cycle(vec![6, 4, 4]);
        assert!(!t.is_alternating());
        assert_eq!(t.to_string(), "(4,4,6)");
        assert_eq!(
            TypeSignature::new(vec![4, 6, 6, 4]).to_string(),
            "(4,4,6,6)"
        );
        assert!(TypeSignature::from_cycle(vec![4, 6, 6, 4])
            .same_multiset(&TypeSignature::new(vec![6, 6, 4, 4])));
    }
}

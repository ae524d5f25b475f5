//! Orthogonal symmetry groups of vertex sets and orbit-based transitivity
//! predicates.
//!
//! Symmetries are found as Gram-matrix automorphisms: a vertex permutation
//! preserving all inner products extends to a unique orthogonal map when
//! the vertices span the space. The search fixes images of a basis of
//! vertices by backtracking over inner-product colors, then checks the
//! induced linear map on every vertex.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bipartite::analyze_bipartite;
use crate::polytope::{Point, Polytope};
use crate::scalar::Tolerance;

/// Largest group order the search will enumerate.
pub const ORDER_CAP: usize = 10_000;
/// Inner products closer than this (times the squared scale) share a color.
const COLOR_EPS: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("vertex centroid is {0} away from the origin")]
    CentroidNotOrigin(f64),
    #[error("vertices do not span R^{0}")]
    NotSpanning(usize),
    #[error("symmetry group has more than {0} elements")]
    GroupTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, SymmetryError>;

/// Orthogonal symmetries of a vertex set, stored as generators together
/// with the induced vertex permutations.
#[derive(Clone, Debug)]
pub struct IsometryGroup {
    pub generators: Vec<DMatrix<f64>>,
    pub generator_perms: Vec<Vec<usize>>,
    pub order: usize,
    /// Translation applied to center the input before the search.
    pub translation: Point,
}

impl IsometryGroup {
    /// All group elements as vertex permutations, by closure over the
    /// generators.
    pub fn permutations(&self) -> Vec<Vec<usize>> {
        closure(
            &self.generator_perms,
            self.generator_perms.first().map_or(0, Vec::len),
        )
    }
}

fn closure(gens: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    out
}

/// Sorted cluster representatives of all inner products.
fn color_levels(gram: &DMatrix<f64>, eps: f64) -> Vec<f64> {
    let mut vals: Vec<f64> = gram.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    let mut levels: Vec<f64> = Vec::new();
    for v in vals {
        if levels.last().is_none_or(|&l| v - l > eps) {
            levels.push(v);
        }
    }
    levels
}

fn color_of(levels: &[f64], x: f64, eps: f64) -> usize {
    // Last level not above x + eps.
    levels.partition_point(|&l| l <= x + eps).saturating_sub(1)
}

/// Greedy choice of vertices forming a basis of `R^d`.
fn spanning_vertices(vertices: &[Point], d: usize, eps: f64) -> Option<Vec<usize>> {
    let mut chosen = Vec::new();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    // Prefer long vectors for conditioning.
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| vertices[b].norm().total_cmp(&vertices[a].norm()));
    for i in order {
        let mut r = vertices[i].0.clone();
        for q in &ortho {
            let c: f64 = r.iter().zip(q).map(|(x, y)| x * y).sum();
            for (x, y) in r.iter_mut().zip(q) {
                *x -= c * y;
            }
        }
        let n = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > eps {
            ortho.push(r.into_iter().map(|x| x / n).collect());
            chosen.push(i);
            if chosen.len() == d {
                return Some(chosen);
            }
        }
    }
    None
}

struct Search<'a> {
    vertices: &'a [Point],
    colors: Vec<Vec<usize>>,
    row_sig: Vec<Vec<usize>>,
    basis: Vec<usize>,
    basis_inv: DMatrix<f64>,
    lookup: HashMap<Vec<i64>, Vec<usize>>,
    match_eps: f64,
    quantum: f64,
    found: Vec<(DMatrix<f64>, Vec<usize>)>,
}

impl Search<'_> {
    fn key(&self, x: &[f64]) -> Vec<i64> {
        x.iter()
            .map(|c| (c / self.quantum).round() as i64)
            .collect()
    }

    fn find_vertex(&self, x: &[f64]) -> Option<usize> {
        let key = self.key(x);
        // Check the cell and its neighbours in case x sits on a boundary.
        key.iter()
            .map(|&k| k - 1..=k + 1)
            .multi_cartesian_product()
            .filter_map(|k| self.lookup.get(&k))
            .flatten()
            .copied()
            .find(|&i| {
                self.vertices[i]
                    .iter()
                    .zip(x)
                    .all(|(a, b)| (a - b).abs() <= self.match_eps)
            })
    }

    fn run(&mut self, images: &mut Vec<usize>) -> Result<()> {
        let k = images.len();
        if k == self.basis.len() {
            return self.leaf(images);
        }
        let b = self.basis[k];
        for w in 0..self.vertices.len() {
            if images.contains(&w) || self.row_sig[w] != self.row_sig[b] {
                continue;
            }
            let consistent =
                (0..k).all(|m| self.colors[images[m]][w] == self.colors[self.basis[m]][b]);
            if consistent {
                images.push(w);
                self.run(images)?;
                images.pop();
            }
        }
        Ok(())
    }

    fn leaf(&mut self, images: &[usize]) -> Result<()> {
        let d = self.basis.len();
        let w = DMatrix::from_fn(d, d, |r, c| self.vertices[images[c]][r]);
        let m = &w * &self.basis_inv;
        let orth = (&m.transpose() * &m - DMatrix::identity(d, d)).abs().max();
        if orth > 1e-8 {
            return Ok(());
        }
        let mut perm = Vec::with_capacity(self.vertices.len());
        let mut hit = vec![false; self.vertices.len()];
        for v in self.vertices {
            let x = &m * nalgebra::DVector::from_column_slice(v);
            match self.find_vertex(x.as_slice()) {
                Some(j) if !hit[j] => {
                    hit[j] = true;
                    perm.push(j);
                }
                _ => return Ok(()),
            }
        }
        if self.found.len() >= ORDER_CAP {
            return Err(SymmetryError::GroupTooLarge(ORDER_CAP));
        }
        self.found.push((m, perm));
        Ok(())
    }
}

/// The full orthogonal symmetry group of `P`'s vertex set. The centroid
/// must be at the origin; see [`symmetry_group_centered`].
pub fn symmetry_group(p: &Polytope) -> Result<IsometryGroup> {
    let c = p.centroid();
    let off = c.norm();
    if off > 1e-9 * p.scale() {
        return Err(SymmetryError::CentroidNotOrigin(off));
    }
    let d = p.dim;
    let n = p.vertex_count();
    let scale = p.scale();
    let basis =
        spanning_vertices(&p.vertices, d, 1e-6 * scale).ok_or(SymmetryError::NotSpanning(d))?;
    let gram = DMatrix::from_fn(n, n, |i, j| p.vertices[i].dot(&p.vertices[j]));
    let eps = COLOR_EPS * scale * scale;
    let levels = color_levels(&gram, eps);
    let colors: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| color_of(&levels, gram[(i, j)], eps))
                .collect()
        })
        .collect();
    let row_sig: Vec<Vec<usize>> = colors
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut s = row.clone();
            s.sort_unstable();
            s.push(row[i]);
            s
        })
        .collect();
    let bmat = DMatrix::from_fn(d, d, |r, c| p.vertices[basis[c]][r]);
    let basis_inv = bmat.try_inverse().ok_or(SymmetryError::NotSpanning(d))?;
    let quantum = 1e-4 * scale;
    let mut lookup: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    let mut search = Search {
        vertices: &p.vertices,
        colors,
        row_sig,
        basis,
        basis_inv,
        lookup: HashMap::new(),
        match_eps: 1e-6 * scale,
        quantum,
        found: Vec::new(),
    };
    for (i, v) in p.vertices.iter().enumerate() {
        lookup.entry(search.key(v)).or_default().push(i);
    }
    search.lookup = lookup;
    search.run(&mut Vec::new())?;

    let order = search.found.len();
    // Greedy generating set: add any element outside the current closure.
    let mut generators = Vec::new();
    let mut generator_perms: Vec<Vec<usize>> = Vec::new();
    let mut reached: HashSet<Vec<usize>> = HashSet::from([(0..n).collect()]);
    for (m, perm) in &search.found {
        if reached.contains(perm) {
            continue;
        }
        generators.push(m.clone());
        generator_perms.push(perm.clone());
        reached = closure(&generator_perms, n).into_iter().collect();
        if reached.len() == order {
            break;
        }
    }
    Ok(IsometryGroup {
        generators,
        generator_perms,
        order,
        translation: Point::zeros(d),
    })
}

/// Translates `P` to put its centroid at the origin, then computes the
/// group. The translation is recorded in the result.
pub fn symmetry_group_centered(p: &Polytope) -> Result<(Polytope, IsometryGroup)> {
    let c = p.centroid();
    let centered = p.centered();
    let mut g = symmetry_group(&centered)?;
    g.translation = c.scale(-1.0);
    Ok((centered, g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitKind {
    Vertices,
    Edges,
    Arcs,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
    fn classes(mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..n {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }
}

/// Arcs of `P`: `(vertex, edge index)` for both endpoints of every edge,
/// edge by edge.
pub fn arcs(p: &Polytope) -> Vec<(usize, usize)> {
    p.edges
        .iter()
        .enumerate()
        .flat_map(|(k, &[a, b])| [(a, k), (b, k)])
        .collect()
}

/// Orbits of vertices, edges (indices into `P.edges`), or arcs (indices
/// into [`arcs`]) under the generators; orbits sorted by smallest member.
pub fn orbits(p: &Polytope, g: &IsometryGroup, kind: OrbitKind) -> Vec<Vec<usize>> {
    let edge_index: HashMap<[usize; 2], usize> =
        p.edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let map_edge = |perm: &[usize], [a, b]: [usize; 2]| {
        let (x, y) = (perm[a], perm[b]);
        edge_index.get(&[x.min(y), x.max(y)]).copied()
    };
    match kind {
        OrbitKind::Vertices => {
            let mut uf = UnionFind::new(p.vertex_count());
            for perm in &g.generator_perms {
                for (v, &w) in perm.iter().enumerate() {
                    uf.union(v, w);
                }
            }
            uf.classes()
        }
        OrbitKind::Edges => {
            let mut uf = UnionFind::new(p.edge_count());
            for perm in &g.generator_perms {
                for (k, &e) in p.edges.iter().enumerate() {
                    if let Some(j) = map_edge(perm, e) {
                        uf.union(k, j);
                    }
                }
            }
            uf.classes()
        }
        OrbitKind::Arcs => {
            let list = arcs(p);
            let arc_index: HashMap<(usize, usize), usize> =
                list.iter().enumerate().map(|(k, &a)| (a, k)).collect();
            let mut uf = UnionFind::new(list.len());
            for perm in &g.generator_perms {
                for (k, &(v, e)) in list.iter().enumerate() {
                    if let Some(j) = map_edge(perm, p.edges[e]) {
                        if let Some(&t) = arc_index.get(&(perm[v], j)) {
                            uf.union(k, t);
                        }
                    }
                }
            }
            uf.classes()
        }
    }
}

pub fn is_vertex_transitive(p: &Polytope) -> Result<bool> {
    let (c, g) = symmetry_group_centered(p)?;
    Ok(orbits(&c, &g, OrbitKind::Vertices).len() == 1)
}

pub fn is_edge_transitive(p: &Polytope) -> Result<bool> {
    let (c, g) = symmetry_group_centered(p)?;
    Ok(orbits(&c, &g, OrbitKind::Edges).len() == 1)
}

pub fn is_arc_transitive(p: &Polytope) -> Result<bool> {
    let (c, g) = symmetry_group_centered(p)?;
    Ok(orbits(&c, &g, OrbitKind::Arcs).len() == 1)
}

/// Members of the list of edge- but not vertex-transitive polytopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeNotVertexKind {
    NonRegularPolygon,
    RhombicDodecahedron,
    RhombicTriacontahedron,
    /// Matches none of the known cases.
    Unlisted,
}

impl fmt::Display for EdgeNotVertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeNotVertexKind::NonRegularPolygon => "non-regular 2k-gon",
            EdgeNotVertexKind::RhombicDodecahedron => "rhombic dodecahedron",
            EdgeNotVertexKind::RhombicTriacontahedron => "rhombic triacontahedron",
            EdgeNotVertexKind::Unlisted => "unlisted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitivityReport {
    pub group_order: usize,
    pub vertex_orbits: Vec<Vec<usize>>,
    pub edge_orbits: Vec<Vec<usize>>,
    pub arc_orbits: Vec<Vec<usize>>,
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_not_vertex: Option<EdgeNotVertexKind>,
    pub classification: String,
}

/// Matches an edge- but not vertex-transitive polytope against the known
/// list by dimension, counts, and strict bipartiteness.
fn match_edge_not_vertex(p: &Polytope) -> EdgeNotVertexKind {
    let tol = Tolerance::default();
    let strict = analyze_bipartite(p, &tol).is_ok_and(|r| r.strict);
    let counts = (
        p.vertex_count(),
        p.edge_count(),
        p.face_count().unwrap_or(0),
    );
    match (p.dim, counts) {
        (2, (n, _, _)) if n % 2 == 0 && strict => EdgeNotVertexKind::NonRegularPolygon,
        (3, (14, 24, 12)) if strict => EdgeNotVertexKind::RhombicDodecahedron,
        (3, (32, 60, 30)) if strict => EdgeNotVertexKind::RhombicTriacontahedron,
        _ => EdgeNotVertexKind::Unlisted,
    }
}

pub fn classify_transitivity(p: &Polytope) -> Result<TransitivityReport> {
    let (c, g) = symmetry_group_centered(p)?;
    let vertex_orbits = orbits(&c, &g, OrbitKind::Vertices);
    let edge_orbits = orbits(&c, &g, OrbitKind::Edges);
    let arc_orbits = orbits(&c, &g, OrbitKind::Arcs);
    let vt = vertex_orbits.len() == 1;
    let et = edge_orbits.len() == 1;
    let at = arc_orbits.len() == 1;
    let edge_not_vertex = (et && !vt).then(|| match_edge_not_vertex(&c));
    let classification = match (vt, et, edge_not_vertex) {
        (true, true, _) => "vertex- and edge-transitive".to_string(),
        (false, true, Some(kind)) => format!("edge-not-vertex: {kind}"),
        (true, false, _) => "vertex-transitive, not edge-transitive".to_string(),
        _ => "neither vertex- nor edge-transitive".to_string(),
    };
    Ok(TransitivityReport {
        group_order: g.order,
        vertex_orbits,
        edge_orbits,
        arc_orbits,
        vertex_transitive: vt,
        edge_transitive: et,
        arc_transitive: at,
        edge_not_vertex,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn cube_and_hexagon_orders() {
        let c = catalog::cube(3, 1.0).unwrap();
        let g = symmetry_group(&c).unwrap();
        assert_eq!(g.order, 48);
        assert_eq!(g.permutations().len(), 48);
        for m in &g.generators {
            assert!((m.transpose() * m - DMatrix::identity(3, 3)).abs().max() < 1e-9);
        }
        let hex = catalog::regular_polygon(3).unwrap();
        assert_eq!(symmetry_group(&hex).unwrap().order, 12);
    }

    #[test]
    fn uncentered_input_is_rejected_or_translated() {
        let c = catalog::cube(3, 1.0)
            .unwrap()
            .translated(&Point(vec![1.0, 2.0, 3.0]));
        assert!(matches!(
            symmetry_group(&c),
            Err(SymmetryError::CentroidNotOrigin(_))
        ));
        let (_, g) = symmetry_group_centered(&c).unwrap();
        assert_eq!(g.order, 48);
        assert_eq!(g.translation, Point(vec![-1.0, -2.0, -3.0]));
    }

    #[test]
    fn rhombic_dodecahedron_orbits() {
        let rd = catalog::rhombic_dodecahedron().unwrap();
        let g = symmetry_group(&rd).unwrap();
        assert_eq!(g.order, 48);
        let vo = orbits(&rd, &g, OrbitKind::Vertices);
        let mut sizes: Vec<usize> = vo.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![6, 8]);
        assert_eq!(orbits(&rd, &g, OrbitKind::Edges).len(), 1);
        let r = classify_transitivity(&rd).unwrap();
        assert_eq!(r.classification, "edge-not-vertex: rhombic dodecahedron");
        // Each edge joins a 3-valent to a 4-valent vertex, so arcs split.
        assert!(!r.arc_transitive);
    }

    #[test]
    fn cube_classification() {
        let r = classify_transitivity(&catalog::cube(3, 1.0).unwrap()).unwrap();
        assert_eq!(r.classification, "vertex- and edge-transitive");
        assert!(r.arc_transitive);
    }

    #[test]
    fn nonregular_polygon() {
        let p = catalog::bipartite_polygon(1.0, 1.3, 2).unwrap();
        let r = classify_transitivity(&p).unwrap();
        assert_eq!(r.classification, "edge-not-vertex: non-regular 2k-gon");
    }
}

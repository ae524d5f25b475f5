//! Runs every acceptance criterion and reports one line per check.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::bipartite::{
    analyze_bipartite, angle_table, check_spherical_sums, edge_tangency, vertex_types,
};
use crate::cases::{
    compare_with_expected, determine_r, dihedral_sum_obstruction, dihedral_triples,
    enumerate_1_types, hexagon_parity_argument, reproduce_tables,
};
use crate::catalog::instances;
use crate::near_miss::{construct_q, near_miss_identity, near_miss_report, Variant};
use crate::polytope::{
    centrally_symmetric_2faces, contains_origin_interior, derive_edges, dihedral_angle,
    dihedral_from_interior_angles, faces_3d, sum_to_zero_coefficients, EdgeGraph, Point, Polytope,
};
use crate::scalar::{GoldenNumber, Tolerance};
use crate::symmetry::{classify_transitivity, orbits, symmetry_group_centered, OrbitKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{mark}] {:>2}. {}: {}",
            self.criterion, self.name, self.detail
        )
    }
}

struct Out {
    criterion: u8,
    checks: Vec<Check>,
}

impl Out {
    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            criterion: self.criterion,
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn fail(&mut self, name: &str, err: impl fmt::Display) {
        self.check(name, false, format!("error: {err}"));
    }
}

type Items = Vec<(String, Polytope)>;

fn by_name<'a>(items: &'a Items, name: &str) -> &'a Polytope {
    &items
        .iter()
        .find(|(n, _)| n == name)
        .expect("instance list is fixed")
        .1
}

fn c1_dihedrals(o: &mut Out, items: &Items) {
    let tol = Tolerance::default();
    for (name, want) in [
        ("rhombic dodecahedron", 120.0f64),
        ("rhombic triacontahedron", 144.0),
    ] {
        let p = by_name(items, name);
        match faces_3d(p, &tol) {
            Ok(faces) => {
                let mut worst = 0.0f64;
                for &e in &p.edges {
                    match dihedral_angle(&faces, e) {
                        Ok(d) => worst = worst.max((d - want.to_radians()).abs()),
                        Err(_) => worst = f64::INFINITY,
                    }
                }
                o.check(
                    name,
                    worst <= 1e-9,
                    format!(
                        "all {} dihedrals {want} deg, max deviation {worst:.2e} rad",
                        p.edge_count()
                    ),
                );
            }
            Err(e) => o.fail(name, e),
        }
    }
}

fn c2_obstruction(o: &mut Out) {
    let t = dihedral_triples();
    let sums: Vec<String> = t
        .iter()
        .map(|x| format!("{:?}={}", x.degrees, x.sum))
        .collect();
    o.check(
        "triples from {120,144} sum >= 360",
        dihedral_sum_obstruction(),
        sums.join(", "),
    );
}

fn c3_classification(o: &mut Out, items: &Items) {
    let tol = Tolerance::default();
    let mut found = Vec::new();
    let mut errors = Vec::new();
    for (name, p) in items {
        match classify_transitivity(p) {
            Ok(r) if r.edge_transitive && !r.vertex_transitive => found.push(name.clone()),
            Ok(_) => {}
            Err(e) => errors.push(format!("{name}: {e}")),
        }
    }
    let mut expected: Vec<String> = (2..=6)
        .map(|k| format!("bipartite {}-gon", 2 * k))
        .collect();
    expected.push("rhombic dodecahedron".into());
    expected.push("rhombic triacontahedron".into());
    o.check(
        "edge- but not vertex-transitive instances",
        found == expected && errors.is_empty(),
        if errors.is_empty() {
            found.join(", ")
        } else {
            errors.join("; ")
        },
    );
    for name in ["rhombic dodecahedron", "rhombic triacontahedron"] {
        let p = by_name(items, name);
        match (analyze_bipartite(p, &tol), classify_transitivity(p)) {
            (Ok(b), Ok(c)) => o.check(
                &format!("{name} strictly bipartite"),
                b.strict && c.edge_not_vertex.is_some(),
                format!(
                    "r1 = {:.6}, r2 = {:.6}, {}",
                    b.params.r1, b.params.r2, c.classification
                ),
            ),
            (Err(e), _) => o.fail(name, e),
            (_, Err(e)) => o.fail(name, e),
        }
    }
}

fn c4_permutahedra(o: &mut Out, items: &Items) {
    let tol = Tolerance::default();
    for g in ["A3", "B3", "H3", "I1+I2(3)", "I1+I2(4)", "I1+I2(5)"] {
        let name = format!("{g}-permutahedron");
        let p = by_name(items, &name);
        let bip = analyze_bipartite(p, &tol);
        let vt = classify_transitivity(p).map(|r| r.vertex_transitive);
        let cs = centrally_symmetric_2faces(p, &tol);
        match (bip, vt) {
            (Ok(b), Ok(vt)) => {
                let gap = (b.params.r1 - b.params.r2).abs();
                o.check(
                    &name,
                    gap <= 1e-9 && !b.strict && vt && cs,
                    format!("|r1 - r2| = {gap:.1e}, vertex-transitive {vt}, centrally symmetric 2-faces {cs}"),
                );
            }
            (Err(e), _) => o.fail(&name, e),
            (_, Err(e)) => o.fail(&name, e),
        }
    }
}

fn c5_table_one(o: &mut Out) {
    let expected = [
        ("(4,4,4)", "3/2"),
        ("(4,4,6)", "4/3"),
        ("(4,4,8)", "5/4"),
        ("(4,4,10)", "6/5"),
        ("(4,6,6)", "7/6"),
        ("(4,6,8)", "13/12"),
        ("(4,6,10)", "31/30"),
    ];
    let got: Vec<(String, String)> = enumerate_1_types(10)
        .iter()
        .map(|r| (r.tau.to_string(), r.k.to_string()))
        .collect();
    let want: Vec<(String, String)> = expected
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let shown: Vec<String> = got.iter().map(|(t, k)| format!("{t} {k}")).collect();
    o.check("1-vertex types with K > 1", got == want, shown.join(", "));
}

fn c6_tables(o: &mut Out) {
    let set = reproduce_tables();
    let problems = compare_with_expected(&set);
    o.check(
        "adjacent-pair tables match",
        problems.is_empty(),
        if problems.is_empty() {
            "all rows equal in exact arithmetic".into()
        } else {
            problems.join("; ")
        },
    );
    let lhs: Vec<&str> = set
        .tables
        .iter()
        .flat_map(|t| t.rows.iter().map(|r| r.lhs.as_str()))
        .collect();
    let want = [
        "4/30", "8/30", "14/30", "2/12", "5/12", "7/12", "9/12", "2/6", "3/6", "4/6",
    ];
    o.check("lhs column", lhs == want, lhs.join(" "));
    let from: Vec<Option<u32>> = set.parametric.iter().map(|r| r.infeasible_from).collect();
    o.check(
        "(4,4,2k) rows",
        from == [Some(3), Some(3), Some(4)] && set.parametric.iter().all(|r| r.gap_increasing),
        "first two infeasible for 2k >= 6; (4,2k,4,2k) feasible only at 2k = 6",
    );
}

fn c7_r(o: &mut Out) {
    let t = determine_r();
    let reason = |r: u32| t.candidates.get(&r).cloned().flatten().unwrap_or_default();
    let ok = t.r == Some(5)
        && reason(3).starts_with("b1^3")
        && reason(4).starts_with("b2^3 = b2^2")
        && (6..=12).all(|r| reason(r).starts_with("2 b1^2"));
    o.check(
        "r = 5",
        ok,
        format!("r=3: {}; r=4: {}; r=6: {}", reason(3), reason(4), reason(6)),
    );
}

fn c8_hexagon(o: &mut Out) {
    o.check(
        "hexagon parity",
        hexagon_parity_argument(),
        "1-vertex labelings give 3, 2-vertex labelings even",
    );
}

fn c9_identity(o: &mut Out) {
    let x = near_miss_identity();
    let phi = GoldenNumber::phi();
    let exact = x == GoldenNumber::from_ints(35, -55) && x == &GoldenNumber::one() + &phi.pow(10);
    o.check(
        "(4φ-3)^2 + (3φ-1)^2 = 35 - 55φ = 1 + φ^10",
        exact,
        x.to_string(),
    );
    let ratio = x.to_f64().sqrt();
    let gap = (ratio - 1.0) * 100.0;
    o.check(
        "ratio and gap",
        (ratio - 1.00405707).abs() <= 1e-6 && (gap - 0.4057).abs() <= 1e-3,
        format!("ratio = {ratio:.8}, gap = {gap:.4}%"),
    );
}

fn c10_q(o: &mut Out) {
    let tol = Tolerance::default();
    match construct_q(Variant::Equilateral) {
        Ok(q) => {
            let f = q.face_count().unwrap_or(0);
            let euler = q.vertex_count() as i64 - q.edge_count() as i64 + f as i64;
            o.check(
                "Q counts",
                (q.vertex_count(), q.edge_count(), f, euler) == (102, 180, 80, 2),
                format!(
                    "{}/{}/{}, Euler {euler}",
                    q.vertex_count(),
                    q.edge_count(),
                    f
                ),
            );
            match vertex_types(&q, &tol) {
                Ok(t) => {
                    let census = t.census();
                    let want: BTreeMap<String, usize> =
                        [("(4,4,6)", 60), ("(4,6,4,6)", 30), ("(4,4,4,4,4)", 12)]
                            .iter()
                            .map(|(k, v)| (k.to_string(), *v))
                            .collect();
                    o.check("Q vertex types", census == want, format!("{census:?}"));
                }
                Err(e) => o.fail("Q vertex types", e),
            }
        }
        Err(e) => o.fail("Q counts", e),
    }
    match near_miss_report(Variant::Equilateral) {
        Ok(r) => o.check(
            "equilateral variant",
            r.edge_length_spread - 1.0 < 1e-10 && (r.v2_radius_spread - 1.00405707).abs() <= 1e-6,
            format!(
                "edge spread {:.1e}, V2 radius ratio {:.8}",
                r.edge_length_spread - 1.0,
                r.v2_radius_spread
            ),
        ),
        Err(e) => o.fail("equilateral variant", e),
    }
    match construct_q(Variant::Tangent) {
        Ok(q) => {
            let tangent = edge_tangency(&q, &tol).is_some();
            let lens: Vec<f64> = q.edges.iter().map(|&e| q.edge_length(e)).collect();
            let spread = lens.iter().cloned().fold(f64::MIN, f64::max)
                / lens.iter().cloned().fold(f64::MAX, f64::min);
            o.check(
                "tangent variant",
                tangent && spread > 1.0 + 1e-4,
                format!("edge-tangent {tangent}, edge spread {:.4e}", spread - 1.0),
            );
        }
        Err(e) => o.fail("tangent variant", e),
    }
}

fn edge_orbit_count(p: &Polytope) -> Result<usize, String> {
    let (c, g) = symmetry_group_centered(p).map_err(|e| e.to_string())?;
    Ok(orbits(&c, &g, OrbitKind::Edges).len())
}

fn c11_zonotopes(o: &mut Out, items: &Items) {
    let mut names: Vec<String> = (2..=6).map(|k| format!("regular {}-gon", 2 * k)).collect();
    names.extend(["3-cube", "4-cube", "(6,6)-duoprism", "(8,8)-duoprism"].map(String::from));
    let mut bad = Vec::new();
    for n in &names {
        match edge_orbit_count(by_name(items, n)) {
            Ok(1) => {}
            Ok(k) => bad.push(format!("{n}: {k} orbits")),
            Err(e) => bad.push(format!("{n}: {e}")),
        }
    }
    o.check(
        "edge-transitive zonotopes",
        bad.is_empty(),
        if bad.is_empty() {
            names.join(", ")
        } else {
            bad.join("; ")
        },
    );
    for n in ["A3-permutahedron", "I1+I2(3)-permutahedron"] {
        match edge_orbit_count(by_name(items, n)) {
            Ok(k) => o.check(
                &format!("{n} not edge-transitive"),
                k == 2,
                format!("{k} edge orbits"),
            ),
            Err(e) => o.fail(n, e),
        }
    }
}

/// Orthogonal maps from a finite candidate list that permute the vertices.
fn count_preserving(p: &Polytope, maps: impl Iterator<Item = Vec<Vec<f64>>>) -> usize {
    let c = p.centered();
    let eps = 1e-9 * c.scale();
    maps.filter(|m| {
        c.vertices.iter().all(|v| {
            let w: Vec<f64> = m
                .iter()
                .map(|row| row.iter().zip(v.iter()).map(|(a, b)| a * b).sum())
                .collect();
            c.vertices
                .iter()
                .any(|u| u.iter().zip(&w).all(|(a, b)| (a - b).abs() <= eps))
        })
    })
    .count()
}

/// All signed permutation matrices of size `d`.
pub fn signed_permutations(d: usize) -> Vec<Vec<Vec<f64>>> {
    let mut out = Vec::new();
    for p in (0..d).permutations(d) {
        for signs in 0..1u32 << d {
            let mut m = vec![vec![0.0; d]; d];
            for (r, &c) in p.iter().enumerate() {
                m[r][c] = if signs >> r & 1 == 1 { -1.0 } else { 1.0 };
            }
            out.push(m);
        }
    }
    out
}

/// Rotations by `2 pi j / n` and reflections in lines at angle `pi j / n`
/// through the first vertex direction.
pub fn dihedral_candidates(p: &Polytope, n: usize) -> Vec<Vec<Vec<f64>>> {
    let c = p.centered();
    let base = c.vertices[0][1].atan2(c.vertices[0][0]);
    let mut out = Vec::new();
    for j in 0..n {
        let t = 2.0 * PI * j as f64 / n as f64;
        out.push(vec![vec![t.cos(), -t.sin()], vec![t.sin(), t.cos()]]);
        let a = 2.0 * (base + PI * j as f64 / n as f64);
        out.push(vec![vec![a.cos(), a.sin()], vec![a.sin(), -a.cos()]]);
    }
    out
}

fn c12_oracles(o: &mut Out, items: &Items) {
    let mut bad = Vec::new();
    for (name, p) in items.iter().filter(|(_, p)| p.vertex_count() <= 120) {
        match derive_edges(p) {
            Ok(e) if e == p.edges => {}
            Ok(e) => bad.push(format!(
                "{name}: {} derived vs {} stored",
                e.len(),
                p.edge_count()
            )),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    o.check(
        "adjacency oracle equals constructor edges",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} instances", items.len())
        } else {
            bad.join("; ")
        },
    );

    let mut lines = Vec::new();
    let mut ok = true;
    for (name, p) in items {
        let oracle = match (p.dim, name.as_str()) {
            (2, _) => count_preserving(p, dihedral_candidates(p, p.vertex_count()).into_iter()),
            (_, "3-cube" | "4-cube" | "rhombic dodecahedron" | "I1+I1+I1-permutahedron") => {
                count_preserving(p, signed_permutations(p.dim).into_iter())
            }
            _ => continue,
        };
        match symmetry_group_centered(p) {
            Ok((_, g)) => {
                ok &= g.order == oracle;
                lines.push(format!("{name} {}/{oracle}", g.order));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{name}: {e}"));
            }
        }
    }
    let cube = items
        .iter()
        .find(|(n, _)| n == "3-cube")
        .and_then(|(_, p)| symmetry_group_centered(p).ok());
    let hex = items
        .iter()
        .find(|(n, _)| n == "regular 6-gon")
        .and_then(|(_, p)| symmetry_group_centered(p).ok());
    ok &= cube.map(|(_, g)| g.order) == Some(48) && hex.map(|(_, g)| g.order) == Some(12);
    o.check(
        "group orders match brute-force oracles",
        ok,
        lines.join(", "),
    );
}

/// Nearly regular simplices: pairwise inner products stay negative.
fn simplex_instances(count: usize) -> Vec<Vec<Point>> {
    // Deterministic xorshift so the suite needs no RNG dependency.
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut out = Vec::new();
    while out.len() < count {
        let d = 2 + out.len() % 4;
        // Regular simplex: e_i - centroid in R^{d+1}, projected to R^d.
        let basis = regular_simplex(d);
        let pts: Vec<Point> = basis
            .iter()
            .map(|v| {
                Point(
                    v.iter()
                        .map(|x| x * (1.0 + 0.3 * next()) + 0.1 * next())
                        .collect(),
                )
            })
            .collect();
        let negative = (0..=d).all(|i| (i + 1..=d).all(|j| pts[i].dot(&pts[j]) < -1e-3));
        if negative {
            out.push(pts);
        }
    }
    out
}

fn regular_simplex(d: usize) -> Vec<Vec<f64>> {
    // Vertices of the standard simplex, centred and written in an
    // orthonormal basis of the hyperplane sum x = 0.
    let n = d + 1;
    let centred: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64)
                .collect()
        })
        .collect();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in &centred {
        let mut r = v.clone();
        for q in &basis {
            let c: f64 = r.iter().zip(q).map(|(a, b)| a * b).sum();
            for (x, y) in r.iter_mut().zip(q) {
                *x -= c * y;
            }
        }
        let nr = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nr > 1e-9 && basis.len() < d {
            basis.push(r.into_iter().map(|x| x / nr).collect());
        }
    }
    centred
        .iter()
        .map(|v| {
            basis
                .iter()
                .map(|q| v.iter().zip(q).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect()
}

fn c13_appendix(o: &mut Out, items: &Items) {
    let tol = Tolerance::default();
    let mut worst = 0.0f64;
    let mut all_positive = true;
    let instances = simplex_instances(100);
    for pts in &instances {
        match sum_to_zero_coefficients(pts) {
            Ok(a) => {
                all_positive &= a.iter().all(|&x| x > 0.0);
                let d = pts[0].dim();
                let scale = a.iter().cloned().fold(0.0, f64::max);
                for c in 0..d {
                    let s: f64 = pts.iter().zip(&a).map(|(p, w)| p[c] * w).sum();
                    worst = worst.max(s.abs() / scale);
                }
            }
            Err(_) => all_positive = false,
        }
    }
    o.check(
        "sum-to-zero coefficients",
        all_positive && worst <= 1e-9,
        format!("{} instances, max residual {worst:.1e}", instances.len()),
    );

    let mut worst = 0.0f64;
    let mut vertices = 0;
    let mut errors = Vec::new();
    for (name, p) in items.iter().filter(|(_, p)| p.dim == 3) {
        let Ok(faces) = faces_3d(p, &tol) else {
            errors.push(name.clone());
            continue;
        };
        let g = EdgeGraph::new(p.vertex_count(), &p.edges);
        for v in (0..p.vertex_count()).filter(|&v| g.degree(v) == 3) {
            let u: Vec<Point> = g
                .neighbors(v)
                .iter()
                .map(|&w| p.vertices[w].sub(&p.vertices[v]))
                .collect();
            let ang = |i: usize, j: usize| {
                (u[i].dot(&u[j]) / (u[i].norm() * u[j].norm()))
                    .clamp(-1.0, 1.0)
                    .acos()
            };
            let Ok(pred) = dihedral_from_interior_angles(ang(0, 1), ang(1, 2), ang(2, 0)) else {
                errors.push(format!("{name} vertex {v}"));
                continue;
            };
            for (i, &w) in g.neighbors(v).iter().enumerate() {
                match dihedral_angle(&faces, [v.min(w), v.max(w)]) {
                    Ok(d) => worst = worst.max((d - pred[i]).abs()),
                    Err(_) => errors.push(format!("{name} edge {v}-{w}")),
                }
            }
            vertices += 1;
        }
    }
    o.check(
        "dihedral angles at simple vertices",
        worst <= 1e-9 && errors.is_empty() && vertices > 0,
        if errors.is_empty() {
            format!("{vertices} vertices, max deviation {worst:.1e}")
        } else {
            errors.join("; ")
        },
    );

    let mut lines = Vec::new();
    let mut ok = true;
    for (name, p) in items.iter().filter(|(_, p)| p.dim == 3) {
        let Ok(rep) = analyze_bipartite(p, &tol) else {
            continue;
        };
        if !rep.strict {
            continue;
        }
        let interior = contains_origin_interior(p).unwrap_or(false);
        let sums = angle_table(p, &rep, &tol).and_then(|t| check_spherical_sums(p, &rep, &t, &tol));
        match sums {
            Ok(s) if interior => {
                ok &= s.max_vertex_deviation <= 1e-9;
                lines.push(format!("{name} {:.1e}", s.max_vertex_deviation));
            }
            Ok(_) => {
                ok = false;
                lines.push(format!("{name}: origin not interior"));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{name}: {e}"));
            }
        }
    }
    ok &= !lines.is_empty();
    o.check("spherical angle sums are 2π", ok, lines.join(", "));
}

pub const CRITERIA: [&str; 13] = [
    "dihedral angles 120° and 144°",
    "dihedral sum obstruction in dimension 4",
    "edge- but not vertex-transitive classification",
    "permutahedra with r1 = r2",
    "table of 1-vertex types",
    "adjacent-pair infeasibility tables",
    "degree of (4^r) vertices",
    "hexagon parity argument",
    "near-miss golden identity",
    "near-miss polyhedron Q",
    "edge-transitive zonotopes",
    "oracle equivalence",
    "appendix properties",
];

/// Runs the criteria with the given numbers (1-based); all when empty.
pub fn run(which: &[u8]) -> Vec<Check> {
    let items = match instances() {
        Ok(items) => items,
        Err(e) => {
            return vec![Check {
                criterion: 0,
                name: "catalog".into(),
                pass: false,
                detail: format!("error: {e}"),
            }]
        }
    };
    let mut all = Vec::new();
    for n in 1..=13u8 {
        if !which.is_empty() && !which.contains(&n) {
            continue;
        }
        let mut o = Out {
            criterion: n,
            checks: Vec::new(),
        };
        match n {
            1 => c1_dihedrals(&mut o, &items),
            2 => c2_obstruction(&mut o),
            3 => c3_classification(&mut o, &items),
            4 => c4_permutahedra(&mut o, &items),
            5 => c5_table_one(&mut o),
            6 => c6_tables(&mut o),
            7 => c7_r(&mut o),
            8 => c8_hexagon(&mut o),
            9 => c9_identity(&mut o),
            10 => c10_q(&mut o),
            11 => c11_zonotopes(&mut o, &items),
            12 => c12_oracles(&mut o, &items),
            _ => c13_appendix(&mut o, &items),
        }
        all.extend(o.checks);
    }
    all
}

/// Name of criterion `n` (1-based).
pub fn criterion_name(n: u8) -> &'static str {
    CRITERIA
        .get(n.wrapping_sub(1) as usize)
        .copied()
        .unwrap_or("?")
}

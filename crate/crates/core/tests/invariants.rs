use std::f64::consts::PI;

use bipoly::bipartite::{analyze_bipartite, Reason, TypeSignature};
use bipoly::cases::{check_subtype_monotonicity, is_infeasible_pair, k_value, Verdict};
use bipoly::catalog::{self, bipartite_polygon};
use bipoly::polytope::io::{from_json, from_off, to_json, to_off};
use bipoly::polytope::Polytope;
use bipoly::scalar::Tolerance;
use bipoly::symmetry::{classify_transitivity, orbits, symmetry_group_centered, OrbitKind};
use nalgebra::{DMatrix, Rotation3, Unit, Vector3};
use proptest::prelude::*;

fn rotation(axis: [f64; 3], angle: f64) -> DMatrix<f64> {
    let r = Rotation3::from_axis_angle(&Unit::new_normalize(Vector3::from(axis)), angle);
    DMatrix::from_iterator(3, 3, r.matrix().iter().copied())
}

fn convex_radii() -> impl Strategy<Value = (usize, f64, f64)> {
    (2usize..=8, 0.0f64..1.0).prop_map(|(k, t)| {
        let limit = 1.0 / (PI / (2 * k) as f64).cos();
        // Stay clear of the degenerate end where a 1-vertex is flat.
        (k, 1.0, 1.0 + t * 0.9 * (limit - 1.0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bipartite_polygons_are_edge_transitive((k, r1, r2) in convex_radii()) {
        let p = bipartite_polygon(r1, r2, k).unwrap();
        let rep = analyze_bipartite(&p, &Tolerance::default()).unwrap();
        let strict = r2 - r1 > 1e-6;
        prop_assert_eq!(rep.strict, strict);
        let t = classify_transitivity(&p).unwrap();
        prop_assert!(t.edge_transitive);
        prop_assert_eq!(t.vertex_transitive, !strict);
        prop_assert_eq!(t.group_order, if strict { 2 * k } else { 4 * k });
    }

    #[test]
    fn group_is_rotation_invariant(
        which in 0usize..3,
        axis in prop::array::uniform3(-1.0f64..1.0),
        angle in 0.0f64..(2.0 * PI),
    ) {
        prop_assume!(axis.iter().map(|x| x * x).sum::<f64>() > 1e-2);
        let p = match which {
            0 => catalog::cube(3, 1.0).unwrap(),
            1 => catalog::rhombic_dodecahedron().unwrap(),
            _ => catalog::rhombic_triacontahedron().unwrap(),
        };
        let q = p.transformed(&rotation(axis, angle));
        let (cp, gp) = symmetry_group_centered(&p).unwrap();
        let (cq, gq) = symmetry_group_centered(&q).unwrap();
        prop_assert_eq!(gp.order, gq.order);
        for kind in [OrbitKind::Vertices, OrbitKind::Edges, OrbitKind::Arcs] {
            prop_assert_eq!(orbits(&cp, &gp, kind), orbits(&cq, &gq, kind));
        }
    }

    #[test]
    fn translation_does_not_change_the_verdict(
        offset in prop::array::uniform3(-5.0f64..5.0),
    ) {
        let p = catalog::rhombic_dodecahedron().unwrap();
        let moved = p.translated(&offset.into());
        let (c, g) = symmetry_group_centered(&moved).unwrap();
        prop_assert_eq!(g.order, 48);
        let rep = analyze_bipartite(&c, &Tolerance::default()).unwrap();
        prop_assert!(rep.strict);
        // Off-centre, the norms no longer split into two classes.
        if offset.iter().any(|x| x.abs() > 1e-3) {
            let err = analyze_bipartite(&moved, &Tolerance::default()).unwrap_err();
            prop_assert_eq!(err.reason, Reason::RadiusSpread);
        }
    }

    #[test]
    fn certificates_verify(
        tau1 in prop::sample::select(vec![vec![4, 6, 6], vec![4, 6, 8], vec![4, 6, 10], vec![4, 4, 6], vec![4, 4, 10]]),
        picks in prop::collection::vec(0usize..3, 3..7),
    ) {
        let t1 = TypeSignature::new(tau1.clone());
        let t2 = TypeSignature::new(picks.iter().map(|&i| tau1[i]).collect());
        match is_infeasible_pair(&t1, &t2) {
            Verdict::Infeasible(c) => {
                prop_assert!(c.verify());
                prop_assert!(c.lhs >= c.rhs);
            }
            Verdict::NotRefuted { lhs, rhs, .. } => prop_assert!(lhs < rhs),
            Verdict::UndecidableByBudget { .. } => prop_assert!(false, "all entries come from tau1"),
        }
    }

    #[test]
    fn longer_types_stay_infeasible(
        tau2 in prop::collection::vec(prop::sample::select(vec![4usize, 6, 10]), 3..5),
        ext in prop::collection::vec(prop::sample::select(vec![4usize, 6, 10]), 1..3),
    ) {
        let t1 = TypeSignature::new(vec![4, 6, 10]);
        let t2 = TypeSignature::new(tau2);
        if is_infeasible_pair(&t1, &t2).is_infeasible() {
            prop_assert!(check_subtype_monotonicity(&t1, &t2, &ext));
        }
    }

    #[test]
    fn k_value_is_additive(
        a in prop::collection::vec(2usize..20, 0..5),
        b in prop::collection::vec(2usize..20, 0..5),
    ) {
        let a: Vec<usize> = a.into_iter().map(|x| 2 * x).collect();
        let b: Vec<usize> = b.into_iter().map(|x| 2 * x).collect();
        let joined: Vec<usize> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(k_value(&joined), &k_value(&a) + &k_value(&b));
    }
}

fn same_shape(a: &Polytope, b: &Polytope) -> bool {
    a.dim == b.dim
        && a.edges == b.edges
        && a.vertices.len() == b.vertices.len()
        && a.vertices
            .iter()
            .zip(&b.vertices)
            .all(|(x, y)| x.dist(y) <= 1e-12)
}

#[test]
fn every_instance_survives_serialization() {
    for (name, p) in catalog::instances().unwrap() {
        let off = from_off(&to_off(&p)).unwrap();
        assert!(same_shape(&p, &off), "{name}: OFF");
        let json = from_json(&to_json(&p).unwrap()).unwrap();
        assert!(same_shape(&p, &json), "{name}: JSON");
        assert_eq!(json.faces, p.faces, "{name}: faces");
    }
}

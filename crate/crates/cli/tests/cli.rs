use std::path::Path;
use std::process::{Command, Output};

fn bipoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bipoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn gen(dir: &Path, file: &str, args: &[&str]) -> String {
    let path = dir.join(file);
    let path = path.to_str().unwrap().to_string();
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--output", &path]);
    let o = bipoly(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn generate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let rd = gen(
        dir.path(),
        "rd.off",
        &["rhombic-dodecahedron", "--format", "off"],
    );
    let text = std::fs::read_to_string(&rd).unwrap();
    assert!(text.starts_with("OFF\n"));
    assert!(text.lines().any(|l| l == "14 12 24"));

    let o = bipoly(&["generate", "hyperprism", "--k", "3", "--folds", "2"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 36);

    let o = bipoly(&[
        "generate",
        "bipartite-polygon",
        "--r1",
        "1",
        "--r2",
        "2",
        "--k",
        "2",
    ]);
    // r2 cos(pi/2) = 0 < r1, so this square-like 4-gon is convex.
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn analyze_examples() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            "rhombic-triacontahedron",
            "strictly bipartite; edge-transitive; not vertex-transitive",
        ),
        ("cube", "bipartite (r₁=r₂); vertex- and edge-transitive"),
        ("bilinski-dodecahedron", "not bipartite: class conflict"),
    ];
    for (name, want) in cases {
        let path = gen(dir.path(), &format!("{name}.json"), &[name]);
        let o = bipoly(&["analyze", &path]);
        assert_eq!(code(&o), 0);
        let first = stdout(&o).lines().next().unwrap_or_default().to_string();
        assert!(first.starts_with(want), "{name}: {first}");
    }
}

#[test]
fn off_and_json_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["rhombic-dodecahedron", "rhombic-icosahedron", "near-miss"] {
        let off = gen(
            dir.path(),
            &format!("{name}.off"),
            &[name, "--format", "off"],
        );
        let json = gen(
            dir.path(),
            &format!("{name}.json"),
            &[name, "--format", "json"],
        );
        let a = stdout(&bipoly(&["analyze", &off]));
        let b = stdout(&bipoly(&["analyze", &json]));
        assert!(!a.is_empty());
        assert_eq!(a, b, "{name}");
        let a = stdout(&bipoly(&["--json", "symmetry", &off]));
        let b = stdout(&bipoly(&["--json", "symmetry", &json]));
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&bipoly(&["generate", "dodecagon"])), 2);
    assert_eq!(code(&bipoly(&["generate", "cube", "--d", "0"])), 2);
    assert_eq!(
        code(&bipoly(&[
            "generate",
            "bipartite-polygon",
            "--r1",
            "1",
            "--r2",
            "3",
            "--k",
            "3"
        ])),
        2
    );
    assert_eq!(code(&bipoly(&["analyze", "/no/such/file.off"])), 2);
    assert_eq!(code(&bipoly(&["--tolerance", "-1", "tables"])), 2);
    assert_eq!(code(&bipoly(&["verify-paper", "--criterion", "14"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.off");
    std::fs::write(&bad, "OFF\n3 0 0\n0 0 0\n1 0\n").unwrap();
    assert_eq!(code(&bipoly(&["analyze", bad.to_str().unwrap()])), 2);
    // A point inside the hull of the others.
    let inner = dir.path().join("inner.off");
    std::fs::write(&inner, "OFF\n5 0 0\n1 0 0\n0 1 0\n0 0 1\n-1 -1 -1\n0 0 0\n").unwrap();
    assert_eq!(code(&bipoly(&["analyze", inner.to_str().unwrap()])), 2);
}

#[test]
fn tables_are_stable_and_match() {
    let a = bipoly(&["tables", "--expected"]);
    assert_eq!(code(&a), 0);
    let b = bipoly(&["tables", "--expected"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    for lhs in ["4/30", "14/30", "9/12", "4/6"] {
        assert!(text.contains(lhs), "missing {lhs}");
    }
    let o = bipoly(&["--json", "tables", "--expected"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn nearmiss_report() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.off");
    let o = bipoly(&["nearmiss", "--output", q.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("gap = 0.4057%"), "{text}");
    assert!(text.contains("ratio = 1.00405708"), "{text}");
    assert!(text.contains("35 - 55φ"), "{text}");
    assert!(std::fs::read_to_string(&q)
        .unwrap()
        .lines()
        .any(|l| l == "102 80 180"));

    let o = bipoly(&["nearmiss", "--variant", "tangent"]);
    assert!(stdout(&o).contains("edge tangent: true"));
    assert!(stdout(&o).contains("UNEQUAL_EDGES"));
}

#[test]
fn verify_command_passes() {
    let o = bipoly(&["verify-paper"]);
    let text = stdout(&o);
    assert_eq!(code(&o), 0, "{text}{}", String::from_utf8_lossy(&o.stderr));
    let checks = text.lines().filter(|l| l.starts_with("[PASS]")).count();
    assert!(checks >= 30, "{checks} checks");
    assert!(!text.contains("[FAIL]"));

    let o = bipoly(&["--json", "verify-paper", "--criterion", "9"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["criterion"] == 9));
}

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bipoly::bipartite::{dossier, Dossier};
use bipoly::cases::{compare_with_expected, render_tables, reproduce_tables};
use bipoly::catalog::{self, Params, NAMES};
use bipoly::near_miss::{construct_q, near_miss_report, Variant};
use bipoly::polytope::{in_convex_position, io, Point, Polytope};
use bipoly::scalar::Tolerance;
use bipoly::symmetry::{classify_transitivity, symmetry_group_centered, TransitivityReport};
use bipoly::verify;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Stdout writes that tolerate a closed pipe (`bipoly ... | head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "bipoly",
    version,
    about = "Bipartite and edge-transitive polytopes"
)]
struct Cli {
    /// Absolute and relative epsilon for float comparisons.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Print a JSON payload instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a polytope from the catalog and write it out.
    Generate(GenerateArgs),
    /// Bipartite verdict, parameters, angles, vertex types, transitivity.
    Analyze { path: PathBuf },
    /// Symmetry group order, generators, and orbits.
    Symmetry { path: PathBuf },
    /// Recompute the adjacent-pair infeasibility tables.
    Tables {
        /// Also compare against the transcribed tables; exit 1 on mismatch.
        #[arg(long)]
        expected: bool,
    },
    /// Report on the near-miss polyhedron Q.
    Nearmiss {
        #[arg(long, default_value = "equilateral")]
        variant: Variant,
        /// Also write Q to this file (`.json` for JSON, OFF otherwise).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run every acceptance criterion.
    VerifyPaper {
        /// Restrict to these criteria (1-13); repeatable.
        #[arg(long = "criterion", value_parser = clap::value_parser!(u8).range(1..=13))]
        criteria: Vec<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Off,
    Json,
}

#[derive(clap::Args)]
struct GenerateArgs {
    /// One of the catalog names (see `--help`).
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(NAMES))]
    name: String,
    #[arg(long)]
    r1: Option<f64>,
    #[arg(long)]
    r2: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    half_edge: Option<f64>,
    #[arg(long)]
    folds: Option<usize>,
    /// Reflection group, e.g. `A3`, `H3`, `I1+I2(5)`.
    #[arg(long)]
    group: Option<String>,
    /// Comma-separated seed point for permutahedra.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    seed: Option<Vec<f64>>,
    #[arg(long)]
    stretch: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Exit 1: a verification failed. Exit 2: bad input.
enum Failure {
    Verification(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match cli.tolerance {
        Some(eps) if eps > 0.0 && eps.is_finite() => Tolerance::uniform(eps),
        Some(eps) => {
            eprintln!("error: tolerance must be positive, got {eps}");
            return ExitCode::from(2);
        }
        None => Tolerance::default(),
    };
    let out = match cli.command {
        Command::Generate(args) => generate(args),
        Command::Analyze { path } => analyze(&path, &tol, cli.json),
        Command::Symmetry { path } => symmetry(&path, cli.json),
        Command::Tables { expected } => tables(expected, cli.json),
        Command::Nearmiss { variant, output } => nearmiss(variant, output.as_deref(), cli.json),
        Command::VerifyPaper { criteria } => verify_all(&criteria, cli.json),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("FAILED: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_polytope(p: &Polytope, format: Format, path: Option<&Path>) -> Outcome {
    let text = match format {
        Format::Off => io::to_off(p),
        Format::Json => io::to_json(p).map_err(usage)? + "\n",
    };
    match path {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn counts(p: &Polytope) -> String {
    match p.face_count() {
        Some(f) => format!(
            "{} vertices, {} edges, {f} faces",
            p.vertex_count(),
            p.edge_count()
        ),
        None => format!("{} vertices, {} edges", p.vertex_count(), p.edge_count()),
    }
}

fn generate(a: GenerateArgs) -> Outcome {
    let params = Params {
        r1: a.r1,
        r2: a.r2,
        k: a.k,
        d: a.d,
        half_edge: a.half_edge,
        folds: a.folds,
        group: a.group,
        seed: a.seed,
        stretch: a.stretch,
    };
    let p = catalog::named(&a.name, &params).map_err(usage)?;
    write_polytope(&p, a.format, a.output.as_deref())?;
    // Keep standard output clean when it carries the file.
    match &a.output {
        Some(path) => outln!("{}: {}", path.display(), counts(&p)),
        None => eprintln!("{}", counts(&p)),
    }
    Ok(())
}

/// Reads a polytope and moves its vertex centroid to the origin.
fn load(path: &Path) -> Result<(Polytope, Point), Failure> {
    let p = io::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if let Some(v) = in_convex_position(&p).map_err(usage)? {
        return Err(usage(format!(
            "{}: vertex {v} lies in the hull of the others",
            path.display()
        )));
    }
    let shift = p.centroid().scale(-1.0);
    Ok((p.translated(&shift), shift))
}

fn transitivity_phrase(t: &TransitivityReport) -> &'static str {
    match (t.vertex_transitive, t.edge_transitive) {
        (true, true) => "vertex- and edge-transitive",
        (false, true) => "edge-transitive; not vertex-transitive",
        (true, false) => "vertex-transitive; not edge-transitive",
        (false, false) => "neither vertex- nor edge-transitive",
    }
}

fn summary(d: &Dossier, t: &TransitivityReport) -> String {
    let verdict = match (&d.reason, d.strict) {
        (Some(r), _) => format!("not bipartite: {} ({})", r.detail, r.reason),
        (None, true) => "strictly bipartite".to_string(),
        (None, false) => "bipartite (r₁=r₂)".to_string(),
    };
    format!("{verdict}; {}", transitivity_phrase(t))
}

fn analyze(path: &Path, tol: &Tolerance, as_json: bool) -> Outcome {
    let (p, shift) = load(path)?;
    let d = dossier(&p, tol);
    let t = classify_transitivity(&p).map_err(usage)?;
    let line = summary(&d, &t);
    if as_json {
        let payload = json!({
            "summary": line,
            "counts": { "vertices": p.vertex_count(), "edges": p.edge_count(), "faces": p.face_count() },
            "bipartite": d,
            "transitivity": t,
        });
        outln!("{}", serde_json::to_string_pretty(&payload).map_err(usage)?);
        return Ok(());
    }
    let mut s = String::new();
    let _ = writeln!(s, "{line}");
    let _ = writeln!(s, "dimension {}, {}", p.dim, counts(&p));
    if shift.norm() > 1e-12 * p.scale().max(1.0) {
        let _ = writeln!(
            s,
            "centred at the vertex centroid (shift {:.3e})",
            shift.norm()
        );
    }
    if let (Some(par), Some(classes)) = (&d.params, &d.classes) {
        let _ = writeln!(
            s,
            "r1 = {:.12}, r2 = {:.12}, edge = {:.12}, rho = {:.12}",
            par.r1, par.r2, par.ell, par.rho
        );
        let _ = writeln!(
            s,
            "|V1| = {}, |V2| = {}",
            classes[0].len(),
            classes[1].len()
        );
    }
    if let Some(tangent) = d.edge_tangent {
        let _ = writeln!(s, "edge-tangent: {tangent}");
    }
    if let Some(table) = &d.angle_table {
        let _ = writeln!(s, "spherical edge length {:.12}", table.ell_s);
        let _ = writeln!(
            s,
            "  2k  count   alpha1    alpha2    beta1     beta2     (degrees)"
        );
        for a in table.types.values() {
            let _ = writeln!(
                s,
                "  {:>2}  {:>5}   {:>8.4}  {:>8.4}  {:>8.4}  {:>8.4}",
                a.face_size,
                a.count,
                a.alpha1.to_degrees(),
                a.alpha2.to_degrees(),
                a.beta1.to_degrees(),
                a.beta2.to_degrees()
            );
        }
    }
    if let Some(types) = &d.vertex_types {
        let list: Vec<String> = types.iter().map(|(k, n)| format!("{k} x{n}")).collect();
        let _ = writeln!(s, "vertex types: {}", list.join(", "));
    }
    let _ = writeln!(
        s,
        "symmetry group order {}; {} vertex, {} edge, {} arc orbits",
        t.group_order,
        t.vertex_orbits.len(),
        t.edge_orbits.len(),
        t.arc_orbits.len()
    );
    let _ = write!(s, "classification: {}", t.classification);
    outln!("{s}");
    Ok(())
}

fn symmetry(path: &Path, as_json: bool) -> Outcome {
    let (p, _) = load(path)?;
    let (_, g) = symmetry_group_centered(&p).map_err(usage)?;
    let t = classify_transitivity(&p).map_err(usage)?;
    if as_json {
        let payload = json!({
            "order": g.order,
            "generators": g.generator_perms,
            "transitivity": t,
        });
        outln!("{}", serde_json::to_string_pretty(&payload).map_err(usage)?);
        return Ok(());
    }
    outln!("order {}", g.order);
    outln!("{} generators", g.generators.len());
    for (name, orbits) in [
        ("vertex", &t.vertex_orbits),
        ("edge", &t.edge_orbits),
        ("arc", &t.arc_orbits),
    ] {
        let sizes: Vec<String> = orbits.iter().map(|o| o.len().to_string()).collect();
        outln!(
            "{name} orbits: {} (sizes {})",
            orbits.len(),
            sizes.join(", ")
        );
    }
    outln!("{}", t.classification);
    Ok(())
}

fn tables(expected: bool, as_json: bool) -> Outcome {
    let set = reproduce_tables();
    let problems = if expected {
        compare_with_expected(&set)
    } else {
        Vec::new()
    };
    if as_json {
        let payload = json!({ "tables": set, "mismatches": problems });
        outln!("{}", serde_json::to_string_pretty(&payload).map_err(usage)?);
    } else {
        out!("{}", render_tables(&set));
        if expected && problems.is_empty() {
            outln!("all rows match the expected tables");
        }
    }
    match problems.first() {
        Some(first) => Err(Failure::Verification(format!(
            "{} mismatched rows, first: {first}",
            problems.len()
        ))),
        None => Ok(()),
    }
}

fn nearmiss(variant: Variant, output: Option<&Path>, as_json: bool) -> Outcome {
    let report = near_miss_report(variant).map_err(usage)?;
    if let Some(path) = output {
        let q = construct_q(variant).map_err(usage)?;
        let is_json = path.extension().is_some_and(|e| e == "json");
        let format = if is_json { Format::Json } else { Format::Off };
        write_polytope(&q, format, Some(path))?;
    }
    if as_json {
        outln!("{}", serde_json::to_string_pretty(&report).map_err(usage)?);
    } else {
        outln!("{report}");
    }
    Ok(())
}

fn verify_all(criteria: &[u8], as_json: bool) -> Outcome {
    let checks = verify::run(criteria);
    if as_json {
        outln!("{}", serde_json::to_string_pretty(&checks).map_err(usage)?);
    } else {
        for c in &checks {
            outln!("{c}");
        }
        let passed = checks.iter().filter(|c| c.pass).count();
        outln!("{passed}/{} checks passed", checks.len());
    }
    match checks.iter().find(|c| !c.pass) {
        Some(c) => Err(Failure::Verification(format!(
            "criterion {} ({}): {}",
            c.criterion,
            verify::criterion_name(c.criterion),
            c.name
        ))),
        None => Ok(()),
    }
}

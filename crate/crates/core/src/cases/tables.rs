//! The adjacent-pair tables, recomputed from scratch and checked against a
//! transcribed copy.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{is_infeasible_pair, EpsilonBudget, Verdict};
use crate::bipartite::TypeSignature;
use crate::scalar::Rational;

/// Largest `k` in the sweep over the `(4,4,2k)` rows.
pub const SWEEP_MAX_K: u32 = 50;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    /// As written in the table, not sorted.
    pub tau2: String,
    pub lhs: String,
    pub rhs: String,
    pub grouping: Vec<Vec<usize>>,
    pub infeasible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairTable {
    pub tau1: String,
    pub budget: String,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub k: u32,
    pub lhs: Rational,
    pub rhs: Rational,
    pub infeasible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParametricRow {
    pub tau2: String,
    pub lhs: String,
    pub rhs: String,
    /// Smallest `k` in the sweep for which the pair is infeasible; every
    /// larger `k` is infeasible too.
    pub infeasible_from: Option<u32>,
    /// `lhs - rhs` strictly increases along the sweep.
    pub gap_increasing: bool,
    pub sweep: Vec<SweepPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableSet {
    pub tables: Vec<PairTable>,
    pub parametric_tau1: String,
    pub parametric: Vec<ParametricRow>,
    pub monotonicity: String,
}

/// One transcribed row: `lhs` and `rhs` over the table's denominator for
/// fixed tables, or `a - b/k` and `c/k` for the `(4,4,2k)` rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedRow {
    Fixed {
        tau1: &'static str,
        tau2: &'static str,
        lhs: &'static str,
        rhs: &'static str,
    },
    Parametric {
        tau2: &'static str,
        /// `lhs = a.0/a.1 - b/k`
        a: (i64, i64),
        b: i64,
        /// `rhs = c/k`
        c: i64,
        infeasible_from: u32,
    },
}

/// The tables as printed, transcribed by hand.
pub fn expected_tables() -> Vec<ExpectedRow> {
    use ExpectedRow::*;
    let fixed = |tau1, tau2, lhs, rhs| Fixed {
        tau1,
        tau2,
        lhs,
        rhs,
    };
    vec![
        fixed("(4,6,10)", "(6,10,6)", "4/30", "2/30"),
        fixed("(4,6,10)", "(6,10,10)", "8/30", "2/30"),
        fixed("(4,6,10)", "(6,10,4,4)", "14/30", "2/30"),
        fixed("(4,6,8)", "(6,8,8)", "2/12", "2/12"),
        fixed("(4,6,8)", "(6,8,4,4)", "5/12", "2/12"),
        fixed("(4,6,8)", "(6,8,4,6)", "7/12", "2/12"),
        fixed("(4,6,8)", "(6,8,6,6)", "9/12", "3/12"),
        fixed("(4,6,6)", "(6,6,4,4)", "2/6", "2/6"),
        fixed("(4,6,6)", "(6,6,6,4)", "3/6", "2/6"),
        fixed("(4,6,6)", "(6,6,6,6)", "4/6", "2/6"),
        Parametric {
            tau2: "(4,2k,4,4,4)",
            a: (1, 1),
            b: 1,
            c: 2,
            infeasible_from: 3,
        },
        Parametric {
            tau2: "(4,2k,4,4,2k)",
            a: (3, 2),
            b: 2,
            c: 2,
            infeasible_from: 3,
        },
        Parametric {
            tau2: "(4,2k,4,2k)",
            a: (1, 1),
            b: 2,
            c: 2,
            infeasible_from: 4,
        },
    ]
}

fn parse_type(s: &str, k: u32) -> Vec<usize> {
    s.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|x| match x {
            "2k" => 2 * k as usize,
            _ => x.parse().expect("table entries are integers"),
        })
        .collect()
}

fn denominator(tau1: &[usize]) -> i64 {
    // The tables write everything over lcm of the 1-vertex's k values.
    let ks: Vec<i64> = tau1.iter().map(|&e| e as i64 / 2).collect();
    ks.iter().fold(1, |l, &k| num_integer::lcm(l, k))
}

fn fixed_table(tau1: &str, rows: &[&str]) -> PairTable {
    let t1 = parse_type(tau1, 0);
    let den = denominator(&t1);
    let sig1 = TypeSignature::new(t1);
    let budget = EpsilonBudget::new(&sig1).expect("table types have positive budget");
    let rows = rows
        .iter()
        .map(|&tau2| {
            let v = is_infeasible_pair(&sig1, &TypeSignature::new(parse_type(tau2, 0)));
            let (lhs, rhs, grouping) = match &v {
                Verdict::Infeasible(c) => (c.lhs.clone(), c.rhs.clone(), c.grouping.clone()),
                Verdict::NotRefuted { lhs, rhs, grouping } => {
                    (lhs.clone(), rhs.clone(), grouping.clone())
                }
                Verdict::UndecidableByBudget { .. } => unreachable!("table rows use tau1 entries"),
            };
            TableRow {
                tau2: tau2.to_string(),
                lhs: lhs.over(den),
                rhs: rhs.over(den),
                grouping,
                infeasible: v.is_infeasible(),
            }
        })
        .collect();
    PairTable {
        tau1: tau1.to_string(),
        budget: budget.bound.over(den),
        rows,
    }
}

fn parametric_row(tau2: &str, lhs: &str, rhs: &str) -> ParametricRow {
    let sweep: Vec<SweepPoint> = (3..=SWEEP_MAX_K)
        .map(|k| {
            let t1 = TypeSignature::new(vec![4, 4, 2 * k as usize]);
            let t2 = TypeSignature::new(parse_type(tau2, k));
            let (l, r, inf) = match is_infeasible_pair(&t1, &t2) {
                Verdict::Infeasible(c) => (c.lhs, c.rhs, true),
                Verdict::NotRefuted { lhs, rhs, .. } => (lhs, rhs, false),
                Verdict::UndecidableByBudget { .. } => unreachable!("entries are 4 and 2k"),
            };
            SweepPoint {
                k,
                lhs: l,
                rhs: r,
                infeasible: inf,
            }
        })
        .collect();
    let first = sweep.iter().position(|p| p.infeasible);
    let infeasible_from = first
        .filter(|&i| sweep[i..].iter().all(|p| p.infeasible))
        .map(|i| sweep[i].k);
    let gaps: Vec<Rational> = sweep.iter().map(|p| &p.lhs - &p.rhs).collect();
    let gap_increasing = gaps.windows(2).all(|w| w[1] > w[0]);
    ParametricRow {
        tau2: tau2.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        infeasible_from,
        gap_increasing,
        sweep,
    }
}

pub fn reproduce_tables() -> TableSet {
    let tables = vec![
        fixed_table("(4,6,10)", &["(6,10,6)", "(6,10,10)", "(6,10,4,4)"]),
        fixed_table(
            "(4,6,8)",
            &["(6,8,8)", "(6,8,4,4)", "(6,8,4,6)", "(6,8,6,6)"],
        ),
        fixed_table("(4,6,6)", &["(6,6,4,4)", "(6,6,6,4)", "(6,6,6,6)"]),
    ];
    let parametric = vec![
        parametric_row("(4,2k,4,4,4)", "1-1/k", "2/k"),
        parametric_row("(4,2k,4,4,2k)", "3/2-2/k", "2/k"),
        parametric_row("(4,2k,4,2k)", "1-2/k", "2/k"),
    ];
    let all_increasing = parametric.iter().all(|r| r.gap_increasing);
    let monotonicity =
        format!(
        "lhs - rhs has the form a - b/k with b > 0 in every (4,4,2k) row, so it increases with k; \
         sweep k = 3..{SWEEP_MAX_K} {}",
        if all_increasing { "agrees" } else { "DISAGREES" }
    );
    TableSet {
        tables,
        parametric_tau1: "(4,4,2k)".into(),
        parametric,
        monotonicity,
    }
}

/// Differences between the recomputed tables and the transcribed copy;
/// empty when they agree.
pub fn compare_with_expected(set: &TableSet) -> Vec<String> {
    let mut problems = Vec::new();
    let mut fixed = set
        .tables
        .iter()
        .flat_map(|t| t.rows.iter().map(move |r| (t.tau1.as_str(), r)));
    let mut param = set.parametric.iter();
    for e in expected_tables() {
        match e {
            ExpectedRow::Fixed {
                tau1,
                tau2,
                lhs,
                rhs,
            } => match fixed.next() {
                Some((t1, row)) => {
                    let got = (
                        t1,
                        row.tau2.as_str(),
                        row.lhs.as_str(),
                        row.rhs.as_str(),
                        row.infeasible,
                    );
                    if got != (tau1, tau2, lhs, rhs, true) {
                        problems.push(format!(
                            "{tau1} {tau2}: expected {lhs} vs {rhs} infeasible, got {t1} {} {} vs {} infeasible={}",
                            row.tau2, row.lhs, row.rhs, row.infeasible
                        ));
                    }
                }
                None => problems.push(format!("{tau1} {tau2}: row missing")),
            },
            ExpectedRow::Parametric {
                tau2,
                a,
                b,
                c,
                infeasible_from,
            } => {
                let Some(row) = param.next() else {
                    problems.push(format!("(4,4,2k) {tau2}: row missing"));
                    continue;
                };
                if row.tau2 != tau2 {
                    problems.push(format!("(4,4,2k): expected row {tau2}, got {}", row.tau2));
                }
                for p in &row.sweep {
                    let k = p.k as i64;
                    let lhs = Rational::new(a.0, a.1) - Rational::new(b, k);
                    let rhs = Rational::new(c, k);
                    let inf = p.k >= infeasible_from;
                    if (&p.lhs, &p.rhs, p.infeasible) != (&lhs, &rhs, inf) {
                        problems.push(format!(
                            "{tau2} at k={k}: expected {lhs} vs {rhs} infeasible={inf}, got {} vs {} infeasible={}",
                            p.lhs, p.rhs, p.infeasible
                        ));
                    }
                }
                if row.infeasible_from != Some(infeasible_from) {
                    problems.push(format!(
                        "{tau2}: expected infeasible from k={infeasible_from}, got {:?}",
                        row.infeasible_from
                    ));
                }
                if !row.gap_increasing {
                    problems.push(format!("{tau2}: lhs - rhs not increasing in k"));
                }
            }
        }
    }
    if let Some((t1, row)) = fixed.next() {
        problems.push(format!("unexpected row {t1} {}", row.tau2));
    }
    if let Some(row) = param.next() {
        problems.push(format!("unexpected row (4,4,2k) {}", row.tau2));
    }
    problems
}

fn grouping_text(g: &[Vec<usize>]) -> String {
    g.iter()
        .map(|grp| {
            let e: Vec<String> = grp.iter().map(|x| format!("e{}", x / 2)).collect();
            format!("({})", e.join("+"))
        })
        .collect::<Vec<_>>()
        .join("+")
}

/// Aligned plain-text rendering.
pub fn render_tables(set: &TableSet) -> String {
    let mut out = String::new();
    for t in &set.tables {
        let _ = writeln!(out, "tau1 = {}    K(tau1) - 1 = {}", t.tau1, t.budget);
        let _ = writeln!(
            out,
            "  {:<14} {:>8}  {:>8}  {:<24} verdict",
            "tau2", "s-2-K", "bound", "grouping"
        );
        for r in &t.rows {
            let _ = writeln!(
                out,
                "  {:<14} {:>8}  {:>8}  {:<24} {}",
                r.tau2,
                r.lhs,
                r.rhs,
                grouping_text(&r.grouping),
                if r.infeasible {
                    "infeasible"
                } else {
                    "not refuted"
                }
            );
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "tau1 = {}, 2k >= 6    K(tau1) - 1 = 1/k",
        set.parametric_tau1
    );
    let _ = writeln!(
        out,
        "  {:<14} {:>8}  {:>8}  infeasible",
        "tau2", "s-2-K", "bound"
    );
    for r in &set.parametric {
        let from = match r.infeasible_from {
            Some(k) => format!("for k >= {k}"),
            None => "never".into(),
        };
        let _ = writeln!(
            out,
            "  {:<14} {:>8}  {:>8}  {from} (checked k = 3..{SWEEP_MAX_K})",
            r.tau2, r.lhs, r.rhs
        );
    }
    let _ = writeln!(out, "\n{}", set.monotonicity);
    out
}

//! Exact bookkeeping for the combinatorial case analysis of strictly
//! bipartite polyhedra.
//!
//! A vertex type `(2k_1, ..., 2k_s)` lists the face sizes at a vertex. Its
//! `K` value is `sum 1/k_i`. The deviations `eps_k` of interior angles from
//! the regular ones are never evaluated: the only facts used are that they
//! are positive and that at a 1-vertex of type `t1` any sub-sum of its
//! deviations is below `K(t1) - 1`.

mod arguments;
mod tables;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use arguments::{
    determine_r, dihedral_sum_obstruction, dihedral_triples, exclude_4442k, exclusive_types_check,
    hexagon_parity, hexagon_parity_argument, incompatible_1_types, CoexistenceReport,
    DihedralTriple, HexagonParity, PairVerdict, RTrace, TypePair,
};
pub use tables::{
    compare_with_expected, expected_tables, render_tables, reproduce_tables, ExpectedRow,
    PairTable, ParametricRow, SweepPoint, TableRow, TableSet,
};

use crate::bipartite::TypeSignature;
use crate::scalar::Rational;

/// `K(t) = sum 1/k` for entries `2k`.
pub fn k_value(entries: &[usize]) -> Rational {
    entries.iter().map(|&e| Rational::new(2, e as i64)).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KERecord {
    pub tau: TypeSignature,
    #[serde(rename = "K")]
    pub k: Rational,
    pub s: usize,
}

impl KERecord {
    pub fn new(entries: Vec<usize>) -> Self {
        let k = k_value(&entries);
        let s = entries.len();
        Self {
            tau: TypeSignature::new(entries),
            k,
            s,
        }
    }

    /// Name of the reflection group whose permutahedron has 1-vertices of
    /// this type.
    pub fn group(&self) -> String {
        match self.tau.entries.as_slice() {
            [4, 4, 4] => "I1⊕I1⊕I1".into(),
            [4, 4, c] => format!("I1⊕I2({})", c / 2),
            [4, 6, 6] => "A3".into(),
            [4, 6, 8] => "B3".into(),
            [4, 6, 10] => "H3".into(),
            _ => "?".into(),
        }
    }
}

/// Possible 1-vertex types: triples of even entries `>= 4` with `K > 1`.
/// Only the `(4,4,2k)` family is unbounded; it is cut at `2k <= max_2k`.
pub fn enumerate_1_types(max_2k: usize) -> Vec<KERecord> {
    // K > 1 forces a = 4, and then b = 4 or (b = 6, c <= 10).
    let top = max_2k.max(10);
    let mut out = Vec::new();
    for a in (4..=top).step_by(2) {
        for b in (a..=top).step_by(2) {
            for c in (b..=top).step_by(2) {
                let r = KERecord::new(vec![a, b, c]);
                let in_family = a == 4 && b == 4;
                if r.k > 1 && (!in_family || c <= max_2k) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// The bound `K(t1) - 1` on any sub-sum of deviations at a 1-vertex of
/// type `t1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonBudget {
    pub source_tau: TypeSignature,
    pub bound: Rational,
}

impl EpsilonBudget {
    /// `None` when the bound is not positive: such a type cannot occur at
    /// a 1-vertex at all.
    pub fn new(tau1: &TypeSignature) -> Option<Self> {
        let bound = k_value(&tau1.entries) - Rational::one();
        bound.is_positive().then(|| Self {
            source_tau: tau1.clone(),
            bound,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfeasibilityCertificate {
    pub tau1: TypeSignature,
    pub tau2: TypeSignature,
    /// Partition of `tau2`'s entries into sub-multisets of `tau1`.
    pub grouping: Vec<Vec<usize>>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl InfeasibilityCertificate {
    /// Recomputes both sides from the types and grouping.
    pub fn verify(&self) -> bool {
        let Some(budget) = EpsilonBudget::new(&self.tau1) else {
            return false;
        };
        let mut used: Vec<usize> = self.grouping.concat();
        used.sort_unstable();
        let lhs = Rational::from_integer(self.tau2.len() as i64 - 2) - k_value(&self.tau2.entries);
        let rhs = Rational::from_integer(self.grouping.len() as i64) * &budget.bound;
        used == self.tau2.entries
            && self
                .grouping
                .iter()
                .all(|g| !g.is_empty() && is_submultiset(g, &self.tau1.entries))
            && lhs == self.lhs
            && rhs == self.rhs
            && lhs >= rhs
    }
}

impl fmt::Display for InfeasibilityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups: Vec<String> = self
            .grouping
            .iter()
            .map(|g| {
                let e: Vec<String> = g.iter().map(|x| format!("e{}", x / 2)).collect();
                format!("({})", e.join("+"))
            })
            .collect();
        write!(
            f,
            "{} next to {}: {} >= {} = bound of {}",
            self.tau1,
            self.tau2,
            self.lhs,
            self.rhs,
            groups.join("+")
        )
    }
}

/// Outcome of the budget argument for an adjacent pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Infeasible(InfeasibilityCertificate),
    /// The best grouping does not produce a contradiction.
    NotRefuted {
        lhs: Rational,
        rhs: Rational,
        grouping: Vec<Vec<usize>>,
    },
    /// Some entries of `tau2` do not occur in `tau1`, so the budget says
    /// nothing about their deviations.
    UndecidableByBudget {
        uncovered: Vec<usize>,
    },
}

impl Verdict {
    pub fn certificate(&self) -> Option<&InfeasibilityCertificate> {
        match self {
            Verdict::Infeasible(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Verdict::Infeasible(_))
    }
}

fn counts(xs: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &x in xs {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

fn is_submultiset(small: &[usize], big: &[usize]) -> bool {
    let b = counts(big);
    counts(small)
        .iter()
        .all(|(x, n)| b.get(x).is_some_and(|m| n <= m))
}

/// Partition of `items` into the fewest sub-multisets of `support`.
fn minimal_grouping(items: &[usize], support: &[usize]) -> Vec<Vec<usize>> {
    fn go(
        items: &[usize],
        support: &[usize],
        groups: &mut Vec<Vec<usize>>,
        best: &mut Option<Vec<Vec<usize>>>,
    ) {
        if best.as_ref().is_some_and(|b| groups.len() >= b.len()) {
            return;
        }
        let Some((&x, rest)) = items.split_first() else {
            *best = Some(groups.clone());
            return;
        };
        for i in 0..groups.len() {
            groups[i].push(x);
            if is_submultiset(&groups[i], support) {
                go(rest, support, groups, best);
            }
            groups[i].pop();
        }
        groups.push(vec![x]);
        go(rest, support, groups, best);
        groups.pop();
    }
    let mut sorted = items.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut best = None;
    go(&sorted, support, &mut Vec::new(), &mut best);
    let mut groups = best.unwrap_or_default();
    for g in &mut groups {
        g.sort_unstable();
    }
    groups.sort();
    groups
}

/// Tries to refute the adjacent pair `(tau1, tau2)`: at a 2-vertex of type
/// `tau2`, `E(tau2) > s - 2 - K(tau2)`, while grouping the entries of
/// `tau2` into `n` sub-multisets of `tau1` gives `E(tau2) < n (K(tau1)-1)`.
pub fn is_infeasible_pair(tau1: &TypeSignature, tau2: &TypeSignature) -> Verdict {
    let uncovered: Vec<usize> = tau2
        .entries
        .iter()
        .copied()
        .filter(|x| !tau1.entries.contains(x))
        .collect();
    let budget = match EpsilonBudget::new(tau1) {
        Some(b) if uncovered.is_empty() => b,
        _ => {
            return Verdict::UndecidableByBudget {
                uncovered: if uncovered.is_empty() {
                    tau2.entries.clone()
                } else {
                    uncovered
                },
            }
        }
    };
    let grouping = minimal_grouping(&tau2.entries, &tau1.entries);
    let lhs = Rational::from_integer(tau2.len() as i64 - 2) - k_value(&tau2.entries);
    let rhs = Rational::from_integer(grouping.len() as i64) * &budget.bound;
    if lhs >= rhs {
        Verdict::Infeasible(InfeasibilityCertificate {
            tau1: tau1.clone(),
            tau2: tau2.clone(),
            grouping,
            lhs,
            rhs,
        })
    } else {
        Verdict::NotRefuted { lhs, rhs, grouping }
    }
}

/// Whether an infeasible pair stays infeasible after appending
/// `extension` (entries of `tau1`) to `tau2`.
pub fn check_subtype_monotonicity(
    tau1: &TypeSignature,
    tau2: &TypeSignature,
    extension: &[usize],
) -> bool {
    if !is_infeasible_pair(tau1, tau2).is_infeasible() {
        return false;
    }
    let mut longer = tau2.entries.clone();
    longer.extend_from_slice(extension);
    is_infeasible_pair(tau1, &TypeSignature::new(longer)).is_infeasible()
}

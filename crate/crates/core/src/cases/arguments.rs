//! The special arguments that finish the case analysis: angle-sum
//! cancellations, the hexagon parity count, the degree of the remaining
//! 2-vertices, and the dihedral obstruction in dimension four.
//!
//! Spherical angles are handled only through two facts: around any vertex
//! they sum to exactly `2 pi`, and `k -> beta_i^k` is injective.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{enumerate_1_types, k_value};
use crate::bipartite::TypeSignature;
use crate::scalar::Rational;

/// Removes common entries of two multisets; returns the residues.
fn cancel(a: &[usize], b: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut left = a.to_vec();
    let mut right = Vec::new();
    for &x in b {
        match left.iter().position(|&y| y == x) {
            Some(i) => {
                left.remove(i);
            }
            None => right.push(x),
        }
    }
    left.sort_unstable();
    right.sort_unstable();
    (left, right)
}

fn uniform(xs: &[usize]) -> Option<usize> {
    let (&first, rest) = xs.split_first()?;
    rest.iter().all(|&x| x == first).then_some(first)
}

/// Two vertices of the same class with these types would give
/// `n beta^x = n beta^y` after cancelling, forcing `x = y`.
fn cancellation_contradicts(a: &[usize], b: &[usize]) -> bool {
    let (ra, rb) = cancel(a, b);
    ra.len() == rb.len() && matches!((uniform(&ra), uniform(&rb)), (Some(x), Some(y)) if x != y)
}

/// For `k` in `4..=max_k` with `2k` not in `{4, 6, 2k'}`, the pair
/// `((4,6,2k'), (6,2k',2k,4))` is infeasible: the deviations at the
/// 2-vertex split into a group bounded by the `(4,6,2k')` budget and one
/// `eps_k` bounded by the `(4,4,2k)` budget.
pub fn exclusive_types_check(kprime: u32, max_k: u32) -> bool {
    if !(3..=5).contains(&kprime) {
        return false;
    }
    let kp = kprime as i64;
    (4..=max_k as i64).filter(|&k| k != kp).all(|k| {
        let tau = [6, 2 * kp as usize, 2 * k as usize, 4];
        let lhs = Rational::from_integer(2) - k_value(&tau);
        let budget_46 = k_value(&[4, 6, 2 * kp as usize]) - Rational::one();
        let budget_44 = k_value(&[4, 4, 2 * k as usize]) - Rational::one();
        let rhs = budget_46 + budget_44;
        // Closed form of the same comparison.
        let closed = Rational::new(1, k) + Rational::new(1, kp) <= Rational::new(2, 3);
        (lhs >= rhs) == closed && closed
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairVerdict {
    Incompatible,
    NotExcluded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypePair {
    pub a: TypeSignature,
    pub b: TypeSignature,
    pub residue_a: Vec<usize>,
    pub residue_b: Vec<usize>,
    /// The rule as stated: same family never, mixed families only for
    /// `k != k'`.
    pub stated_rule: PairVerdict,
    /// Full cancellation: incompatible whenever the residues are uniform
    /// and different.
    pub cancellation: PairVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoexistenceReport {
    pub pairs: Vec<TypePair>,
    /// Every pair excluded by the stated rule is excluded by cancellation.
    pub stated_rule_sound: bool,
}

impl CoexistenceReport {
    pub fn find(&self, a: &[usize], b: &[usize]) -> Option<&TypePair> {
        let (a, b) = (
            TypeSignature::new(a.to_vec()),
            TypeSignature::new(b.to_vec()),
        );
        self.pairs
            .iter()
            .find(|p| (p.a == a && p.b == b) || (p.a == b && p.b == a))
    }
}

/// Which pairs of 1-vertex types can share a polyhedron.
pub fn incompatible_1_types(max_2k: usize) -> CoexistenceReport {
    let types = enumerate_1_types(max_2k);
    let verdict = |x: bool| {
        if x {
            PairVerdict::Incompatible
        } else {
            PairVerdict::NotExcluded
        }
    };
    let mut pairs = Vec::new();
    for (i, x) in types.iter().enumerate() {
        for y in &types[i + 1..] {
            let (a, b) = (&x.tau.entries, &y.tau.entries);
            let fam = |t: &[usize]| t[1];
            let stated = if fam(a) == fam(b) {
                true
            } else {
                // Mixed: (4,4,2k) against (4,6,2k').
                let (p, q) = if fam(a) == 4 { (a, b) } else { (b, a) };
                p[2] == q[2]
            };
            let (residue_a, residue_b) = cancel(a, b);
            pairs.push(TypePair {
                a: x.tau.clone(),
                b: y.tau.clone(),
                residue_a,
                residue_b,
                stated_rule: verdict(stated),
                cancellation: verdict(cancellation_contradicts(a, b)),
            });
        }
    }
    let stated_rule_sound = pairs.iter().all(|p| {
        p.stated_rule == PairVerdict::NotExcluded || p.cancellation == PairVerdict::Incompatible
    });
    CoexistenceReport {
        pairs,
        stated_rule_sound,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HexagonParity {
    /// Numbers of (6,6)-edges over labelings allowed by the 1-vertices.
    pub counts_from_1_vertices: BTreeSet<usize>,
    /// Numbers of (6,6)-edges over labelings allowed by the 2-vertices.
    pub counts_from_2_vertices: BTreeSet<usize>,
    pub labelings_1: usize,
    pub labelings_2: usize,
    pub disjoint: bool,
}

/// All `2^6` labelings of a hexagon's sides by (4,6) or (6,6). Vertex `v`
/// meets sides `v-1` and `v`; even vertices are 1-vertices.
pub fn hexagon_parity() -> HexagonParity {
    let mut c1 = BTreeSet::new();
    let mut c2 = BTreeSet::new();
    let (mut n1, mut n2) = (0, 0);
    let mut ok1 = Vec::new();
    let mut ok2 = Vec::new();
    for mask in 0u32..64 {
        let is66 = |side: usize| mask >> (side % 6) & 1 == 1;
        let at = |v: usize| is66((v + 5) % 6) as usize + is66(v) as usize;
        let count = mask.count_ones() as usize;
        if (0..6).step_by(2).all(|v| at(v) == 1) {
            c1.insert(count);
            n1 += 1;
            ok1.push(mask);
        }
        if (1..6).step_by(2).all(|v| at(v) % 2 == 0) {
            c2.insert(count);
            n2 += 1;
            ok2.push(mask);
        }
    }
    let disjoint = ok1.iter().all(|m| !ok2.contains(m));
    HexagonParity {
        counts_from_1_vertices: c1,
        counts_from_2_vertices: c2,
        labelings_1: n1,
        labelings_2: n2,
        disjoint,
    }
}

pub fn hexagon_parity_argument() -> bool {
    let h = hexagon_parity();
    h.disjoint
        && h.counts_from_1_vertices == BTreeSet::from([3])
        && h.counts_from_2_vertices.iter().all(|c| c % 2 == 0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RTrace {
    /// The unique surviving degree, if any.
    pub r: Option<u32>,
    /// Rejection reason for each candidate, `None` for survivors. Angles
    /// are in units of `pi`.
    pub candidates: BTreeMap<u32, Option<String>>,
    pub closed_form: String,
}

/// Degree `r` of the 2-vertices of type `(4^r)` next to `(4,6,4,6)`
/// 2-vertices and `(4,4,6)` 1-vertices. Candidates `3..=12` are checked;
/// the sum bound excludes every `r >= 6` by the closed form.
pub fn determine_r() -> RTrace {
    let mut candidates = BTreeMap::new();
    for r in 3u32..=12 {
        let ri = r as i64;
        let b2_2 = Rational::new(2, ri);
        let b2_3 = Rational::one() - Rational::new(2, ri);
        // k beta_1^k + k beta_2^k > 2(k - 1), in units of pi.
        let lb = |k: i64, b2: &Rational| Rational::new(2 * (k - 1), k) - b2;
        let b1_2 = lb(2, &b2_2);
        let b1_3 = lb(3, &b2_3);
        let sum = Rational::from_integer(2) * &b1_2 + &b1_3;
        let reason = if sum >= 2 {
            Some(format!("2 b1^2 + b1^3 > {sum} >= 2"))
        } else if b2_3 == b2_2 {
            Some(format!("b2^3 = b2^2 = {b2_2}"))
        } else if b1_3 >= 1 {
            Some(format!("b1^3 > {b1_3} >= 1"))
        } else {
            None
        };
        candidates.insert(r, reason);
    }
    let alive: Vec<u32> = candidates
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(&r, _)| r)
        .collect();
    RTrace {
        r: (alive.len() == 1).then(|| alive[0]),
        candidates,
        closed_form: "2 b1^2 + b1^3 > 7/3 - 2/r, and 7/3 - 2/r < 2 iff r < 6".into(),
    }
}

/// Types `(4,4,4,2k)` and `(4,2k,4,2k)` at 2-vertices give
/// `beta_2^2 = beta_2^k` after cancelling, impossible unless `2k = 4`.
pub fn exclude_4442k(k: u32) -> bool {
    let k = 2 * k as usize;
    cancellation_contradicts(&[4, 4, 4, k], &[4, k, 4, k])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralTriple {
    pub degrees: [u32; 3],
    pub sum: u32,
    pub obstructs: bool,
}

/// Three dihedral angles from `{120, 144}` degrees meeting at an edge of
/// a 4-polytope would have to sum below 360.
pub fn dihedral_triples() -> Vec<DihedralTriple> {
    [120, 144]
        .into_iter()
        .combinations_with_replacement(3)
        .map(|t| {
            let sum = t.iter().sum();
            DihedralTriple {
                degrees: [t[0], t[1], t[2]],
                sum,
                obstructs: sum >= 360,
            }
        })
        .collect()
}

pub fn dihedral_sum_obstruction() -> bool {
    dihedral_triples().iter().all(|t| t.obstructs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exclusive_types() {
        assert!(exclusive_types_check(5, 4));
        assert!(exclusive_types_check(3, 50));
        assert!(exclusive_types_check(4, 5));
        assert!(!exclusive_types_check(2, 10));
    }

    #[test]
    fn coexistence() {
        let rep = incompatible_1_types(12);
        assert!(rep.stated_rule_sound);
        let v = |a: &[usize], b: &[usize]| rep.find(a, b).unwrap().stated_rule;
        assert_eq!(v(&[4, 4, 6], &[4, 4, 8]), PairVerdict::Incompatible);
        assert_eq!(v(&[4, 6, 6], &[4, 6, 8]), PairVerdict::Incompatible);
        assert_eq!(v(&[4, 4, 8], &[4, 6, 8]), PairVerdict::Incompatible);
        assert_eq!(v(&[4, 4, 10], &[4, 6, 8]), PairVerdict::NotExcluded);
        // Cancellation sees more: beta^2 = beta^4 after removing 4 and 6.
        let p = rep.find(&[4, 4, 6], &[4, 6, 8]).unwrap();
        assert_eq!(p.stated_rule, PairVerdict::NotExcluded);
        assert_eq!(p.cancellation, PairVerdict::Incompatible);
        assert_eq!(
            rep.find(&[4, 4, 4], &[4, 6, 8]).unwrap().cancellation,
            PairVerdict::NotExcluded
        );
    }

    #[test]
    fn hexagon() {
        let h = hexagon_parity();
        assert_eq!(h.counts_from_1_vertices, BTreeSet::from([3]));
        assert_eq!(h.counts_from_2_vertices, BTreeSet::from([0, 2, 4, 6]));
        assert_eq!((h.labelings_1, h.labelings_2), (8, 8));
        assert!(hexagon_parity_argument());
    }

    #[test]
    fn r_is_five() {
        let t = determine_r();
        assert_eq!(t.r, Some(5));
        assert!(t.candidates[&6].as_ref().unwrap().starts_with("2 b1^2"));
        assert!(t.candidates[&4]
            .as_ref()
            .unwrap()
            .starts_with("b2^3 = b2^2"));
        assert!(t.candidates[&3].as_ref().unwrap().starts_with("b1^3"));
    }

    #[test]
    fn four_four_four_2k() {
        assert!(exclude_4442k(3));
        assert!(exclude_4442k(4));
        assert!(!exclude_4442k(2));
    }

    #[test]
    fn dihedral() {
        let t = dihedral_triples();
        assert_eq!(t.len(), 4);
        assert_eq!(t[0].sum, 360);
        assert_eq!(t[3].sum, 432);
        assert!(dihedral_sum_obstruction());
    }
}

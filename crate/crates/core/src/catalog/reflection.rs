//! Finite reflection groups from linear Coxeter diagrams and their direct
//! sums.

use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::polytope::Point;

/// Hard cap on the number of group elements generated by closure.
pub const GROUP_CAP: usize = 10_000;

/// One irreducible summand, named by its Coxeter diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Irreducible {
    /// Reflection in a single line.
    I1,
    /// Dihedral group of order `2k`.
    I2(u32),
    A(u32),
    B(u32),
    H(u32),
}

impl Irreducible {
    pub fn rank(&self) -> usize {
        match self {
            Irreducible::I1 => 1,
            Irreducible::I2(_) => 2,
            Irreducible::A(n) | Irreducible::B(n) | Irreducible::H(n) => *n as usize,
        }
    }

    /// Branch labels of the linear diagram.
    fn diagram(&self) -> Vec<u32> {
        match self {
            Irreducible::I1 => vec![],
            Irreducible::I2(k) => vec![*k],
            Irreducible::A(n) => vec![3; *n as usize - 1],
            Irreducible::B(n) => {
                let mut d = vec![3; *n as usize - 1];
                d[0] = 4;
                d
            }
            Irreducible::H(n) => {
                let mut d = vec![3; *n as usize - 1];
                d[0] = 5;
                d
            }
        }
    }

    /// Unit simple roots with `<a_i, a_{i+1}> = -cos(pi / m_i)` and all other
    /// pairs orthogonal, in bidiagonal form.
    fn simple_roots(&self) -> Vec<DVector<f64>> {
        let n = self.rank();
        let mut roots = Vec::with_capacity(n);
        let mut last = DVector::zeros(n);
        last[0] = 1.0;
        for (i, &m) in self.diagram().iter().enumerate() {
            roots.push(last.clone());
            let y = -(PI / m as f64).cos() / last[i];
            let mut next = DVector::zeros(n);
            next[i] = y;
            next[i + 1] = (1.0 - y * y).sqrt();
            last = next;
        }
        roots.push(last);
        roots
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irreducible::I1 => write!(f, "I1"),
            Irreducible::I2(k) => write!(f, "I2({k})"),
            Irreducible::A(n) => write!(f, "A{n}"),
            Irreducible::B(n) => write!(f, "B{n}"),
            Irreducible::H(n) => write!(f, "H{n}"),
        }
    }
}

impl FromStr for Irreducible {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let bad = || CatalogError::UnknownGroup(s.to_string());
        let s = s.trim();
        if s == "I1" {
            return Ok(Irreducible::I1);
        }
        if let Some(rest) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let k: u32 = rest.trim().parse().map_err(|_| bad())?;
            return if k >= 2 {
                Ok(Irreducible::I2(k))
            } else {
                Err(bad())
            };
        }
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let n: u32 = chars.as_str().parse().map_err(|_| bad())?;
        match (head, n) {
            ('A', 1..) => Ok(Irreducible::A(n)),
            ('B', 2..) => Ok(Irreducible::B(n)),
            ('H', 2..=4) => Ok(Irreducible::H(n)),
            _ => Err(bad()),
        }
    }
}

/// A finite reflection group as a direct sum of irreducible summands acting
/// on orthogonal coordinate blocks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub name: String,
    pub components: Vec<Irreducible>,
    pub rank: usize,
    pub roots: Vec<Point>,
}

impl GroupDescriptor {
    pub fn new(components: Vec<Irreducible>) -> Result<Self, CatalogError> {
        if components.is_empty() {
            return Err(CatalogError::UnknownGroup(String::new()));
        }
        let rank: usize = components.iter().map(Irreducible::rank).sum();
        let mut roots = Vec::with_capacity(rank);
        let mut offset = 0;
        for c in &components {
            for r in c.simple_roots() {
                let mut full = vec![0.0; rank];
                full[offset..offset + r.len()].copy_from_slice(r.as_slice());
                roots.push(Point(full));
            }
            offset += c.rank();
        }
        let name = components
            .iter()
            .map(Irreducible::to_string)
            .collect::<Vec<_>>()
            .join("+");
        Ok(Self {
            name,
            components,
            rank,
            roots,
        })
    }

    /// Simple reflections `I - 2 a a^T`.
    pub fn generators(&self) -> Vec<DMatrix<f64>> {
        self.roots
            .iter()
            .map(|a| {
                let v = DVector::from_column_slice(a);
                DMatrix::identity(self.rank, self.rank) - (&v * v.transpose()) * 2.0
            })
            .collect()
    }

    /// All group elements by breadth-first closure over the simple
    /// reflections, identity first.
    pub fn elements(&self) -> Result<Vec<DMatrix<f64>>, CatalogError> {
        let gens = self.generators();
        let id = DMatrix::identity(self.rank, self.rank);
        let mut seen = HashSet::from([matrix_key(&id)]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(m) = queue.pop_front() {
            for g in &gens {
                let next = g * &m;
                if seen.insert(matrix_key(&next)) {
                    if out.len() >= GROUP_CAP {
                        return Err(CatalogError::GroupTooLarge(GROUP_CAP));
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }

    /// Point with `<seed, a_i> = 1/2` for every simple root: equidistant from
    /// all mirrors, so its orbit is inscribed with unit edges.
    pub fn default_seed(&self) -> Point {
        let a = DMatrix::from_fn(self.rank, self.rank, |r, c| self.roots[r][c]);
        let rhs = DVector::from_element(self.rank, 0.5);
        let x = a
            .lu()
            .solve(&rhs)
            .expect("simple roots are linearly independent");
        Point(x.iter().copied().collect())
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for GroupDescriptor {
    type Err = CatalogError;

    /// Parses sums like `"I1+I2(3)"`; `⊕` is accepted as a separator.
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let comps = s
            .replace('⊕', "+")
            .split('+')
            .map(str::parse)
            .collect::<Result<Vec<Irreducible>, _>>()?;
        Self::new(comps)
    }
}

fn matrix_key(m: &DMatrix<f64>) -> Vec<i64> {
    m.iter().map(|x| (x * 1e6).round() as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> Result<usize, CatalogError> {
        s.parse::<GroupDescriptor>()?.elements().map(|e| e.len())
    }

    #[test]
    fn group_orders() {
        assert_eq!(order("I1").unwrap(), 2);
        assert_eq!(order("I2(5)").unwrap(), 10);
        assert_eq!(order("A3").unwrap(), 24);
        assert_eq!(order("B3").unwrap(), 48);
        assert_eq!(order("H3").unwrap(), 120);
        assert_eq!(order("I1+I2(3)").unwrap(), 12);
        assert_eq!(order("I1⊕I1⊕I1").unwrap(), 8);
    }

    #[test]
    fn h4_exceeds_cap() {
        assert!(matches!(order("H4"), Err(CatalogError::GroupTooLarge(_))));
    }

    #[test]
    fn parse_and_display() {
        let g: GroupDescriptor = "I1 + I2(4)".parse().unwrap();
        assert_eq!(g.name, "I1+I2(4)");
        assert_eq!(g.rank, 3);
        assert!("Q7".parse::<GroupDescriptor>().is_err());
        assert!("I2(1)".parse::<GroupDescriptor>().is_err());
        assert!("".parse::<GroupDescriptor>().is_err());
    }

    #[test]
    fn roots_have_coxeter_angles() {
        let g: GroupDescriptor = "H3".parse().unwrap();
        let c = |i: usize, j: usize| g.roots[i].dot(&g.roots[j]);
        assert!((c(0, 1) + (PI / 5.0).cos()).abs() < 1e-12);
        assert!((c(1, 2) + 0.5).abs() < 1e-12);
        assert!(c(0, 2).abs() < 1e-12);
        for i in 0..3 {
            assert!((c(i, i) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn elements_are_orthogonal() {
        let g: GroupDescriptor = "B3".parse().unwrap();
        for m in g.elements().unwrap() {
            let err = (&m.transpose() * &m - DMatrix::identity(3, 3)).abs().max();
            assert!(err < 1e-12);
        }
    }
}

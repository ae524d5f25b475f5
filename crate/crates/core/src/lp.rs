//! Small dense linear programs in equality standard form.
//!
//! Solves `maximize c·x  s.t.  A x = b, x >= 0` with a two-phase tableau
//! simplex. Pivoting follows Bland's rule, so the method terminates on
//! degenerate problems; the problems here have a handful of rows and at most a
//! few hundred columns.

use thiserror::Error;

const PIVOT_EPS: f64 = 1e-11;
const FEAS_EPS: f64 = 1e-9;
const MAX_PIVOTS: usize = 100_000;
const RATIO_TIE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum LpError {
    #[error("constraint matrix has {rows} rows but rhs has {rhs} entries")]
    Shape { rows: usize, rhs: usize },
    #[error("row {row} has {got} columns, expected {expected}")]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("simplex exceeded {0} pivots")]
    PivotLimit(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: f64, x: Vec<f64> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

struct Tableau {
    /// `rows x (cols + 1)`, last column is the rhs.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.t[r][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) -> Result<(), LpError> {
        self.pivots += 1;
        if self.pivots > MAX_PIVOTS {
            return Err(LpError::PivotLimit(MAX_PIVOTS));
        }
        let p = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let f = line[col];
            if f != 0.0 {
                for (v, pv) in line.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        self.basis[row] = col;
        Ok(())
    }

    /// Reduced costs of `obj` for the current basis.
    fn reduced_costs(&self, obj: &[f64]) -> Vec<f64> {
        let mut rc = obj.to_vec();
        for (r, &bv) in self.basis.iter().enumerate() {
            let cb = obj[bv];
            if cb != 0.0 {
                for (j, v) in rc.iter_mut().enumerate() {
                    *v -= cb * self.t[r][j];
                }
            }
        }
        rc
    }

    /// Runs primal simplex on `obj` over columns `< allowed`. Returns false on
    /// unboundedness.
    fn optimize(&mut self, obj: &[f64], allowed: usize) -> Result<bool, LpError> {
        loop {
            let rc = self.reduced_costs(obj);
            // Bland: lowest-index improving column
            let Some(enter) = (0..allowed).find(|&j| rc[j] > PIVOT_EPS) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.t.len() {
                let a = self.t[r][enter];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(r) / a;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((lr, lratio)) => {
                            // Ties must be detected despite rounding, or
                            // Bland's rule loses its termination guarantee.
                            let tie = (ratio - lratio).abs() <= RATIO_TIE * (1.0 + lratio.abs());
                            if (!tie && ratio < lratio) || (tie && self.basis[r] < self.basis[lr]) {
                                Some((r, ratio))
                            } else {
                                Some((lr, lratio))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Ok(false),
                Some((r, _)) => self.pivot(r, enter)?,
            }
        }
    }
}

/// Maximizes `c·x` subject to `a x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Result<LpOutcome, LpError> {
    let m = a.len();
    if b.len() != m {
        return Err(LpError::Shape {
            rows: m,
            rhs: b.len(),
        });
    }
    let n = c.len();
    for (row, line) in a.iter().enumerate() {
        if line.len() != n {
            return Err(LpError::RaggedRow {
                row,
                got: line.len(),
                expected: n,
            });
        }
    }

    // Columns: n structural, m artificial, then rhs.
    let cols = n + m;
    let mut t = Vec::with_capacity(m);
    for (r, line) in a.iter().enumerate() {
        let sign = if b[r] < 0.0 { -1.0 } else { 1.0 };
        let mut row = vec![0.0; cols + 1];
        for (j, &v) in line.iter().enumerate() {
            row[j] = sign * v;
        }
        row[n + r] = 1.0;
        row[cols] = sign * b[r];
        t.push(row);
    }
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        cols,
        pivots: 0,
    };

    // Phase 1: maximize minus the artificial sum.
    let mut phase1 = vec![0.0; cols];
    for v in phase1.iter_mut().skip(n) {
        *v = -1.0;
    }
    tab.optimize(&phase1, cols)?;
    let infeas: f64 = (0..m)
        .filter(|&r| tab.basis[r] >= n)
        .map(|r| tab.rhs(r))
        .sum();
    let scale = 1.0 + b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if infeas > FEAS_EPS * scale {
        return Ok(LpOutcome::Infeasible);
    }

    // Drive zero-level artificials out of the basis where possible.
    for r in 0..m {
        if tab.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| tab.t[r][j].abs() > 1e-9) {
                tab.pivot(r, j)?;
            }
        }
    }

    // Phase 2 over structural columns only.
    let mut obj = vec![0.0; cols];
    obj[..n].copy_from_slice(c);
    if !tab.optimize(&obj, n)? {
        return Ok(LpOutcome::Unbounded);
    }
    let mut x = vec![0.0; n];
    for (r, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.rhs(r).max(0.0);
        }
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(LpOutcome::Optimal { value, x })
}

/// Whether `{x >= 0 : a x = b}` is nonempty.
pub fn is_feasible(a: &[Vec<f64>], b: &[f64]) -> Result<bool, LpError> {
    let n = a.first().map_or(0, Vec::len);
    Ok(maximize(a, b, &vec![0.0; n])?.is_feasible())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimum(out: LpOutcome) -> (f64, Vec<f64>) {
        match out {
            LpOutcome::Optimal { value, x } => (value, x),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 2y  s.t. x + y + s1 = 4, x + 3y + s2 = 6
        let a = vec![vec![1.0, 1.0, 1.0, 0.0], vec![1.0, 3.0, 0.0, 1.0]];
        let (v, x) = optimum(maximize(&a, &[4.0, 6.0], &[3.0, 2.0, 0.0, 0.0]).unwrap());
        assert!((v - 12.0).abs() < 1e-12);
        assert!((x[0] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible() {
        // x + y = -1 with x, y >= 0
        let a = vec![vec![1.0, 1.0]];
        assert_eq!(
            maximize(&a, &[-1.0], &[0.0, 0.0]).unwrap(),
            LpOutcome::Infeasible
        );
        assert!(!is_feasible(&a, &[-1.0]).unwrap());
    }

    #[test]
    fn detects_unbounded() {
        // x - y = 0, maximize x
        let a = vec![vec![1.0, -1.0]];
        assert_eq!(
            maximize(&a, &[0.0], &[1.0, 0.0]).unwrap(),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn redundant_rows_are_fine() {
        let a = vec![vec![1.0, 1.0], vec![2.0, 2.0]];
        let (v, _) = optimum(maximize(&a, &[1.0, 2.0], &[1.0, 2.0]).unwrap());
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, cycles under the textbook largest-coefficient rule.
        let a = vec![
            vec![0.25, -8.0, -1.0, 9.0, 1.0, 0.0, 0.0],
            vec![0.5, -12.0, -0.5, 3.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
        ];
        let c = [0.75, -20.0, 0.5, -6.0, 0.0, 0.0, 0.0];
        let (v, _) = optimum(maximize(&a, &[0.0, 0.0, 1.0], &c).unwrap());
        assert!((v - 1.25).abs() < 1e-9);
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            maximize(&[vec![1.0]], &[1.0, 2.0], &[1.0]),
            Err(LpError::Shape { .. })
        ));
        assert!(matches!(
            maximize(&[vec![1.0, 2.0]], &[1.0], &[1.0]),
            Err(LpError::RaggedRow { .. })
        ));
    }
}

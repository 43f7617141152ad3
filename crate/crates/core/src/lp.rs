//! Dense two-phase simplex for small standard-form linear programs.
//!
//! Solves `min cᵀz` subject to `Mz = b`, `z ≥ 0`, returning the primal
//! solution, its value, and the dual vector `y` at the optimum (the
//! certificate used by polyhedral dual norms and minimal-norm extensions).
//! Bland's rule keeps the method finite on degenerate problems; the tableau
//! carries an identity block so `B⁻¹` (and hence the dual) is always at hand.
//! Problem sizes here are tiny (a few hundred variables), so the full
//! tableau is the simplest thing that is obviously correct.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub(crate) enum LpError {
    #[error("linear program is infeasible (phase-1 optimum {0:.3e})")]
    Infeasible(f64),
    #[error("linear program is unbounded below")]
    Unbounded,
    #[error("simplex iteration limit reached")]
    IterationLimit,
}

/// `min costᵀ z` subject to `coef · z = rhs`, `z ≥ 0`.
pub(crate) struct StandardLp {
    pub coef: DMatrix<f64>,
    pub rhs: DVector<f64>,
    pub cost: DVector<f64>,
}

#[derive(Debug)]
pub(crate) struct LpSolution {
    pub z: DVector<f64>,
    pub value: f64,
    /// Dual vector: `coefᵀ y ≤ cost` with `rhsᵀ y = value` at the optimum.
    pub dual: DVector<f64>,
}

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;

struct Tableau {
    /// `m × (n + m + 1)`: original columns, identity block (tracks B⁻¹), rhs.
    t: DMatrix<f64>,
    basis: Vec<usize>,
    n: usize,
    m: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.t[(i, self.n + self.m)]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.t[(row, col)];
        let width = self.n + self.m + 1;
        for j in 0..width {
            self.t[(row, j)] /= piv;
        }
        for i in 0..self.m {
            if i == row {
                continue;
            }
            let factor = self.t[(i, col)];
            if factor == 0.0 {
                continue;
            }
            for j in 0..width {
                self.t[(i, j)] -= factor * self.t[(row, j)];
            }
        }
        self.basis[row] = col;
    }

    /// Reduced cost of column `j` under objective `d` (indexed over all
    /// `n + m` columns): `d_j − Σ_i d_basis[i] · t[i][j]`.
    fn reduced_cost(&self, d: &[f64], j: usize) -> f64 {
        let mut r = d[j];
        for i in 0..self.m {
            r -= d[self.basis[i]] * self.t[(i, j)];
        }
        r
    }

    /// Run simplex under objective `d`; columns `>= limit` may not enter.
    fn run(&mut self, d: &[f64], limit: usize) -> Result<(), LpError> {
        let max_iter = 200 * (self.n + self.m + 10);
        for _ in 0..max_iter {
            // Bland: first column with negative reduced cost enters.
            let entering = (0..limit)
                .find(|&j| !self.basis.contains(&j) && self.reduced_cost(d, j) < -COST_TOL);
            let Some(e) = entering else { return Ok(()) };
            // Ratio test; ties go to the smallest basis index (Bland again).
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let w = self.t[(i, e)];
                if w <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs(i) / w;
                let better = match leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < lr - 1e-12
                            || (ratio < lr + 1e-12 && self.basis[i] < self.basis[li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else { return Err(LpError::Unbounded) };
            self.pivot(row, e);
        }
        Err(LpError::IterationLimit)
    }
}

pub(crate) fn solve(lp: &StandardLp) -> Result<LpSolution, LpError> {
    let m = lp.coef.nrows();
    let n = lp.coef.ncols();
    assert_eq!(lp.rhs.len(), m, "rhs length");
    assert_eq!(lp.cost.len(), n, "cost length");

    // Scale the rhs to unit magnitude so the tolerances are meaningful, and
    // flip rows so b ≥ 0 (the artificial basis needs that).
    let scale = lp.rhs.amax().max(1.0);
    let mut t = DMatrix::zeros(m, n + m + 1);
    let mut sign = vec![1.0; m];
    for i in 0..m {
        let s = if lp.rhs[i] < 0.0 { -1.0 } else { 1.0 };
        sign[i] = s;
        for j in 0..n {
            t[(i, j)] = s * lp.coef[(i, j)];
        }
        t[(i, n + i)] = 1.0;
        t[(i, n + m)] = s * lp.rhs[i] / scale;
    }
    let mut tab = Tableau { t, basis: (n..n + m).collect(), n, m };

    // Phase 1: minimize the sum of artificials.
    let mut d1 = vec![0.0; n + m];
    for dj in d1.iter_mut().skip(n) {
        *dj = 1.0;
    }
    tab.run(&d1, n)?;
    let infeas: f64 = (0..m)
        .filter(|&i| tab.basis[i] >= n)
        .map(|i| tab.rhs(i))
        .sum();
    if infeas > 1e-8 {
        return Err(LpError::Infeasible(infeas * scale));
    }
    // Drive remaining artificials out of the basis; a row with no usable
    // pivot is a redundant constraint and stays parked at level zero.
    for i in 0..m {
        if tab.basis[i] < n {
            continue;
        }
        if let Some(j) = (0..n)
            .find(|&j| !tab.basis.contains(&j) && tab.t[(i, j)].abs() > PIVOT_TOL)
        {
            tab.pivot(i, j);
        }
    }

    // Phase 2 under the real objective (artificials cost 0, may not enter).
    let mut d2 = vec![0.0; n + m];
    d2[..n].copy_from_slice(lp.cost.as_slice());
    tab.run(&d2, n)?;

    let mut z = DVector::zeros(n);
    for i in 0..m {
        if tab.basis[i] < n {
            z[tab.basis[i]] = tab.rhs(i) * scale;
        }
    }
    // Dual y = c_Bᵀ B⁻¹, read off the identity block, unflipped.
    let mut dual = DVector::zeros(m);
    for i in 0..m {
        let mut y = 0.0;
        for r in 0..m {
            y += d2[tab.basis[r]] * tab.t[(r, n + i)];
        }
        dual[i] = y * sign[i];
    }
    let value = lp.cost.dot(&z);
    Ok(LpSolution { z, value, dual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn solves_a_textbook_lp_with_matching_dual() {
        // min -x1 - 2x2 s.t. x1 + x2 + s1 = 4, x1 + 3x2 + s2 = 6, all >= 0.
        // Optimum at (3, 1): value -5. Dual: y = (-1/2, -1/2).
        let lp = StandardLp {
            coef: DMatrix::from_row_slice(2, 4, &[1.0, 1.0, 1.0, 0.0, 1.0, 3.0, 0.0, 1.0]),
            rhs: DVector::from_column_slice(&[4.0, 6.0]),
            cost: DVector::from_column_slice(&[-1.0, -2.0, 0.0, 0.0]),
        };
        let sol = solve(&lp).unwrap();
        assert_relative_eq!(sol.value, -5.0, epsilon = 1e-9);
        assert_relative_eq!(sol.z[0], 3.0, epsilon = 1e-9);
        assert_relative_eq!(sol.z[1], 1.0, epsilon = 1e-9);
        // Strong duality: bᵀy = value, and Mᵀy ≤ c.
        assert_relative_eq!(lp.rhs.dot(&sol.dual), -5.0, epsilon = 1e-9);
        let slack = lp.cost - lp.coef.transpose() * &sol.dual;
        assert!(slack.iter().all(|&s| s >= -1e-9));
    }

    #[test]
    fn negative_rhs_rows_are_handled_by_sign_flips() {
        // x1 - x2 = -3, x1 + x2 = 5, minimize x1 => (1, 4).
        let lp = StandardLp {
            coef: DMatrix::from_row_slice(2, 2, &[1.0, -1.0, 1.0, 1.0]),
            rhs: DVector::from_column_slice(&[-3.0, 5.0]),
            cost: DVector::from_column_slice(&[1.0, 0.0]),
        };
        let sol = solve(&lp).unwrap();
        assert_relative_eq!(sol.z[0], 1.0, epsilon = 1e-9);
        assert_relative_eq!(sol.z[1], 4.0, epsilon = 1e-9);
        assert_relative_eq!(lp.rhs.dot(&sol.dual), sol.value, epsilon = 1e-9);
    }

    #[test]
    fn detects_infeasibility() {
        // x1 + x2 = 1 and x1 + x2 = 3 cannot both hold.
        let lp = StandardLp {
            coef: DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]),
            rhs: DVector::from_column_slice(&[1.0, 3.0]),
            cost: DVector::from_column_slice(&[1.0, 1.0]),
        };
        assert!(matches!(solve(&lp), Err(LpError::Infeasible(_))));
    }

    #[test]
    fn detects_unboundedness() {
        // z1 - z2 = 0 with cost -z1: push both coordinates to infinity.
        let lp = StandardLp {
            coef: DMatrix::from_row_slice(1, 2, &[1.0, -1.0]),
            rhs: DVector::from_column_slice(&[0.0]),
            cost: DVector::from_column_slice(&[-1.0, 0.0]),
        };
        assert_eq!(solve(&lp).unwrap_err(), LpError::Unbounded);
    }

    #[test]
    fn redundant_rows_do_not_break_phase_one() {
        // Second row is twice the first; solution and value unaffected.
        let lp = StandardLp {
            coef: DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 2.0, 2.0]),
            rhs: DVector::from_column_slice(&[2.0, 4.0]),
            cost: DVector::from_column_slice(&[1.0, 2.0]),
        };
        let sol = solve(&lp).unwrap();
        assert_relative_eq!(sol.value, 2.0, epsilon = 1e-9);
        assert_relative_eq!(sol.z[0], 2.0, epsilon = 1e-9);
    }
}

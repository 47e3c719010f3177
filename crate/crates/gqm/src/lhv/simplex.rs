//! Exact phase-1 simplex over the rationals, revised form with a dense basis
//! inverse.
//!
//! Decides whether a rational target vector is a non-negative combination of
//! integer columns (the normalization row makes it a convex-hull membership
//! test). Columns may be appended between solves, so a column-generation
//! driver can warm-start from the current basis. Bland's rule is used for
//! both the entering and leaving choices, which guarantees termination and
//! makes the pivot sequence deterministic.

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BasisVar {
    Col(usize),
    Artificial(usize),
}

/// Outcome of a phase-1 solve over the current column set.
pub enum PhaseOneOutcome {
    /// The target is a non-negative combination of the current columns.
    Feasible,
    /// No combination exists; `y` is a Farkas vector with `y . col <= 0` for
    /// every current column and `y . target > 0`.
    Infeasible { y: Vec<Rat> },
}

pub struct PhaseOneSimplex {
    rows: usize,
    target: Vec<Rat>,
    /// Sign of each artificial column (+1/-1 matching the target's sign).
    art_sign: Vec<i64>,
    cols: Vec<Vec<i64>>,
    basis: Vec<BasisVar>,
    b_inv: Vec<Vec<Rat>>,
    x_b: Vec<Rat>,
}

impl PhaseOneSimplex {
    /// Start with an all-artificial basis for `col . w = target, w >= 0`.
    pub fn new(target: Vec<Rat>) -> PhaseOneSimplex {
        let rows = target.len();
        let art_sign: Vec<i64> =
            target.iter().map(|t| if t.is_negative() { -1 } else { 1 }).collect();
        let mut b_inv = vec![vec![Rat::zero(); rows]; rows];
        let mut x_b = Vec::with_capacity(rows);
        for r in 0..rows {
            b_inv[r][r] = Rat::from_integer(art_sign[r].into());
            x_b.push(target[r].clone().abs());
        }
        PhaseOneSimplex {
            rows,
            target,
            art_sign,
            cols: Vec::new(),
            basis: (0..rows).map(BasisVar::Artificial).collect(),
            b_inv,
            x_b,
        }
    }

    /// Append a column (entries must match the row count); returns its index.
    pub fn add_column(&mut self, col: Vec<i64>) -> usize {
        debug_assert_eq!(col.len(), self.rows);
        self.cols.push(col);
        self.cols.len() - 1
    }

    /// Basic solution restricted to real columns: `(column index, weight)`.
    pub fn column_weights(&self) -> Vec<(usize, Rat)> {
        self.basis
            .iter()
            .zip(&self.x_b)
            .filter_map(|(var, x)| match var {
                BasisVar::Col(j) if !x.is_zero() => Some((*j, x.clone())),
                _ => None,
            })
            .collect()
    }

    fn dot_col(y: &[Rat], col: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for (yk, &c) in y.iter().zip(col) {
            match c {
                0 => {}
                1 => acc += yk,
                -1 => acc -= yk,
                c => acc += yk * Rat::from_integer(c.into()),
            }
        }
        acc
    }

    /// Simplex multipliers `y = c_B B^-1` for the phase-1 objective
    /// (artificials cost 1, real columns cost 0).
    fn multipliers(&self) -> Vec<Rat> {
        let mut y = vec![Rat::zero(); self.rows];
        for (r, var) in self.basis.iter().enumerate() {
            if matches!(var, BasisVar::Artificial(_)) {
                for k in 0..self.rows {
                    if !self.b_inv[r][k].is_zero() {
                        y[k] += &self.b_inv[r][k];
                    }
                }
            }
        }
        y
    }

    fn column_of(&self, var: BasisVar) -> Vec<i64> {
        match var {
            BasisVar::Col(j) => self.cols[j].clone(),
            BasisVar::Artificial(k) => {
                let mut col = vec![0; self.rows];
                col[k] = self.art_sign[k];
                col
            }
        }
    }

    /// Bland id: real columns first (by index), then artificials.
    fn bland_id(&self, var: BasisVar) -> usize {
        match var {
            BasisVar::Col(j) => j,
            BasisVar::Artificial(k) => self.cols.len() + k,
        }
    }

    /// Run to optimality over the current columns.
    ///
    /// Pricing starts with Dantzig's rule (most negative reduced cost, lowest
    /// id on ties) and switches to Bland's rule once the objective stalls, so
    /// the pivot sequence is deterministic and cannot cycle.
    pub fn solve(&mut self) -> Result<PhaseOneOutcome> {
        const STALL_LIMIT: usize = 30;
        let mut in_basis_col = vec![false; self.cols.len()];
        let mut in_basis_art = vec![false; self.rows];
        for var in &self.basis {
            match var {
                BasisVar::Col(j) => in_basis_col[*j] = true,
                BasisVar::Artificial(k) => in_basis_art[*k] = true,
            }
        }
        let mut last_objective: Option<Rat> = None;
        let mut stalled = 0usize;
        let mut bland;
        loop {
            let y = self.multipliers();

            let objective: Rat = self
                .basis
                .iter()
                .zip(&self.x_b)
                .filter(|(var, _)| matches!(var, BasisVar::Artificial(_)))
                .map(|(_, x)| x.clone())
                .sum();
            if last_objective.as_ref() == Some(&objective) {
                stalled += 1;
            } else {
                stalled = 0;
                last_objective = Some(objective);
            }
            // Degenerate plateau: fall back to Bland until the objective
            // moves again.
            bland = stalled >= STALL_LIMIT;

            // Entering variable. Real columns have cost 0, so their reduced
            // cost is negative iff y . A_j > 0; artificials cost 1.
            let mut entering: Option<(BasisVar, Rat)> = None;
            'scan: for j in 0..self.cols.len() {
                if in_basis_col[j] {
                    continue;
                }
                let score = Self::dot_col(&y, &self.cols[j]);
                if score.is_positive() {
                    if bland {
                        entering = Some((BasisVar::Col(j), score));
                        break 'scan;
                    }
                    if entering.as_ref().is_none_or(|(_, s)| score > *s) {
                        entering = Some((BasisVar::Col(j), score));
                    }
                }
            }
            if entering.is_none() || !bland {
                for k in 0..self.rows {
                    if in_basis_art[k] {
                        continue;
                    }
                    // reduced cost 1 - sign * y_k < 0  <=>  sign * y_k - 1 > 0
                    let mut score =
                        &y[k] * Rat::from_integer(self.art_sign[k].into());
                    score -= Rat::one();
                    if score.is_positive() {
                        if bland {
                            if entering.is_none() {
                                entering = Some((BasisVar::Artificial(k), score));
                            }
                            break;
                        }
                        if entering.as_ref().is_none_or(|(_, s)| score > *s) {
                            entering = Some((BasisVar::Artificial(k), score));
                        }
                    }
                }
            }
            let entering = entering.map(|(var, _)| var);

            let Some(entering) = entering else {
                // Optimal: objective = sum of basic artificial levels = y . b.
                let objective: Rat = self
                    .basis
                    .iter()
                    .zip(&self.x_b)
                    .filter(|(var, _)| matches!(var, BasisVar::Artificial(_)))
                    .map(|(_, x)| x.clone())
                    .sum();
                return if objective.is_zero() {
                    Ok(PhaseOneOutcome::Feasible)
                } else {
                    debug_assert!({
                        let yb: Rat =
                            y.iter().zip(&self.target).map(|(a, b)| a * b).sum();
                        yb == objective
                    });
                    Ok(PhaseOneOutcome::Infeasible { y })
                };
            };

            // Direction u = B^-1 A_enter.
            let a_enter = self.column_of(entering);
            let mut u = vec![Rat::zero(); self.rows];
            for (r, u_r) in u.iter_mut().enumerate() {
                *u_r = Self::dot_col(&self.b_inv[r], &a_enter);
            }

            // Ratio test with Bland tie-breaking on the leaving id.
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows {
                if !u[r].is_positive() {
                    continue;
                }
                let ratio = &self.x_b[r] / &u[r];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio
                            || (ratio == *lratio
                                && self.bland_id(self.basis[r]) < self.bland_id(self.basis[*lr]))
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((pivot_row, _)) = leave else {
                // Phase-1 objective is bounded below by zero, so a direction
                // with no positive component cannot appear.
                return Err(Error::InternalInvariantViolation("unbounded phase-1 direction"));
            };

            // Pivot: row operations on B^-1 and the basic solution.
            let pivot = u[pivot_row].clone();
            for k in 0..self.rows {
                self.b_inv[pivot_row][k] = &self.b_inv[pivot_row][k] / &pivot;
            }
            self.x_b[pivot_row] = &self.x_b[pivot_row] / &pivot;
            for r in 0..self.rows {
                if r == pivot_row || u[r].is_zero() {
                    continue;
                }
                let factor = u[r].clone();
                for k in 0..self.rows {
                    let delta = &factor * &self.b_inv[pivot_row][k];
                    self.b_inv[r][k] -= delta;
                }
                let delta = &factor * &self.x_b[pivot_row];
                self.x_b[r] -= delta;
            }
            match self.basis[pivot_row] {
                BasisVar::Col(j) => in_basis_col[j] = false,
                BasisVar::Artificial(k) => in_basis_art[k] = false,
            }
            match entering {
                BasisVar::Col(j) => in_basis_col[j] = true,
                BasisVar::Artificial(k) => in_basis_art[k] = true,
            }
            self.basis[pivot_row] = entering;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn membership_in_a_segment() {
        // target 1/3 on the segment spanned by columns {0, 1} with weights
        // summing to one: rows are (value, normalization).
        let mut lp = PhaseOneSimplex::new(vec![ratio(1, 3), rat(1)]);
        lp.add_column(vec![0, 1]);
        lp.add_column(vec![1, 1]);
        match lp.solve().unwrap() {
            PhaseOneOutcome::Feasible => {}
            PhaseOneOutcome::Infeasible { .. } => panic!("1/3 lies in [0, 1]"),
        }
        let w = lp.column_weights();
        let total: Rat = w.iter().map(|(_, x)| x.clone()).sum();
        assert_eq!(total, rat(1));
        let value: Rat = w
            .iter()
            .map(|(j, x)| x * Rat::from_integer((*j as i64).into()))
            .sum();
        assert_eq!(value, ratio(1, 3));
    }

    #[test]
    fn infeasible_point_gets_a_farkas_vector() {
        // target 2 outside [0, 1]
        let mut lp = PhaseOneSimplex::new(vec![rat(2), rat(1)]);
        lp.add_column(vec![0, 1]);
        lp.add_column(vec![1, 1]);
        match lp.solve().unwrap() {
            PhaseOneOutcome::Feasible => panic!("2 does not lie in [0, 1]"),
            PhaseOneOutcome::Infeasible { y } => {
                // y separates: y . col <= 0 for both columns, y . target > 0
                let d0 = &y[0] * rat(0) + &y[1] * rat(1);
                let d1 = &y[0] * rat(1) + &y[1] * rat(1);
                assert!(d0 <= rat(0) && d1 <= rat(0));
                let t = &y[0] * rat(2) + &y[1] * rat(1);
                assert!(t > rat(0));
            }
        }
    }

    #[test]
    fn columns_can_arrive_incrementally() {
        let mut lp = PhaseOneSimplex::new(vec![ratio(1, 2), rat(1)]);
        lp.add_column(vec![0, 1]);
        assert!(matches!(lp.solve().unwrap(), PhaseOneOutcome::Infeasible { .. }));
        lp.add_column(vec![1, 1]);
        assert!(matches!(lp.solve().unwrap(), PhaseOneOutcome::Feasible));
    }

    #[test]
    fn negative_targets_are_handled() {
        let mut lp = PhaseOneSimplex::new(vec![rat(-1), rat(1)]);
        lp.add_column(vec![-1, 1]);
        assert!(matches!(lp.solve().unwrap(), PhaseOneOutcome::Feasible));
    }
}

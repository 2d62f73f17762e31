//! Dense bounded-variable linear programming.
//!
//! Every relaxation in the crate goes through [`SimplexSolver`]: the node
//! LPs of the branch-and-cut, the elastic programs behind the infeasibility
//! heuristic, and the phase-1 programs used to extract infeasible
//! subsystems. Besides primal values the solver reports row duals (shadow
//! prices) and reduced costs, taken from the final basis.
//!
//! Problems are always minimizations of the form
//!
//! ```text
//! minimize    c·x
//! subject to  a_i·x  (≥ | ≤ | =)  b_i
//!             lo_j ≤ x_j ≤ hi_j        (bounds may be infinite)
//! ```

mod kkt;
mod simplex;

pub use kkt::{kkt_residuals, KktResiduals};
pub use simplex::SimplexSolver;

use serde::Serialize;
use thiserror::Error;

/// Errors raised while assembling or validating a model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("row {row} has {got} coefficients, expected {expected}")]
    RowLength {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("column {col} has lower bound {lo} above upper bound {hi}")]
    InvertedBounds { col: usize, lo: f64, hi: f64 },
    #[error("non-finite data in {0}")]
    NonFinite(&'static str),
    #[error("column index {0} out of range")]
    ColumnOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coefs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

/// A minimization LP with dense rows.
#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    objective: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    rows: Vec<Row>,
}

impl LpModel {
    /// New model over `objective.len()` columns, each bounded to `[0, ∞)`.
    pub fn new(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
            rows: Vec::new(),
        }
    }

    pub fn num_cols(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn set_bounds(&mut self, col: usize, lo: f64, hi: f64) -> &mut Self {
        self.lower[col] = lo;
        self.upper[col] = hi;
        self
    }

    pub fn add_row(&mut self, coefs: Vec<f64>, sense: Sense, rhs: f64) -> usize {
        self.rows.push(Row { coefs, sense, rhs });
        self.rows.len() - 1
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_cols();
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::NonFinite("objective"));
        }
        for (col, (&lo, &hi)) in self.lower.iter().zip(&self.upper).enumerate() {
            if lo.is_nan() || hi.is_nan() || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return Err(LpError::NonFinite("bounds"));
            }
            if lo > hi {
                return Err(LpError::InvertedBounds { col, lo, hi });
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.coefs.len() != n {
                return Err(LpError::RowLength {
                    row: i,
                    got: row.coefs.len(),
                    expected: n,
                });
            }
            if !row.rhs.is_finite() || row.coefs.iter().any(|a| !a.is_finite()) {
                return Err(LpError::NonFinite("row"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpOptions {
    pub feas_tol: f64,
    pub opt_tol: f64,
    pub max_iters: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        Self {
            feas_tol: 1e-9,
            opt_tol: 1e-9,
            max_iters: 50_000,
        }
    }
}

/// Result of a solve. Duals and reduced costs are only meaningful when
/// `status` is [`LpStatus::Optimal`].
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective_value: f64,
    pub primal: Vec<f64>,
    /// Shadow price of each row: the rate of change of the optimal
    /// objective per unit increase of the row's right-hand side.
    pub duals: Vec<f64>,
    pub reduced_costs: Vec<f64>,
    pub row_activity: Vec<f64>,
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Cold solve of `model`.
pub fn solve_lp(model: &LpModel, options: &LpOptions) -> Result<LpSolution, LpError> {
    let mut solver = SimplexSolver::new(model.clone(), *options)?;
    Ok(solver.solve())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> LpOptions {
        LpOptions::default()
    }

    #[test]
    fn single_lower_bound_row() {
        let mut m = LpModel::new(vec![1.0]);
        m.set_bounds(0, 0.0, 10.0);
        m.add_row(vec![1.0], Sense::Ge, 1.0);
        let s = solve_lp(&m, &opts()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 1.0).abs() < 1e-12);
        assert!((s.duals[0] - 1.0).abs() < 1e-12);
        assert!(s.reduced_costs[0].abs() < 1e-12);
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        let mut m = LpModel::new(vec![0.0]);
        m.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);
        m.add_row(vec![1.0], Sense::Ge, 2.0);
        m.add_row(vec![1.0], Sense::Le, 1.0);
        let s = solve_lp(&m, &opts()).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn elastic_pair_with_free_variable() {
        // minimize e1 + e2 s.t. x + e1 >= 1, -2x + e2 >= 1, e >= 0, x free
        let mut m = LpModel::new(vec![0.0, 1.0, 1.0]);
        m.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);
        m.add_row(vec![1.0, 1.0, 0.0], Sense::Ge, 1.0);
        m.add_row(vec![-2.0, 0.0, 1.0], Sense::Ge, 1.0);
        let s = solve_lp(&m, &opts()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 1.5).abs() < 1e-12);
        assert!((s.primal[0] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn unbounded_ray() {
        let mut m = LpModel::new(vec![-1.0, 0.0]);
        m.add_row(vec![1.0, -1.0], Sense::Le, 1.0);
        let s = solve_lp(&m, &opts()).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_rows_and_upper_bounds() {
        // minimize -x - 2y s.t. x + y = 3, x <= 2, y <= 2
        let mut m = LpModel::new(vec![-1.0, -2.0]);
        m.set_bounds(0, 0.0, 2.0).set_bounds(1, 0.0, 2.0);
        m.add_row(vec![1.0, 1.0], Sense::Eq, 3.0);
        let s = solve_lp(&m, &opts()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value + 5.0).abs() < 1e-12);
        assert!((s.primal[0] - 1.0).abs() < 1e-12);
        assert!((s.primal[1] - 2.0).abs() < 1e-12);
        // x is basic; y sits at its upper bound with a negative reduced cost
        assert!(s.reduced_costs[0].abs() < 1e-12);
        assert!(s.reduced_costs[1] < 0.0);
    }

    #[test]
    fn iteration_limit_is_reported() {
        let mut m = LpModel::new(vec![-1.0, -1.0, -1.0]);
        for j in 0..3 {
            m.set_bounds(j, 0.0, 1.0);
        }
        m.add_row(vec![1.0, 1.0, 1.0], Sense::Le, 2.5);
        let s = solve_lp(
            &m,
            &LpOptions {
                max_iters: 1,
                ..LpOptions::default()
            },
        )
        .unwrap();
        assert_eq!(s.status, LpStatus::IterationLimit);
    }

    #[test]
    fn validation_errors() {
        let mut m = LpModel::new(vec![1.0, 1.0]);
        m.add_row(vec![1.0], Sense::Ge, 0.0);
        assert!(matches!(m.validate(), Err(LpError::RowLength { .. })));
        let mut m = LpModel::new(vec![1.0]);
        m.set_bounds(0, 2.0, 1.0);
        assert!(matches!(m.validate(), Err(LpError::InvertedBounds { .. })));
    }
}

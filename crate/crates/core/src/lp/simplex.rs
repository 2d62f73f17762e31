use super::{LpError, LpModel, LpOptions, LpSolution, LpStatus, Row, Sense};

/// Entries of the ftran column smaller than this never pivot.
const PIVOT_TOL: f64 = 1e-9;
/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const STALL_LIMIT: usize = 50;
/// Pivots between fresh basis inversions.
const REFACTOR_EVERY: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarState {
    Basic(usize),
    AtLower,
    AtUpper,
    /// Nonbasic free variable parked at zero.
    Zero,
}

/// Revised primal simplex with an explicit dense basis inverse.
///
/// Variables are the `n` structural columns followed by one logical per
/// row; row `i` reads `a_i·x - y_i = 0` with the row bounds moved onto
/// `y_i`. The basis survives bound changes and row additions, so repeated
/// solves after [`set_col_bounds`](Self::set_col_bounds) or
/// [`add_row`](Self::add_row) restart from the previous optimal basis.
#[derive(Debug, Clone)]
pub struct SimplexSolver {
    options: LpOptions,
    model: LpModel,
    lower: Vec<f64>,
    upper: Vec<f64>,
    state: Vec<VarState>,
    value: Vec<f64>,
    basis: Vec<usize>,
    /// Row-major `m × m` inverse of the basis matrix.
    binv: Vec<f64>,
    values_stale: bool,
    pivots_since_refactor: usize,
    total_iterations: usize,
}

fn row_bounds(row: &Row) -> (f64, f64) {
    match row.sense {
        Sense::Ge => (row.rhs, f64::INFINITY),
        Sense::Le => (f64::NEG_INFINITY, row.rhs),
        Sense::Eq => (row.rhs, row.rhs),
    }
}

fn resting_state(lo: f64, hi: f64) -> VarState {
    if lo.is_finite() {
        VarState::AtLower
    } else if hi.is_finite() {
        VarState::AtUpper
    } else {
        VarState::Zero
    }
}

impl SimplexSolver {
    pub fn new(model: LpModel, options: LpOptions) -> Result<Self, LpError> {
        model.validate()?;
        let n = model.num_cols();
        let m = model.num_rows();
        let mut lower = model.lower.clone();
        let mut upper = model.upper.clone();
        for row in &model.rows {
            let (lo, hi) = row_bounds(row);
            lower.push(lo);
            upper.push(hi);
        }
        let mut solver = Self {
            options,
            model,
            lower,
            upper,
            state: Vec::with_capacity(n + m),
            value: vec![0.0; n + m],
            basis: (n..n + m).collect(),
            binv: Vec::new(),
            values_stale: true,
            pivots_since_refactor: 0,
            total_iterations: 0,
        };
        solver.slack_basis();
        Ok(solver)
    }

    pub fn model(&self) -> &LpModel {
        &self.model
    }

    pub fn num_cols(&self) -> usize {
        self.model.num_cols()
    }

    pub fn num_rows(&self) -> usize {
        self.model.num_rows()
    }

    /// Total simplex pivots performed over the solver's lifetime.
    pub fn total_iterations(&self) -> usize {
        self.total_iterations
    }

    pub fn set_col_bounds(&mut self, col: usize, lo: f64, hi: f64) -> Result<(), LpError> {
        if col >= self.num_cols() {
            return Err(LpError::ColumnOutOfRange(col));
        }
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(LpError::InvertedBounds { col, lo, hi });
        }
        self.model.lower[col] = lo;
        self.model.upper[col] = hi;
        self.lower[col] = lo;
        self.upper[col] = hi;
        match self.state[col] {
            VarState::Basic(_) => {}
            VarState::AtUpper if hi.is_finite() => {}
            VarState::AtLower if lo.is_finite() => {}
            _ => self.state[col] = resting_state(lo, hi),
        }
        self.values_stale = true;
        Ok(())
    }

    /// Append a row; its logical enters the basis so the current basis
    /// stays valid.
    pub fn add_row(&mut self, coefs: Vec<f64>, sense: Sense, rhs: f64) -> Result<usize, LpError> {
        let n = self.num_cols();
        let m = self.num_rows();
        if coefs.len() != n {
            return Err(LpError::RowLength {
                row: m,
                got: coefs.len(),
                expected: n,
            });
        }
        if !rhs.is_finite() || coefs.iter().any(|a| !a.is_finite()) {
            return Err(LpError::NonFinite("row"));
        }
        // New basis [[B, 0], [r, -1]] has inverse [[B⁻¹, 0], [r·B⁻¹, -1]],
        // where r holds the new row's coefficients on the basic columns.
        let r: Vec<f64> = self
            .basis
            .iter()
            .map(|&b| if b < n { coefs[b] } else { 0.0 })
            .collect();
        let mut binv = vec![0.0; (m + 1) * (m + 1)];
        for i in 0..m {
            binv[i * (m + 1)..i * (m + 1) + m].copy_from_slice(&self.binv[i * m..(i + 1) * m]);
        }
        for (k, &rk) in r.iter().enumerate() {
            if rk != 0.0 {
                for i in 0..m {
                    binv[m * (m + 1) + i] += rk * self.binv[k * m + i];
                }
            }
        }
        binv[m * (m + 1) + m] = -1.0;
        self.binv = binv;

        let row = Row { coefs, sense, rhs };
        let (lo, hi) = row_bounds(&row);
        let activity: f64 = row.coefs.iter().zip(&self.value).map(|(a, x)| a * x).sum();
        self.model.rows.push(row);
        self.lower.push(lo);
        self.upper.push(hi);
        self.state.push(VarState::Basic(m));
        self.value.push(activity);
        self.basis.push(n + m);
        Ok(m)
    }

    fn slack_basis(&mut self) {
        let n = self.num_cols();
        let m = self.num_rows();
        self.state.clear();
        for j in 0..n {
            self.state.push(resting_state(self.lower[j], self.upper[j]));
        }
        for i in 0..m {
            self.state.push(VarState::Basic(i));
        }
        self.basis = (n..n + m).collect();
        self.binv = vec![0.0; m * m];
        for i in 0..m {
            self.binv[i * m + i] = -1.0;
        }
        self.values_stale = true;
        self.pivots_since_refactor = 0;
    }

    fn nonbasic_value(&self, j: usize) -> f64 {
        match self.state[j] {
            VarState::AtLower => self.lower[j],
            VarState::AtUpper => self.upper[j],
            VarState::Zero => 0.0,
            VarState::Basic(_) => self.value[j],
        }
    }

    /// Recompute basic values from the nonbasic ones: `x_B = -B⁻¹ N x_N`.
    fn compute_values(&mut self) {
        let n = self.num_cols();
        let m = self.num_rows();
        let mut rhs = vec![0.0; m];
        for j in 0..n + m {
            if matches!(self.state[j], VarState::Basic(_)) {
                continue;
            }
            let v = self.nonbasic_value(j);
            self.value[j] = v;
            if v == 0.0 {
                continue;
            }
            if j < n {
                for (i, row) in self.model.rows.iter().enumerate() {
                    rhs[i] += row.coefs[j] * v;
                }
            } else {
                rhs[j - n] -= v;
            }
        }
        for r in 0..m {
            let row = &self.binv[r * m..(r + 1) * m];
            let x: f64 = row.iter().zip(&rhs).map(|(a, b)| a * b).sum();
            self.value[self.basis[r]] = -x;
        }
        self.values_stale = false;
    }

    /// Invert the basis from scratch. Falls back to the slack basis when
    /// the current one is numerically singular.
    fn refactor(&mut self) {
        let n = self.num_cols();
        let m = self.num_rows();
        let mut a = vec![0.0; m * m];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < n {
                for (i, row) in self.model.rows.iter().enumerate() {
                    a[i * m + r] = row.coefs[b];
                }
            } else {
                a[(b - n) * m + r] = -1.0;
            }
        }
        match invert(&mut a, m) {
            Some(inv) => self.binv = inv,
            None => self.slack_basis(),
        }
        self.pivots_since_refactor = 0;
        self.compute_values();
    }

    /// `B⁻¹ · column(j)`.
    fn ftran(&self, j: usize) -> Vec<f64> {
        let n = self.num_cols();
        let m = self.num_rows();
        let mut alpha = vec![0.0; m];
        if j < n {
            for (i, row) in self.model.rows.iter().enumerate() {
                let a = row.coefs[j];
                if a != 0.0 {
                    for (r, out) in alpha.iter_mut().enumerate() {
                        *out += self.binv[r * m + i] * a;
                    }
                }
            }
        } else {
            let i = j - n;
            for (r, out) in alpha.iter_mut().enumerate() {
                *out = -self.binv[r * m + i];
            }
        }
        alpha
    }

    fn cost(&self, j: usize) -> f64 {
        if j < self.num_cols() {
            self.model.objective[j]
        } else {
            0.0
        }
    }

    fn infeasibility(&self, j: usize) -> f64 {
        let v = self.value[j];
        if v < self.lower[j] {
            self.lower[j] - v
        } else if v > self.upper[j] {
            v - self.upper[j]
        } else {
            0.0
        }
    }

    fn phase_one_needed(&self) -> bool {
        let tol = self.options.feas_tol;
        self.basis.iter().any(|&b| self.infeasibility(b) > tol)
    }

    /// Simplex multipliers `y = c_B·B⁻¹` for the phase-1 or phase-2 costs.
    fn multipliers(&self, phase_one: bool) -> Vec<f64> {
        let m = self.num_rows();
        let tol = self.options.feas_tol;
        let mut y = vec![0.0; m];
        for (r, &b) in self.basis.iter().enumerate() {
            let c = if phase_one {
                if self.value[b] < self.lower[b] - tol {
                    -1.0
                } else if self.value[b] > self.upper[b] + tol {
                    1.0
                } else {
                    0.0
                }
            } else {
                self.cost(b)
            };
            if c != 0.0 {
                for (i, yi) in y.iter_mut().enumerate() {
                    *yi += c * self.binv[r * m + i];
                }
            }
        }
        y
    }

    fn reduced_costs(&self, y: &[f64], phase_one: bool) -> Vec<f64> {
        let n = self.num_cols();
        let m = self.num_rows();
        let mut d = vec![0.0; n + m];
        for (row, yi) in self.model.rows.iter().zip(y) {
            if *yi != 0.0 {
                for (dj, a) in d[..n].iter_mut().zip(&row.coefs) {
                    *dj -= yi * a;
                }
            }
        }
        d[n..n + m].copy_from_slice(&y[..m]);
        if !phase_one {
            for (j, dj) in d[..n].iter_mut().enumerate() {
                *dj += self.model.objective[j];
            }
        }
        d
    }

    /// Pick an entering variable and its direction of motion.
    fn price(&self, d: &[f64], bland: bool) -> Option<(usize, f64)> {
        let tol = self.options.opt_tol;
        let mut best: Option<(usize, f64)> = None;
        let mut best_score = 0.0;
        for (j, &dj) in d.iter().enumerate() {
            let dir = match self.state[j] {
                VarState::Basic(_) => continue,
                _ if self.lower[j] == self.upper[j] => continue,
                VarState::AtLower if dj < -tol => 1.0,
                VarState::AtUpper if dj > tol => -1.0,
                VarState::Zero if dj.abs() > tol => -dj.signum(),
                _ => continue,
            };
            if bland {
                return Some((j, dir));
            }
            if dj.abs() > best_score {
                best_score = dj.abs();
                best = Some((j, dir));
            }
        }
        best
    }

    /// Harris two-pass ratio test. Returns the blocking basis position (or
    /// `None` for a bound flip / unbounded move) and the step length.
    fn ratio_test(
        &self,
        q: usize,
        dir: f64,
        alpha: &[f64],
        bland: bool,
    ) -> (Option<(usize, VarState)>, f64) {
        let tol = self.options.feas_tol;
        let limits = |r: usize, relax: f64| -> Option<(f64, VarState)> {
            let b = self.basis[r];
            let delta = -alpha[r] * dir;
            let (v, lo, hi) = (self.value[b], self.lower[b], self.upper[b]);
            if delta > PIVOT_TOL {
                if v < lo - tol {
                    Some(((lo - v + relax) / delta, VarState::AtLower))
                } else if v > hi + tol || !hi.is_finite() {
                    None
                } else {
                    Some((((hi - v).max(0.0) + relax) / delta, VarState::AtUpper))
                }
            } else if delta < -PIVOT_TOL {
                if v > hi + tol {
                    Some(((v - hi + relax) / -delta, VarState::AtUpper))
                } else if v < lo - tol || !lo.is_finite() {
                    None
                } else {
                    Some((((v - lo).max(0.0) + relax) / -delta, VarState::AtLower))
                }
            } else {
                None
            }
        };

        let m = self.num_rows();
        let mut theta_max = f64::INFINITY;
        for r in 0..m {
            if let Some((t, _)) = limits(r, tol) {
                theta_max = theta_max.min(t);
            }
        }
        let range = self.upper[q] - self.lower[q];

        let mut chosen: Option<(usize, VarState, f64)> = None;
        if theta_max.is_finite() {
            if bland {
                let mut min_exact = f64::INFINITY;
                for r in 0..m {
                    if let Some((t, _)) = limits(r, 0.0) {
                        min_exact = min_exact.min(t);
                    }
                }
                for r in 0..m {
                    if let Some((t, leave)) = limits(r, 0.0) {
                        if t <= min_exact + 1e-12 {
                            let better = match chosen {
                                None => true,
                                Some((c, _, _)) => self.basis[r] < self.basis[c],
                            };
                            if better {
                                chosen = Some((r, leave, t));
                            }
                        }
                    }
                }
            } else {
                let mut best_pivot = 0.0;
                for r in 0..m {
                    if let Some((t, leave)) = limits(r, 0.0) {
                        if t <= theta_max && alpha[r].abs() > best_pivot {
                            best_pivot = alpha[r].abs();
                            chosen = Some((r, leave, t));
                        }
                    }
                }
            }
        }

        match chosen {
            Some((_, _, t)) if range <= t => (None, range),
            Some((r, leave, t)) => (Some((r, leave)), t.max(0.0)),
            None => (None, range),
        }
    }

    fn pivot(
        &mut self,
        q: usize,
        dir: f64,
        alpha: &[f64],
        leaving: Option<(usize, VarState)>,
        step: f64,
    ) {
        let m = self.num_rows();
        if step != 0.0 {
            self.value[q] += dir * step;
            for r in 0..m {
                let b = self.basis[r];
                self.value[b] -= alpha[r] * dir * step;
            }
        }
        match leaving {
            None => {
                // bound flip
                self.state[q] = if dir > 0.0 {
                    VarState::AtUpper
                } else {
                    VarState::AtLower
                };
                self.value[q] = self.nonbasic_value(q);
            }
            Some((r, leave_state)) => {
                let b = self.basis[r];
                self.state[b] = leave_state;
                self.value[b] = self.nonbasic_value(b);
                self.basis[r] = q;
                self.state[q] = VarState::Basic(r);

                let piv = alpha[r];
                for i in 0..m {
                    self.binv[r * m + i] /= piv;
                }
                for k in 0..m {
                    if k == r || alpha[k] == 0.0 {
                        continue;
                    }
                    let f = alpha[k];
                    for i in 0..m {
                        self.binv[k * m + i] -= f * self.binv[r * m + i];
                    }
                }
                self.pivots_since_refactor += 1;
            }
        }
    }

    /// Solve from the current basis.
    pub fn solve(&mut self) -> LpSolution {
        let start_iters = self.total_iterations;
        if self.values_stale || self.pivots_since_refactor > 0 {
            self.refactor();
        }
        let mut fresh = true;
        let mut degenerate_run = 0usize;
        let status = loop {
            if self.pivots_since_refactor >= REFACTOR_EVERY {
                self.refactor();
                fresh = true;
            }
            let phase_one = self.phase_one_needed();
            let y = self.multipliers(phase_one);
            let d = self.reduced_costs(&y, phase_one);
            let bland = degenerate_run > STALL_LIMIT;
            let Some((q, dir)) = self.price(&d, bland) else {
                if !fresh {
                    self.refactor();
                    fresh = true;
                    continue;
                }
                break if phase_one {
                    LpStatus::Infeasible
                } else {
                    LpStatus::Optimal
                };
            };
            if self.total_iterations - start_iters >= self.options.max_iters {
                break LpStatus::IterationLimit;
            }
            let alpha = self.ftran(q);
            let (leaving, step) = self.ratio_test(q, dir, &alpha, bland);
            if !step.is_finite() {
                if phase_one {
                    // An improving phase-1 ray cannot exist in exact
                    // arithmetic; rebuild and retry once.
                    if !fresh {
                        self.refactor();
                        fresh = true;
                        continue;
                    }
                    break LpStatus::Infeasible;
                }
                break LpStatus::Unbounded;
            }
            self.pivot(q, dir, &alpha, leaving, step);
            self.total_iterations += 1;
            fresh = false;
            if step <= 1e-12 {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
        };
        self.extract(status, self.total_iterations - start_iters)
    }

    fn extract(&self, status: LpStatus, iterations: usize) -> LpSolution {
        let n = self.num_cols();
        let primal: Vec<f64> = self.value[..n].to_vec();
        let row_activity: Vec<f64> = self
            .model
            .rows
            .iter()
            .map(|row| row.coefs.iter().zip(&primal).map(|(a, x)| a * x).sum())
            .collect();
        let objective_value = self
            .model
            .objective
            .iter()
            .zip(&primal)
            .map(|(c, x)| c * x)
            .sum();
        let (duals, reduced_costs) = if status == LpStatus::Optimal {
            let y = self.multipliers(false);
            let mut d = self.reduced_costs(&y, false);
            for (j, state) in self.state[..n].iter().enumerate() {
                if matches!(state, VarState::Basic(_)) {
                    d[j] = 0.0;
                }
            }
            d.truncate(n);
            (y, d)
        } else {
            (vec![0.0; self.num_rows()], vec![0.0; n])
        };
        LpSolution {
            status,
            objective_value,
            primal,
            duals,
            reduced_costs,
            row_activity,
            iterations,
        }
    }
}

/// Gauss-Jordan inverse with partial pivoting of a row-major `m × m`
/// matrix. `None` when singular.
fn invert(a: &mut [f64], m: usize) -> Option<Vec<f64>> {
    let mut inv = vec![0.0; m * m];
    for i in 0..m {
        inv[i * m + i] = 1.0;
    }
    for col in 0..m {
        let (mut p, mut best) = (col, a[col * m + col].abs());
        for r in col + 1..m {
            let v = a[r * m + col].abs();
            if v > best {
                p = r;
                best = v;
            }
        }
        if best < 1e-11 {
            return None;
        }
        if p != col {
            for k in 0..m {
                a.swap(p * m + k, col * m + k);
                inv.swap(p * m + k, col * m + k);
            }
        }
        let piv = a[col * m + col];
        for k in 0..m {
            a[col * m + k] /= piv;
            inv[col * m + k] /= piv;
        }
        for r in 0..m {
            if r == col {
                continue;
            }
            let f = a[r * m + col];
            if f == 0.0 {
                continue;
            }
            for k in 0..m {
                a[r * m + k] -= f * a[col * m + k];
                inv[r * m + k] -= f * inv[col * m + k];
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn box_model() -> LpModel {
        // minimize x + y s.t. x + 2y >= 2, 3x + y >= 3, 0 <= x, y <= 5
        let mut m = LpModel::new(vec![1.0, 1.0]);
        m.set_bounds(0, 0.0, 5.0).set_bounds(1, 0.0, 5.0);
        m.add_row(vec![1.0, 2.0], Sense::Ge, 2.0);
        m.add_row(vec![3.0, 1.0], Sense::Ge, 3.0);
        m
    }

    #[test]
    fn warm_start_after_row_matches_cold_solve() {
        let mut solver = SimplexSolver::new(box_model(), LpOptions::default()).unwrap();
        let first = solver.solve();
        assert_eq!(first.status, LpStatus::Optimal);
        solver.add_row(vec![1.0, -1.0], Sense::Ge, 0.5).unwrap();
        let warm = solver.solve();

        let mut cold_model = box_model();
        cold_model.add_row(vec![1.0, -1.0], Sense::Ge, 0.5);
        let cold = super::super::solve_lp(&cold_model, &LpOptions::default()).unwrap();
        assert_eq!(warm.status, LpStatus::Optimal);
        assert!((warm.objective_value - cold.objective_value).abs() < 1e-9);
    }

    #[test]
    fn bound_changes_resolve_from_previous_basis() {
        let mut solver = SimplexSolver::new(box_model(), LpOptions::default()).unwrap();
        let base = solver.solve().objective_value;
        solver.set_col_bounds(0, 0.0, 0.0).unwrap();
        let fixed = solver.solve();
        assert_eq!(fixed.status, LpStatus::Optimal);
        assert!((fixed.objective_value - 3.0).abs() < 1e-9);
        solver.set_col_bounds(0, 0.0, 5.0).unwrap();
        assert!((solver.solve().objective_value - base).abs() < 1e-9);
    }

    #[test]
    fn invert_round_trip() {
        let orig = vec![2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0];
        let mut a = orig.clone();
        let inv = invert(&mut a, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| orig[i * 3 + k] * inv[k * 3 + j]).sum();
                assert!((v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
        let mut singular = vec![1.0, 2.0, 2.0, 4.0];
        assert!(invert(&mut singular, 2).is_none());
    }
}

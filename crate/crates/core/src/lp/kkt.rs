use super::{LpModel, LpSolution, Sense};

/// Optimality residuals of a reported solution, recomputed from the model
/// alone.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KktResiduals {
    /// Largest violation of a row or column bound.
    pub primal: f64,
    /// Largest dual sign violation (row duals and reduced costs).
    pub dual: f64,
    /// Largest `|dual × slack|` product over rows and columns.
    pub complementarity: f64,
    /// `|primal objective − dual objective|`.
    pub gap: f64,
    pub dual_objective: f64,
}

impl KktResiduals {
    pub fn max(&self) -> f64 {
        self.primal
            .max(self.dual)
            .max(self.complementarity)
            .max(self.gap)
    }
}

/// Check `solution` against `model` using only the reported primal values
/// and row duals; reduced costs are recomputed as `c − Aᵀy`.
pub fn kkt_residuals(model: &LpModel, solution: &LpSolution) -> KktResiduals {
    let n = model.num_cols();
    let x = &solution.primal;
    let y = &solution.duals;
    let mut res = KktResiduals::default();

    let mut dual_obj = 0.0;
    let mut d: Vec<f64> = model.objective().to_vec();
    for (row, &yi) in model.rows().iter().zip(y) {
        let act: f64 = row.coefs.iter().zip(x).map(|(a, v)| a * v).sum();
        let viol = match row.sense {
            Sense::Ge => (row.rhs - act).max(0.0),
            Sense::Le => (act - row.rhs).max(0.0),
            Sense::Eq => (act - row.rhs).abs(),
        };
        res.primal = res.primal.max(viol);
        let sign_viol = match row.sense {
            Sense::Ge => (-yi).max(0.0),
            Sense::Le => yi.max(0.0),
            Sense::Eq => 0.0,
        };
        res.dual = res.dual.max(sign_viol);
        res.complementarity = res.complementarity.max((yi * (act - row.rhs)).abs());
        dual_obj += yi * row.rhs;
        for (dj, a) in d.iter_mut().zip(&row.coefs) {
            *dj -= yi * a;
        }
    }

    for j in 0..n {
        let (lo, hi, v, dj) = (model.lower()[j], model.upper()[j], x[j], d[j]);
        res.primal = res.primal.max((lo - v).max(0.0)).max((v - hi).max(0.0));
        if dj > 0.0 {
            if lo.is_finite() {
                dual_obj += dj * lo;
                res.complementarity = res.complementarity.max((dj * (v - lo)).abs());
            } else {
                res.dual = res.dual.max(dj);
            }
        } else if dj < 0.0 {
            if hi.is_finite() {
                dual_obj += dj * hi;
                res.complementarity = res.complementarity.max((dj * (hi - v)).abs());
            } else {
                res.dual = res.dual.max(-dj);
            }
        }
    }
    res.dual_objective = dual_obj;
    res.gap = (solution.objective_value - dual_obj).abs();
    res
}

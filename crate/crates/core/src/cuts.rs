//! Basic infeasible subsystems and the hitting-set cuts they induce.
//!
//! If the rows in `B` cannot be satisfied together, every cover must drop
//! one of them: `Σ_{j∈B} s_j ≥ 1`. Supports come from the phase-1 program
//!
//! ```text
//! minimize x₀  s.t.  a_j·x + x₀ ≥ ε (j ∈ J),  −c ≤ x_i ≤ c
//! ```
//!
//! whose rows with positive dual form an infeasible subsystem of at most
//! `d + 1` rows.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::instance::{CutMode, DepthInstance};
use crate::lp::{solve_lp, LpModel, LpOptions, LpStatus, Sense};

/// Duals above this count as positive.
const DUAL_TOL: f64 = 1e-9;

/// Relative margin for calling a subsystem infeasible at every ε.
const STRICT_REL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cut {
    /// Sorted row indices.
    pub support: Vec<usize>,
    /// The homogeneous system `a_j·x > 0` on the support is infeasible,
    /// not only the system with margin ε.
    pub strict: bool,
}

impl Cut {
    pub fn lhs(&self, s: &[f64]) -> f64 {
        self.support.iter().map(|&j| s[j]).sum()
    }

    pub fn is_violated(&self, s: &[f64]) -> bool {
        self.lhs(s) < 1.0 - 1e-9
    }

    /// Does the 0/1 cover hit the support?
    pub fn hit_by(&self, cover: &[usize]) -> bool {
        self.support.iter().any(|j| cover.contains(j))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PoolStats {
    pub offered: usize,
    pub added: usize,
    pub duplicates: usize,
}

/// Deduplicated cuts, in insertion order.
#[derive(Debug, Clone, Default)]
pub struct CutPool {
    cuts: Vec<Cut>,
    seen: BTreeSet<Vec<usize>>,
    stats: PoolStats,
}

impl CutPool {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert unless a cut with the same support exists.
    pub fn insert(&mut self, cut: Cut) -> bool {
        self.stats.offered += 1;
        if self.seen.insert(cut.support.clone()) {
            self.cuts.push(cut);
            self.stats.added += 1;
            true
        } else {
            self.stats.duplicates += 1;
            false
        }
    }

    pub fn contains(&self, support: &[usize]) -> bool {
        self.seen.contains(support)
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn stats(&self) -> PoolStats {
        self.stats
    }
}

/// Outcome of the phase-1 program on a subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOne {
    /// Optimal `x₀`; at most `feas_tol` means feasible.
    pub x0: f64,
    pub direction: Vec<f64>,
    pub duals: Vec<f64>,
}

/// `rows` must be nonempty.
pub fn phase_one(rows: &[&[f64]], epsilon: f64, box_bound: f64, feas_tol: f64) -> Result<PhaseOne> {
    assert!(!rows.is_empty(), "phase-1 program needs at least one row");
    let d = rows.first().map_or(0, |r| r.len());
    let mut obj = vec![0.0; d];
    obj.push(1.0);
    let mut m = LpModel::new(obj);
    for i in 0..d {
        m.set_bounds(i, -box_bound, box_bound);
    }
    m.set_bounds(d, f64::NEG_INFINITY, f64::INFINITY);
    for r in rows {
        let mut coefs = r.to_vec();
        coefs.push(1.0);
        m.add_row(coefs, Sense::Ge, epsilon);
    }
    let opts = LpOptions {
        feas_tol,
        ..LpOptions::default()
    };
    let sol = solve_lp(&m, &opts)?;
    // x₀ free and every row relaxable by x₀: always feasible and bounded
    debug_assert_eq!(sol.status, LpStatus::Optimal);
    Ok(PhaseOne {
        x0: sol.primal[d],
        direction: sol.primal[..d].to_vec(),
        duals: sol.duals,
    })
}

/// Largest `t` with `a_j·x ≥ t` for all rows over the box, and its `x`.
pub fn max_margin(rows: &[&[f64]], box_bound: f64, feas_tol: f64) -> Result<(f64, Vec<f64>)> {
    let ph = phase_one(rows, 0.0, box_bound, feas_tol)?;
    Ok((-ph.x0, ph.direction))
}

/// Extract a BIS from the rows `subset` of `instance`, or `None` when they
/// are feasible with margin ε.
pub fn find_bis(
    instance: &DepthInstance,
    subset: &[usize],
    epsilon: f64,
    box_bound: f64,
    feas_tol: f64,
) -> Result<Option<Cut>> {
    if subset.is_empty() {
        return Ok(None);
    }
    let rows: Vec<&[f64]> = subset.iter().map(|&j| instance.row(j)).collect();
    let ph = phase_one(&rows, epsilon, box_bound, feas_tol)?;
    if ph.x0 <= feas_tol {
        return Ok(None);
    }
    let mut support: Vec<usize> = subset
        .iter()
        .zip(&ph.duals)
        .filter(|(_, &y)| y > DUAL_TOL)
        .map(|(&j, _)| j)
        .collect();
    support.sort_unstable();
    if support.is_empty() {
        return Ok(None);
    }
    Ok(Some(Cut {
        support,
        strict: ph.x0 >= epsilon * (1.0 - STRICT_REL),
    }))
}

/// Indices of the smallest values whose sum stays below 1, as many as
/// possible. Ties are taken in index order.
pub fn pseudo_knapsack_select(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut sum = 0.0;
    let mut k = 0;
    for &j in &idx {
        sum += values[j];
        if sum >= 1.0 {
            break;
        }
        k += 1;
    }
    idx.truncate(k);
    idx
}

/// Separate cuts for a node relaxation.
///
/// `s` holds the relaxation value of every row's binary; `eligible` lists
/// the rows that may appear in a support (rows fixed to one are useless).
/// Supports found in one round are removed before the next search, so one
/// call returns disjoint supports. Cuts already in `pool` are skipped.
#[allow(clippy::too_many_arguments)]
pub fn generate_cuts(
    s: &[f64],
    eligible: &[usize],
    instance: &DepthInstance,
    pool: &CutPool,
    mode: CutMode,
    rounds: usize,
    epsilon: f64,
    box_bound: f64,
    feas_tol: f64,
) -> Result<Vec<Cut>> {
    let mut subset: Vec<usize> = match mode {
        CutMode::None => return Ok(Vec::new()),
        CutMode::Bis => eligible.iter().copied().filter(|&j| s[j] < 0.5).collect(),
        CutMode::BisKnapsack => {
            let vals: Vec<f64> = eligible.iter().map(|&j| s[j]).collect();
            let mut sel: Vec<usize> = pseudo_knapsack_select(&vals)
                .into_iter()
                .map(|k| eligible[k])
                .collect();
            sel.sort_unstable();
            sel
        }
    };
    let mut out: Vec<Cut> = Vec::new();
    while out.len() < rounds {
        let Some(cut) = find_bis(instance, &subset, epsilon, box_bound, feas_tol)? else {
            break;
        };
        subset.retain(|j| cut.support.binary_search(j).is_err());
        if !pool.contains(&cut.support) && !out.iter().any(|c| c.support == cut.support) {
            out.push(cut);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(rows: Vec<Vec<f64>>) -> DepthInstance {
        let w = vec![1; rows.len()];
        DepthInstance::from_rows(rows, w).unwrap()
    }

    fn cross() -> DepthInstance {
        inst(vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ])
    }

    #[test]
    fn antipodal_pair_in_one_dimension() {
        let i = inst(vec![vec![1.0], vec![-1.0]]);
        let rows: Vec<&[f64]> = i.rows().iter().map(Vec::as_slice).collect();
        let ph = phase_one(&rows, 0.1, 1.0, 1e-9).unwrap();
        assert!((ph.x0 - 0.1).abs() < 1e-12);
        assert!(ph.direction[0].abs() < 1e-12);
        let cut = find_bis(&i, &[0, 1], 0.1, 1.0, 1e-9).unwrap().unwrap();
        assert_eq!(cut.support, vec![0, 1]);
        assert!(cut.strict);
    }

    #[test]
    fn feasible_pair_has_no_bis() {
        let i = inst(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(find_bis(&i, &[0, 1], 1e-5, 1.0, 1e-9).unwrap(), None);
    }

    #[test]
    fn cross_support_is_small_and_infeasible() {
        let i = cross();
        let cut = find_bis(&i, &[0, 1, 2, 3], 1e-5, 1.0, 1e-9)
            .unwrap()
            .unwrap();
        assert!(!cut.support.is_empty() && cut.support.len() <= 3);
        let rows: Vec<&[f64]> = cut.support.iter().map(|&j| i.row(j)).collect();
        assert!(phase_one(&rows, 1e-5, 1.0, 1e-9).unwrap().x0 > 1e-9);
    }

    #[test]
    fn knapsack_prefix() {
        assert_eq!(pseudo_knapsack_select(&[0.3, 0.4, 0.5]), vec![0, 1]);
        assert!(pseudo_knapsack_select(&[1.0, 1.0]).is_empty());
        assert_eq!(pseudo_knapsack_select(&[0.5, 0.1, 0.2]), vec![1, 2, 0]);
        assert_eq!(pseudo_knapsack_select(&[0.6, 0.1, 0.4]), vec![1, 2]);
        assert_eq!(pseudo_knapsack_select(&[0.0, 0.0]), vec![0, 1]);
    }

    #[test]
    fn root_cuts_of_cross() {
        let i = cross();
        let pool = CutPool::new();
        let s = [0.0; 4];
        for mode in [CutMode::Bis, CutMode::BisKnapsack] {
            let cuts =
                generate_cuts(&s, &[0, 1, 2, 3], &i, &pool, mode, 10, 1e-5, 1.0, 1e-9).unwrap();
            assert!(!cuts.is_empty());
            for c in &cuts {
                assert!(c.is_violated(&s));
                let rows: Vec<&[f64]> = c.support.iter().map(|&j| i.row(j)).collect();
                assert!(phase_one(&rows, 1e-5, 1.0, 1e-9).unwrap().x0 > 1e-9);
            }
        }
    }

    #[test]
    fn satisfied_relaxation_gives_no_knapsack_cuts() {
        let i = cross();
        let s = [0.5; 4];
        let cuts = generate_cuts(
            &s,
            &[0, 1, 2, 3],
            &i,
            &CutPool::new(),
            CutMode::BisKnapsack,
            10,
            1e-5,
            1.0,
            1e-9,
        )
        .unwrap();
        assert!(cuts.is_empty());
    }

    #[test]
    fn pool_deduplicates() {
        let mut pool = CutPool::new();
        let c = Cut {
            support: vec![0, 2],
            strict: true,
        };
        assert!(pool.insert(c.clone()));
        assert!(!pool.insert(c));
        assert_eq!(pool.len(), 1);
        assert_eq!(pool.stats().duplicates, 1);
    }
}

//! Point sets, the translated row system, and solver parameters.
//!
//! The depth of `p` with respect to `S` is the smallest number of rows
//! `a_j = q_j − p` that must be dropped before the strict system
//! `a_j·x > 0` becomes feasible. [`DepthInstance`] holds those rows after
//! normalization, with rows that point in the same direction merged into
//! one weighted row.

use std::time::Duration;

use serde::Serialize;

use crate::error::{DepthError, Result};

/// Two unit rows merge when they differ by less than this in every
/// coordinate.
pub const MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
    labels: Option<Vec<String>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(DepthError::ZeroDimension);
        }
        if points.is_empty() {
            return Err(DepthError::EmptyPointSet);
        }
        check_dims(dim, &points)?;
        Ok(Self {
            dim,
            points,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(DepthError::InvalidParams(format!(
                "{} labels for {} points",
                labels.len(),
                self.points.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Split off point `index` as a query; the rest keep their relative
    /// order. Returned indices map the remainder back into `self`.
    pub fn split_query(&self, index: usize) -> Result<(Vec<Vec<f64>>, Vec<usize>, Vec<f64>)> {
        if index >= self.len() {
            return Err(DepthError::IndexOutOfRange {
                index,
                len: self.len(),
            });
        }
        let mut rest = Vec::with_capacity(self.len() - 1);
        let mut ids = Vec::with_capacity(self.len() - 1);
        for (i, q) in self.points.iter().enumerate() {
            if i != index {
                rest.push(q.clone());
                ids.push(i);
            }
        }
        Ok((rest, ids, self.points[index].clone()))
    }

    /// Append one point.
    pub fn push(&mut self, point: Vec<f64>) -> Result<()> {
        if point.len() != self.dim {
            return Err(DepthError::DimensionMismatch {
                index: self.len(),
                got: point.len(),
                expected: self.dim,
            });
        }
        self.points.push(point);
        if let Some(labels) = &mut self.labels {
            labels.push(String::new());
        }
        Ok(())
    }
}

fn check_dims(dim: usize, points: &[Vec<f64>]) -> Result<()> {
    for (index, q) in points.iter().enumerate() {
        if q.len() != dim {
            return Err(DepthError::DimensionMismatch {
                index,
                got: q.len(),
                expected: dim,
            });
        }
    }
    Ok(())
}

/// Translated, normalized, and merged row system for one query point.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthInstance {
    dim: usize,
    rows: Vec<Vec<f64>>,
    weights: Vec<usize>,
    forced: Vec<usize>,
    origin_point: Vec<f64>,
    row_origin: Vec<Vec<usize>>,
}

impl DepthInstance {
    /// Build from raw points. With `merge` off every nonzero difference
    /// vector keeps its own unit-weight row.
    pub fn from_points(dim: usize, points: &[Vec<f64>], p: &[f64], merge: bool) -> Result<Self> {
        if dim == 0 {
            return Err(DepthError::ZeroDimension);
        }
        check_dims(dim, points)?;
        if p.len() != dim {
            return Err(DepthError::DimensionMismatch {
                index: points.len(),
                got: p.len(),
                expected: dim,
            });
        }
        let p_norm = norm(p);
        let mut inst = Self {
            dim,
            rows: Vec::new(),
            weights: Vec::new(),
            forced: Vec::new(),
            origin_point: p.to_vec(),
            row_origin: Vec::new(),
        };
        for (idx, q) in points.iter().enumerate() {
            let a: Vec<f64> = q.iter().zip(p).map(|(qi, pi)| qi - pi).collect();
            let len = norm(&a);
            if len <= 1e-12 * (1.0 + p_norm) {
                inst.forced.push(idx);
                continue;
            }
            let unit: Vec<f64> = a.iter().map(|v| v / len).collect();
            let existing = if merge {
                inst.rows
                    .iter()
                    .position(|r| r.iter().zip(&unit).all(|(x, y)| (x - y).abs() < MERGE_TOL))
            } else {
                None
            };
            match existing {
                Some(k) => {
                    inst.weights[k] += 1;
                    inst.row_origin[k].push(idx);
                }
                None => {
                    inst.rows.push(unit);
                    inst.weights.push(1);
                    inst.row_origin.push(vec![idx]);
                }
            }
        }
        Ok(inst)
    }

    /// Rows with explicit weights and no forced points; used when the row
    /// system is the natural input (for example elastic-program tests).
    pub fn from_rows(rows: Vec<Vec<f64>>, weights: Vec<usize>) -> Result<Self> {
        let dim = rows
            .first()
            .map(Vec::len)
            .ok_or(DepthError::EmptyPointSet)?;
        if dim == 0 {
            return Err(DepthError::ZeroDimension);
        }
        check_dims(dim, &rows)?;
        if weights.len() != rows.len() || weights.contains(&0) {
            return Err(DepthError::InvalidParams(
                "one positive weight per row required".into(),
            ));
        }
        let mut origin = Vec::with_capacity(rows.len());
        let mut next = 0;
        for &w in &weights {
            origin.push((next..next + w).collect());
            next += w;
        }
        Ok(Self {
            dim,
            rows,
            weights,
            forced: Vec::new(),
            origin_point: vec![0.0; dim],
            row_origin: origin,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, j: usize) -> &[f64] {
        &self.rows[j]
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn weight(&self, j: usize) -> usize {
        self.weights[j]
    }

    /// Points equal to the query; each lies in every closed halfspace.
    pub fn forced(&self) -> &[usize] {
        &self.forced
    }

    pub fn forced_count(&self) -> usize {
        self.forced.len()
    }

    pub fn origin_point(&self) -> &[f64] {
        &self.origin_point
    }

    pub fn row_origin(&self) -> &[Vec<usize>] {
        &self.row_origin
    }

    /// Number of input points represented.
    pub fn num_points(&self) -> usize {
        self.weights.iter().sum::<usize>() + self.forced.len()
    }

    pub fn total_weight(&self) -> usize {
        self.weights.iter().sum()
    }

    pub fn cover_weight(&self, cover: &[usize]) -> usize {
        cover.iter().map(|&j| self.weights[j]).sum()
    }

    /// Original point indices behind a set of rows, plus the forced points.
    pub fn expand_cover(&self, cover_rows: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = self.forced.clone();
        for &j in cover_rows {
            out.extend_from_slice(&self.row_origin[j]);
        }
        out.sort_unstable();
        out
    }

    /// Same instance with each weighted row repeated `weight` times.
    pub fn expanded(&self) -> Self {
        let mut rows = Vec::new();
        let mut origin = Vec::new();
        for (j, r) in self.rows.iter().enumerate() {
            for &idx in &self.row_origin[j] {
                rows.push(r.clone());
                origin.push(vec![idx]);
            }
        }
        Self {
            dim: self.dim,
            weights: vec![1; rows.len()],
            rows,
            forced: self.forced.clone(),
            origin_point: self.origin_point.clone(),
            row_origin: origin,
        }
    }
}

/// Translate, normalize and merge: the default instance construction.
pub fn build_instance(points: &PointSet, p: &[f64]) -> Result<DepthInstance> {
    DepthInstance::from_points(points.dim(), points.points(), p, true)
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Big-M for one row: `√(d·c²)·‖a‖`, the largest value `−a·x` can take over
/// the box `|x_i| ≤ c`.
pub fn big_m(dim: usize, box_bound: f64, row_norm: f64) -> f64 {
    (dim as f64 * box_bound * box_bound).sqrt() * row_norm
}

pub fn compute_big_m(instance: &DepthInstance, box_bound: f64) -> Vec<f64> {
    instance
        .rows()
        .iter()
        .map(|r| big_m(instance.dim(), box_bound, norm(r)))
        .collect()
}

/// Lower bound `(2m√d)^{−(d−1)}` on the distance from the origin to an
/// affine hull of `d` affinely independent integer points with coordinates
/// bounded by `m`, when that hull misses the origin.
///
/// This is a guaranteed-safe scale for ε on integral data but is far too
/// small to use in practice once `d` grows.
pub fn lattice_epsilon_bound(coord_bound: u64, dim: usize) -> f64 {
    let base = 2.0 * coord_bound as f64 * (dim as f64).sqrt();
    base.powi(-(dim as i32 - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchingRule {
    /// Branch on the row with the largest estimated SINF drop.
    Greedy,
    /// Strong branching over the `candidates` most fractional binaries.
    Strong { candidates: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutMode {
    /// BIS cuts from rows whose relaxation value is below one half.
    Bis,
    /// BIS cuts from the pseudo-knapsack selection.
    BisKnapsack,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeuristicMode {
    /// Drop the row with the largest estimated SINF drop.
    SingleCandidate,
    /// Re-solve for the `k` best-scored rows and drop the one whose
    /// removal lowers SINF the most.
    TestedCandidates { k: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverParams {
    /// Strictness margin: `a_j·x > 0` is modelled as `a_j·x ≥ ε`.
    pub epsilon: f64,
    /// Box `−c ≤ x_i ≤ c` on the direction.
    pub box_bound: f64,
    /// Explicit per-row big-M; computed from the box when `None`.
    pub big_m: Option<Vec<f64>>,
    pub cut_rounds: usize,
    pub improve_tol: f64,
    pub feas_tol: f64,
    pub int_tol: f64,
    pub time_limit: Duration,
    pub node_limit: usize,
    pub branching: BranchingRule,
    pub cuts: CutMode,
    pub heuristic: HeuristicMode,
    /// Margin above which the binary search accepts a guess.
    pub eps_accept: f64,
    /// Reuse the cut pool across binary-search guesses.
    pub reuse_pool: bool,
    /// Try rounding fractional relaxations into covers.
    pub rounding: bool,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            epsilon: 1e-5,
            box_bound: 1.0,
            big_m: None,
            cut_rounds: 10,
            improve_tol: 1e-3,
            feas_tol: 1e-9,
            int_tol: 1e-6,
            time_limit: Duration::from_secs(600),
            node_limit: 1_000_000,
            branching: BranchingRule::Greedy,
            cuts: CutMode::BisKnapsack,
            heuristic: HeuristicMode::TestedCandidates { k: 3 },
            eps_accept: 1e-7,
            reuse_pool: true,
            rounding: true,
        }
    }
}

impl SolverParams {
    /// Strong branching pairs with plain BIS cuts by default; the knapsack
    /// selector tends to flatten the relaxation values strong branching
    /// relies on.
    pub fn strong() -> Self {
        Self {
            branching: BranchingRule::Strong { candidates: 5 },
            cuts: CutMode::Bis,
            ..Self::default()
        }
    }

    pub fn big_m_for(&self, instance: &DepthInstance) -> Result<Vec<f64>> {
        let m = match &self.big_m {
            Some(m) if m.len() != instance.num_rows() => {
                return Err(DepthError::InvalidParams(format!(
                    "{} big-M values for {} rows",
                    m.len(),
                    instance.num_rows()
                )))
            }
            Some(m) => m.clone(),
            None => compute_big_m(instance, self.box_bound),
        };
        if let Some(min_m) = m.iter().copied().reduce(f64::min) {
            if self.epsilon >= min_m {
                return Err(DepthError::InvalidParams(format!(
                    "epsilon {} must stay below the smallest big-M {min_m}",
                    self.epsilon
                )));
            }
        }
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("epsilon", self.epsilon),
            ("box_bound", self.box_bound),
            ("improve_tol", self.improve_tol),
            ("feas_tol", self.feas_tol),
            ("int_tol", self.int_tol),
            ("eps_accept", self.eps_accept),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(DepthError::InvalidParams(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if let BranchingRule::Strong { candidates: 0 } = self.branching {
            return Err(DepthError::InvalidParams(
                "strong branching needs at least one candidate".into(),
            ));
        }
        if let HeuristicMode::TestedCandidates { k: 0 } = self.heuristic {
            return Err(DepthError::InvalidParams(
                "tested-candidate heuristic needs k > 0".into(),
            ));
        }
        Ok(())
    }
}

//! Chinneck's elastic-programming heuristic for MIN IIS COVER.
//!
//! Every row `a_j·x ≥ ε` gains an elastic variable `e_j ≥ 0` and the
//! program minimizes `Σ e_j` (SINF). The shadow price of a row estimates how
//! much SINF drops when that row is removed; the heuristic repeatedly drops
//! the most promising row until the surviving rows are feasible.

use crate::error::Result;
use crate::instance::{DepthInstance, HeuristicMode, SolverParams};
use crate::lp::{solve_lp, LpModel, LpOptions, LpSolution, LpStatus, Sense};

/// Elastic program over `rows`: columns are `x` (boxed by `c`) followed by
/// one elastic variable per row.
pub fn elasticize(rows: &[&[f64]], epsilon: f64, box_bound: f64) -> LpModel {
    elasticize_with_hard(rows, &[], epsilon, box_bound)
}

/// Like [`elasticize`] with extra rows `a·x ≥ ε` that get no elastic
/// variable.
pub fn elasticize_with_hard(
    rows: &[&[f64]],
    hard: &[&[f64]],
    epsilon: f64,
    box_bound: f64,
) -> LpModel {
    elasticize_weighted(rows, &vec![1.0; rows.len()], hard, epsilon, box_bound)
}

/// Elastic program whose objective charges `weights[j]` per unit of
/// violation of row `j`, so a row of weight `w` counts like `w` copies.
pub fn elasticize_weighted(
    rows: &[&[f64]],
    weights: &[f64],
    hard: &[&[f64]],
    epsilon: f64,
    box_bound: f64,
) -> LpModel {
    let d = rows.iter().chain(hard).next().map_or(0, |r| r.len());
    let n = rows.len();
    let mut obj = vec![0.0; d];
    obj.extend_from_slice(weights);
    let mut m = LpModel::new(obj);
    for i in 0..d {
        m.set_bounds(i, -box_bound, box_bound);
    }
    for (j, r) in rows.iter().enumerate() {
        let mut coefs = r.to_vec();
        coefs.resize(d + n, 0.0);
        coefs[d + j] = 1.0;
        m.add_row(coefs, Sense::Ge, epsilon);
    }
    for r in hard {
        let mut coefs = r.to_vec();
        coefs.resize(d + n, 0.0);
        m.add_row(coefs, Sense::Ge, epsilon);
    }
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElasticDiagnostics {
    pub sinf: f64,
    pub ninf: usize,
    /// Elastic variable value per elastic row.
    pub violations: Vec<f64>,
    /// Shadow price per elastic row.
    pub sensitivities: Vec<f64>,
    pub direction: Vec<f64>,
    pub iterations: usize,
}

impl ElasticDiagnostics {
    fn from_solution(sol: &LpSolution, d: usize, n: usize, feas_tol: f64) -> Self {
        let violations: Vec<f64> = sol.primal[d..d + n].iter().map(|v| v.max(0.0)).collect();
        Self {
            sinf: sol.objective_value.max(0.0),
            ninf: violations.iter().filter(|&&v| v > feas_tol).count(),
            violations,
            sensitivities: sol.duals[..n].to_vec(),
            direction: sol.primal[..d].to_vec(),
            iterations: sol.iterations,
        }
    }
}

/// Solve the elastic program. `None` when the hard rows alone are
/// infeasible (the program without hard rows is always feasible).
pub fn elastic_solve(
    rows: &[&[f64]],
    hard: &[&[f64]],
    epsilon: f64,
    box_bound: f64,
    feas_tol: f64,
) -> Result<Option<ElasticDiagnostics>> {
    elastic_solve_weighted(
        rows,
        &vec![1.0; rows.len()],
        hard,
        epsilon,
        box_bound,
        feas_tol,
    )
}

/// [`elastic_solve`] over [`elasticize_weighted`].
pub fn elastic_solve_weighted(
    rows: &[&[f64]],
    weights: &[f64],
    hard: &[&[f64]],
    epsilon: f64,
    box_bound: f64,
    feas_tol: f64,
) -> Result<Option<ElasticDiagnostics>> {
    let d = rows.iter().chain(hard).next().map_or(0, |r| r.len());
    let model = elasticize_weighted(rows, weights, hard, epsilon, box_bound);
    let opts = LpOptions {
        feas_tol,
        ..LpOptions::default()
    };
    let sol = solve_lp(&model, &opts)?;
    match sol.status {
        LpStatus::Optimal => Ok(Some(ElasticDiagnostics::from_solution(
            &sol,
            d,
            rows.len(),
            feas_tol,
        ))),
        _ => Ok(None),
    }
}

/// The elastic program of `params` measured in units of ε: right-hand
/// sides 1 and box `c/ε`. Feasibility is unchanged, but violations become
/// comparable to shadow prices, which keeps the drop estimates below
/// meaningful for small ε. The direction is scaled back into the box.
pub fn elastic_solve_scaled(
    rows: &[&[f64]],
    weights: &[f64],
    hard: &[&[f64]],
    params: &SolverParams,
) -> Result<Option<ElasticDiagnostics>> {
    let eps = params.epsilon;
    let diag = elastic_solve_weighted(
        rows,
        weights,
        hard,
        1.0,
        params.box_bound / eps,
        params.feas_tol,
    )?;
    Ok(diag.map(|mut d| {
        d.direction.iter_mut().for_each(|x| *x *= eps);
        d
    }))
}

/// Estimated SINF drop per row: `violation × |sensitivity|` for violated
/// rows, `|sensitivity|` otherwise.
pub fn estimate_drops(diag: &ElasticDiagnostics, feas_tol: f64) -> Vec<f64> {
    diag.violations
        .iter()
        .zip(&diag.sensitivities)
        .map(|(&v, &s)| if v > feas_tol { v * s.abs() } else { s.abs() })
        .collect()
}

/// Drop estimates per unit of weight. The weighted elastic program already
/// prices a row of weight `w` like `w` copies, while dropping it costs `w`.
pub(crate) fn per_unit_weight(scores: &mut [f64], weights: impl Iterator<Item = f64>) {
    for (s, w) in scores.iter_mut().zip(weights) {
        *s /= w;
    }
}

/// First index of the largest value among `candidates`.
pub(crate) fn argmax_first(
    scores: &[f64],
    candidates: impl IntoIterator<Item = usize>,
) -> Option<usize> {
    let mut best: Option<usize> = None;
    for j in candidates {
        if best.is_none_or(|b| scores[j] > scores[b]) {
            best = Some(j);
        }
    }
    best
}

/// Indices of the `k` largest scores, best first, ties to the lower index.
fn top_k(scores: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    idx.truncate(k);
    idx
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicCover {
    /// Dropped rows, in removal order.
    pub cover: Vec<usize>,
    /// Satisfies `a_j·x ≥ ε − feas_tol` on every surviving row.
    pub direction: Vec<f64>,
    /// Final SINF of the surviving rows.
    pub sinf: f64,
    pub lp_iterations: usize,
}

/// Drop rows until the rest is feasible. Violations are charged by row
/// weight and scores are compared per unit of weight.
pub fn chinneck_cover(instance: &DepthInstance, params: &SolverParams) -> Result<HeuristicCover> {
    let all: Vec<usize> = (0..instance.num_rows()).collect();
    chinneck_cover_subset(instance, &all, &[], params)
}

/// Heuristic restricted to `active` rows, with `hard` rows that must stay
/// satisfied. Returns the dropped rows as instance indices.
pub fn chinneck_cover_subset(
    instance: &DepthInstance,
    active: &[usize],
    hard: &[usize],
    params: &SolverParams,
) -> Result<HeuristicCover> {
    let tol = params.feas_tol;
    let hard_rows: Vec<&[f64]> = hard.iter().map(|&j| instance.row(j)).collect();
    let mut alive: Vec<usize> = active.to_vec();
    let mut cover = Vec::new();
    let mut iterations = 0;

    let solve = |alive: &[usize], iterations: &mut usize| -> Result<Option<ElasticDiagnostics>> {
        let rows: Vec<&[f64]> = alive.iter().map(|&j| instance.row(j)).collect();
        let weights: Vec<f64> = alive.iter().map(|&j| instance.weight(j) as f64).collect();
        let diag = elastic_solve_scaled(&rows, &weights, &hard_rows, params)?;
        if let Some(d) = &diag {
            *iterations += d.iterations;
        }
        Ok(diag)
    };

    let Some(mut diag) = solve(&alive, &mut iterations)? else {
        // hard rows infeasible: nothing to drop can help
        return Ok(HeuristicCover {
            cover: alive,
            direction: vec![0.0; instance.dim()],
            sinf: f64::INFINITY,
            lp_iterations: iterations,
        });
    };

    while diag.sinf > tol && !alive.is_empty() {
        let mut scores = estimate_drops(&diag, tol);
        per_unit_weight(
            &mut scores,
            alive.iter().map(|&j| instance.weight(j) as f64),
        );
        let pos = match params.heuristic {
            HeuristicMode::SingleCandidate => argmax_first(&scores, 0..alive.len()).unwrap(),
            HeuristicMode::TestedCandidates { k } => {
                let mut best: Option<(usize, ElasticDiagnostics)> = None;
                for cand in top_k(&scores, k) {
                    let mut trial = alive.clone();
                    trial.remove(cand);
                    let Some(d) = solve(&trial, &mut iterations)? else {
                        continue;
                    };
                    let better = best.as_ref().is_none_or(|(_, b)| d.sinf < b.sinf - tol);
                    if better {
                        let done = d.sinf <= tol;
                        best = Some((cand, d));
                        if done {
                            break;
                        }
                    }
                }
                match best {
                    Some((cand, d)) => {
                        cover.push(alive.remove(cand));
                        diag = d;
                        continue;
                    }
                    None => argmax_first(&scores, 0..alive.len()).unwrap(),
                }
            }
        };
        cover.push(alive.remove(pos));
        match solve(&alive, &mut iterations)? {
            Some(d) => diag = d,
            None => break,
        }
    }

    Ok(HeuristicCover {
        cover,
        direction: diag.direction,
        sinf: diag.sinf,
        lp_iterations: iterations,
    })
}

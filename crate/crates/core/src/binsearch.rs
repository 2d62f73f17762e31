//! Depth by binary search over cover budgets.
//!
//! For a guess `g` the margin program
//!
//! ```text
//! minimize −ε  s.t.  a_j·x + M_j s_j − ε ≥ 0,  Σ w_j s_j ≤ g,  ε ≥ 0
//! ```
//!
//! has a solution with `ε > 0` exactly when the depth is at most `g`. No
//! margin has to be fixed in advance, and the winning cover comes with the
//! margin it achieves.

use std::time::Instant;

use crate::bnc::{finish, DepthResult, Engine, Objective, Outcome, SearchStats, Status};
use crate::cuts::CutPool;
use crate::elastic::chinneck_cover;
use crate::error::Result;
use crate::instance::{DepthInstance, SolverParams};

#[derive(Debug, Clone, PartialEq)]
pub enum GuessOutcome {
    /// No cover of weight at most the guess leaves a feasible system.
    Below,
    AtOrAbove {
        epsilon: f64,
        cover: Vec<usize>,
        direction: Vec<f64>,
    },
    /// A limit stopped the search before either was proven.
    Limit(Status),
}

/// Decide whether `depth − forced ≤ guess`. The search stops at the first
/// cover whose margin exceeds `eps_accept`. Strict cuts in `pool` are
/// loaded first; new strict cuts are added to it.
pub fn test_guess(
    instance: &DepthInstance,
    guess: usize,
    pool: &mut CutPool,
    params: &SolverParams,
) -> Result<(GuessOutcome, SearchStats)> {
    let mut engine = Engine::new(instance, params, Objective::MaxMargin { guess }, pool)?;
    let outcome = match engine.run()? {
        Outcome::Exhausted => GuessOutcome::Below,
        Outcome::Found {
            rows,
            direction,
            margin,
        } => GuessOutcome::AtOrAbove {
            epsilon: margin,
            cover: rows,
            direction,
        },
        Outcome::Limit(s) => GuessOutcome::Limit(s),
    };
    Ok((outcome, engine.stats.clone()))
}

/// Binary search on `[0, heuristic weight]`, keeping `lo ≤ depth ≤ hi`.
/// `epsilon_star` on the result is the largest margin of the final cover.
pub fn binary_search_depth(instance: &DepthInstance, params: &SolverParams) -> Result<DepthResult> {
    binary_search_depth_with_pool(instance, params, &mut CutPool::new())
}

pub fn binary_search_depth_with_pool(
    instance: &DepthInstance,
    params: &SolverParams,
    pool: &mut CutPool,
) -> Result<DepthResult> {
    let start = Instant::now();
    params.validate()?;
    let mut stats = SearchStats::default();
    if instance.num_rows() == 0 {
        return finish(instance, params, Vec::new(), Status::Proven, stats, start);
    }
    let heur = chinneck_cover(instance, params)?;
    stats.lp_iterations += heur.lp_iterations;
    let hw = instance.cover_weight(&heur.cover);
    stats.heuristic_bound = hw;

    let mut best = heur.cover;
    let (mut lo, mut hi) = (0, hw);
    let mut status = Status::Proven;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let remaining = params.time_limit.saturating_sub(start.elapsed());
        let local = SolverParams {
            time_limit: remaining,
            ..params.clone()
        };
        let mut guess_pool = CutPool::new();
        let pool_ref = if params.reuse_pool {
            &mut *pool
        } else {
            &mut guess_pool
        };
        let (outcome, s) = test_guess(instance, mid, pool_ref, &local)?;
        stats.nodes += s.nodes;
        stats.cuts += s.cuts;
        stats.lp_iterations += s.lp_iterations;
        stats.guesses += 1;
        match outcome {
            GuessOutcome::Below => lo = mid + 1,
            GuessOutcome::AtOrAbove { cover, .. } => {
                hi = instance.cover_weight(&cover).min(mid);
                best = cover;
            }
            GuessOutcome::Limit(s) => {
                status = s;
                break;
            }
        }
    }
    finish(instance, params, best, status, stats, start)
}

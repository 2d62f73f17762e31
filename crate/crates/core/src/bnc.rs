//! Branch-and-cut for the big-M depth program
//!
//! ```text
//! minimize    Σ w_j s_j
//! subject to  a_j·x + M_j s_j ≥ ε
//!             −c ≤ x_i ≤ c,  s_j ∈ {0, 1}
//! ```
//!
//! plus hitting-set cuts `Σ_{j∈B} s_j ≥ 1`. The same engine runs the
//! margin-maximizing variant used by the binary search (see
//! [`crate::binsearch`]).
//!
//! The search is a depth-first dive: after branching on `s_b` the child with
//! `s_b = 1` is processed first. The incumbent starts from Chinneck's
//! heuristic. Since weights are integers a node is pruned once
//! `⌈bound − 10⁻⁶⌉` reaches the incumbent.
//!
//! ε matters. Too small and the strict inequalities are lost to rounding;
//! too large and directions with a small but positive margin are missed,
//! inflating the depth. The result records the ε it was computed with.

use std::time::Instant;

use serde::Serialize;

use crate::cuts::{generate_cuts, max_margin, phase_one, Cut, CutPool};
use crate::elastic::{argmax_first, chinneck_cover, elastic_solve_scaled, estimate_drops};
use crate::error::Result;
use crate::instance::{BranchingRule, CutMode, DepthInstance, SolverParams};
use crate::lp::{LpModel, LpOptions, LpSolution, LpStatus, Sense, SimplexSolver};

/// Cap on cut rounds at a single node.
const MAX_NODE_ROUNDS: usize = 200;
const PRUNE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Proven,
    TimeLimit,
    NodeLimit,
    /// Upper bound from the heuristic alone.
    Heuristic,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Proven => "Proven",
            Status::TimeLimit => "TimeLimit",
            Status::NodeLimit => "NodeLimit",
            Status::Heuristic => "Heuristic",
        }
    }

    pub fn hit_limit(self) -> bool {
        matches!(self, Status::TimeLimit | Status::NodeLimit)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SearchStats {
    pub nodes: usize,
    /// Cuts added to the relaxation.
    pub cuts: usize,
    pub lp_iterations: usize,
    pub time_ms: f64,
    /// Root relaxation bound after cutting.
    pub root_bound: f64,
    /// Weight of the heuristic cover used as first incumbent.
    pub heuristic_bound: usize,
    /// MIP solves made by the binary search.
    pub guesses: usize,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.cuts += other.cuts;
        self.lp_iterations += other.lp_iterations;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthResult {
    /// Cover weight plus the number of points equal to the query.
    pub depth: usize,
    /// Original point indices in the cover, forced points included.
    pub cover: Vec<usize>,
    /// Instance rows in the cover.
    pub cover_rows: Vec<usize>,
    /// `a_j·x > 0` on every row outside the cover.
    pub direction: Vec<f64>,
    pub status: Status,
    pub epsilon: f64,
    /// Margin reached by `direction` on the surviving rows.
    pub epsilon_star: Option<f64>,
    pub stats: SearchStats,
}

/// Open node: binaries fixed on the path from the root.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchNode {
    pub fixed_one: Vec<usize>,
    pub fixed_zero: Vec<usize>,
    /// Relaxation bound of the parent.
    pub parent_bound: f64,
    pub depth: usize,
}

impl SearchNode {
    pub fn root() -> Self {
        Self {
            fixed_one: Vec::new(),
            fixed_zero: Vec::new(),
            parent_bound: f64::NEG_INFINITY,
            depth: 0,
        }
    }

    fn child(&self, b: usize, one: bool, bound: f64) -> Self {
        let mut c = self.clone();
        if one {
            c.fixed_one.push(b);
        } else {
            c.fixed_zero.push(b);
        }
        c.parent_bound = bound;
        c.depth += 1;
        c
    }
}

/// Push both children; the `s_b = 1` child goes last so it is popped first.
pub fn push_children(tree: &mut Vec<SearchNode>, node: &SearchNode, b: usize, bound: f64) {
    tree.push(node.child(b, false, bound));
    tree.push(node.child(b, true, bound));
}

pub fn next_node(tree: &mut Vec<SearchNode>) -> Option<SearchNode> {
    tree.pop()
}

#[derive(Debug, Clone, PartialEq)]
pub enum GreedyChoice {
    Branch(usize),
    /// Unfixed and fixed-zero rows are jointly feasible.
    Feasible(Vec<f64>),
    /// Fixed-zero rows alone are infeasible.
    Infeasible,
}

/// Elastic program over the node's unfixed rows, with fixed-zero rows kept
/// as hard constraints; branch on the largest drop estimate per unit weight.
pub fn select_branch_greedy(
    instance: &DepthInstance,
    node: &SearchNode,
    params: &SolverParams,
) -> Result<(GreedyChoice, usize)> {
    let n = instance.num_rows();
    let mut fixed = vec![false; n];
    for &j in node.fixed_one.iter().chain(&node.fixed_zero) {
        fixed[j] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !fixed[j]).collect();
    let rows: Vec<&[f64]> = free.iter().map(|&j| instance.row(j)).collect();
    let hard: Vec<&[f64]> = node.fixed_zero.iter().map(|&j| instance.row(j)).collect();
    if rows.is_empty() && hard.is_empty() {
        return Ok((GreedyChoice::Feasible(unit_direction(instance.dim())), 0));
    }
    let weights: Vec<f64> = free.iter().map(|&j| instance.weight(j) as f64).collect();
    let Some(diag) = elastic_solve_scaled(&rows, &weights, &hard, params)? else {
        return Ok((GreedyChoice::Infeasible, 0));
    };
    let iters = diag.iterations;
    if diag.sinf <= params.feas_tol || free.is_empty() {
        return Ok((GreedyChoice::Feasible(diag.direction), iters));
    }
    let mut scores = estimate_drops(&diag, params.feas_tol);
    crate::elastic::per_unit_weight(&mut scores, weights.iter().copied());
    let k = argmax_first(&scores, 0..free.len()).expect("free rows exist");
    Ok((GreedyChoice::Branch(free[k]), iters))
}

fn unit_direction(d: usize) -> Vec<f64> {
    let mut x = vec![0.0; d];
    if d > 0 {
        x[0] = 1.0;
    }
    x
}

/// Strong-branching score: product of the child bound gains, each floored.
pub fn strong_score(parent: f64, down: f64, up: f64) -> f64 {
    const FLOOR: f64 = 1e-6;
    const INFEASIBLE_GAIN: f64 = 1e6;
    let gain = |child: f64| {
        if child.is_finite() {
            (child - parent).max(FLOOR)
        } else {
            INFEASIBLE_GAIN
        }
    };
    gain(down) * gain(up)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Objective {
    MinCover,
    /// Maximize the margin with cover weight at most `guess`.
    MaxMargin {
        guess: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
struct Incumbent {
    weight: usize,
    rows: Vec<usize>,
    direction: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome {
    /// Tree exhausted; incumbent is optimal (MinCover) or no cover of the
    /// guessed weight has a positive margin (MaxMargin).
    Exhausted,
    /// MaxMargin only: cover with margin above the acceptance threshold.
    Found {
        rows: Vec<usize>,
        direction: Vec<f64>,
        margin: f64,
    },
    Limit(Status),
}

/// Mutable search state shared by both objectives.
pub(crate) struct Engine<'a> {
    inst: &'a DepthInstance,
    params: &'a SolverParams,
    objective: Objective,
    pool: &'a mut CutPool,
    lp: SimplexSolver,
    d: usize,
    n: usize,
    /// Current bounds of each binary: `None` free, `Some(v)` fixed.
    fixed: Vec<Option<bool>>,
    incumbent: Option<Incumbent>,
    pub(crate) stats: SearchStats,
    start: Instant,
    root_done: bool,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(
        inst: &'a DepthInstance,
        params: &'a SolverParams,
        objective: Objective,
        pool: &'a mut CutPool,
    ) -> Result<Self> {
        params.validate()?;
        let d = inst.dim();
        let n = inst.num_rows();
        let c = params.box_bound;
        let mut big_m = params.big_m_for(inst)?;
        let margin_col = matches!(objective, Objective::MaxMargin { .. });
        if margin_col {
            // s_j = 1 must also absorb the margin variable, capped at c
            for m in &mut big_m {
                *m += c;
            }
        }
        let mut obj = vec![0.0; d];
        obj.extend(inst.weights().iter().map(|&w| match objective {
            Objective::MinCover => w as f64,
            Objective::MaxMargin { .. } => 0.0,
        }));
        if margin_col {
            obj.push(-1.0);
        }
        let cols = obj.len();
        let mut model = LpModel::new(obj);
        for i in 0..d {
            model.set_bounds(i, -c, c);
        }
        for j in 0..n {
            model.set_bounds(d + j, 0.0, 1.0);
        }
        if margin_col {
            model.set_bounds(d + n, 0.0, c);
        }
        for j in 0..n {
            let mut coefs = vec![0.0; cols];
            coefs[..d].copy_from_slice(inst.row(j));
            coefs[d + j] = big_m[j];
            match objective {
                Objective::MinCover => {
                    model.add_row(coefs, Sense::Ge, params.epsilon);
                }
                Objective::MaxMargin { .. } => {
                    coefs[d + n] = -1.0;
                    model.add_row(coefs, Sense::Ge, 0.0);
                }
            }
        }
        if let Objective::MaxMargin { guess } = objective {
            let mut coefs = vec![0.0; cols];
            for j in 0..n {
                coefs[d + j] = inst.weight(j) as f64;
            }
            model.add_row(coefs, Sense::Le, guess as f64);
        }
        let opts = LpOptions {
            feas_tol: params.feas_tol,
            ..LpOptions::default()
        };
        let lp = SimplexSolver::new(model, opts)?;
        let preload: Vec<Cut> = pool.cuts().to_vec();
        let mut engine = Self {
            inst,
            params,
            objective,
            pool,
            lp,
            d,
            n,
            fixed: vec![None; n],
            incumbent: None,
            stats: SearchStats::default(),
            start: Instant::now(),
            root_done: false,
        };
        for cut in &preload {
            if engine.cut_allowed(cut) {
                engine.add_cut_row(cut)?;
            }
        }
        Ok(engine)
    }

    fn cut_allowed(&self, cut: &Cut) -> bool {
        match self.objective {
            Objective::MinCover => true,
            Objective::MaxMargin { .. } => cut.strict,
        }
    }

    fn add_cut_row(&mut self, cut: &Cut) -> Result<()> {
        let mut coefs = vec![0.0; self.lp.num_cols()];
        for &j in &cut.support {
            coefs[self.d + j] = 1.0;
        }
        self.lp.add_row(coefs, Sense::Ge, 1.0)?;
        Ok(())
    }

    fn out_of_time(&self) -> bool {
        self.start.elapsed() >= self.params.time_limit
    }

    fn set_incumbent(&mut self, rows: Vec<usize>, direction: Vec<f64>) {
        let weight = self.inst.cover_weight(&rows);
        if self
            .incumbent
            .as_ref()
            .is_none_or(|inc| weight < inc.weight)
        {
            self.incumbent = Some(Incumbent {
                weight,
                rows,
                direction,
            });
        }
    }

    fn incumbent_weight(&self) -> f64 {
        self.incumbent
            .as_ref()
            .map_or(f64::INFINITY, |inc| inc.weight as f64)
    }

    fn apply(&mut self, node: &SearchNode) -> Result<()> {
        let mut want = vec![None; self.n];
        for &j in &node.fixed_one {
            want[j] = Some(true);
        }
        for &j in &node.fixed_zero {
            want[j] = Some(false);
        }
        for j in 0..self.n {
            if want[j] != self.fixed[j] {
                let (lo, hi) = match want[j] {
                    None => (0.0, 1.0),
                    Some(true) => (1.0, 1.0),
                    Some(false) => (0.0, 0.0),
                };
                self.lp.set_col_bounds(self.d + j, lo, hi)?;
                self.fixed[j] = want[j];
            }
        }
        Ok(())
    }

    fn solve_lp(&mut self) -> LpSolution {
        let sol = self.lp.solve();
        self.stats.lp_iterations += sol.iterations;
        sol
    }

    fn s_values<'s>(&self, sol: &'s LpSolution) -> &'s [f64] {
        &sol.primal[self.d..self.d + self.n]
    }

    fn is_integral(&self, s: &[f64]) -> bool {
        let tol = self.params.int_tol;
        s.iter().all(|&v| v <= tol || v >= 1.0 - tol)
    }

    /// Can this relaxation value still lead somewhere useful?
    fn prunable(&self, obj: f64) -> bool {
        match self.objective {
            Objective::MinCover => (obj - PRUNE_TOL).ceil() >= self.incumbent_weight(),
            Objective::MaxMargin { .. } => -obj <= self.params.eps_accept,
        }
    }

    fn rows_where(&self, s: &[f64], pred: impl Fn(f64) -> bool) -> Vec<usize> {
        (0..self.n).filter(|&j| pred(s[j])).collect()
    }

    /// Handle a cover candidate whose survivors are known feasible.
    /// Returns `Some` when the MaxMargin search can stop.
    fn offer(&mut self, rows: Vec<usize>, direction: Vec<f64>) -> Result<Option<Outcome>> {
        match self.objective {
            Objective::MinCover => {
                self.set_incumbent(rows, direction);
                Ok(None)
            }
            Objective::MaxMargin { guess } => {
                if self.inst.cover_weight(&rows) > guess {
                    return Ok(None);
                }
                let (margin, x) = self.survivor_margin(&rows)?;
                if margin > self.params.eps_accept {
                    Ok(Some(Outcome::Found {
                        rows,
                        direction: x,
                        margin,
                    }))
                } else {
                    Ok(None)
                }
            }
        }
    }

    fn survivor_margin(&self, cover: &[usize]) -> Result<(f64, Vec<f64>)> {
        survivor_margin(self.inst, cover, self.params)
    }

    /// Round `s > 1/2` to one and keep the result if the rest is feasible.
    fn try_rounding(&mut self, s: &[f64]) -> Result<Option<Outcome>> {
        let cover = self.rows_where(s, |v| v > 0.5);
        if let Objective::MinCover = self.objective {
            if self.inst.cover_weight(&cover) as f64 >= self.incumbent_weight() {
                return Ok(None);
            }
        }
        let survivors: Vec<&[f64]> = (0..self.n)
            .filter(|j| cover.binary_search(j).is_err())
            .map(|j| self.inst.row(j))
            .collect();
        if survivors.is_empty() {
            return self.offer(cover, unit_direction(self.d));
        }
        let ph = phase_one(
            &survivors,
            self.params.epsilon,
            self.params.box_bound,
            self.params.feas_tol,
        )?;
        if ph.x0 <= self.params.feas_tol {
            return self.offer(cover, ph.direction);
        }
        Ok(None)
    }

    fn strong_branch(&mut self, s: &[f64], parent: f64, f: usize) -> Result<usize> {
        let tol = self.params.int_tol;
        let mut cands: Vec<usize> = (0..self.n)
            .filter(|&j| self.fixed[j].is_none() && s[j] > tol && s[j] < 1.0 - tol)
            .collect();
        if cands.is_empty() {
            cands = (0..self.n).filter(|&j| self.fixed[j].is_none()).collect();
        }
        cands.sort_by(|&a, &b| {
            (s[a] - 0.5)
                .abs()
                .total_cmp(&(s[b] - 0.5).abs())
                .then(a.cmp(&b))
        });
        cands.truncate(f);
        if cands.len() == 1 {
            return Ok(cands[0]);
        }
        let mut best = (f64::NEG_INFINITY, cands[0]);
        for &b in &cands {
            let mut child = [f64::INFINITY; 2];
            for (k, v) in [0.0, 1.0].into_iter().enumerate() {
                self.lp.set_col_bounds(self.d + b, v, v)?;
                let sol = self.solve_lp();
                if sol.is_optimal() {
                    child[k] = sol.objective_value;
                }
            }
            self.lp.set_col_bounds(self.d + b, 0.0, 1.0)?;
            let score = strong_score(parent, child[0], child[1]);
            if score > best.0 {
                best = (score, b);
            }
        }
        Ok(best.1)
    }

    fn most_fractional(&self, s: &[f64]) -> Option<usize> {
        (0..self.n)
            .filter(|&j| self.fixed[j].is_none())
            .min_by(|&a, &b| {
                (s[a] - 0.5)
                    .abs()
                    .total_cmp(&(s[b] - 0.5).abs())
                    .then(a.cmp(&b))
            })
    }

    /// Solve the relaxation of `node`, adding cuts while the bound moves.
    fn bound_node(&mut self, node: &SearchNode) -> Result<NodeStep> {
        self.apply(node)?;
        let mut sol = self.solve_lp();
        let mut rounds = 0;
        loop {
            match sol.status {
                LpStatus::Optimal => {}
                LpStatus::Infeasible => return Ok(NodeStep::Fathomed),
                // no usable bound; branch blind
                _ => return Ok(NodeStep::Branch(None)),
            }
            let obj = sol.objective_value;
            if self.prunable(obj) {
                return Ok(NodeStep::Fathomed);
            }
            let s = self.s_values(&sol).to_vec();
            if self.is_integral(&s) {
                let rows = self.rows_where(&s, |v| v > 0.5);
                let x = sol.primal[..self.d].to_vec();
                if let Some(out) = self.offer(rows, x)? {
                    return Ok(NodeStep::Stop(out));
                }
                if let Objective::MinCover = self.objective {
                    return Ok(NodeStep::Fathomed);
                }
            }
            if rounds >= MAX_NODE_ROUNDS || self.params.cuts == CutMode::None || self.out_of_time()
            {
                break;
            }
            let eligible: Vec<usize> = (0..self.n)
                .filter(|&j| self.fixed[j] != Some(true))
                .collect();
            let cuts = generate_cuts(
                &s,
                &eligible,
                self.inst,
                self.pool,
                self.params.cuts,
                self.params.cut_rounds,
                self.params.epsilon,
                self.params.box_bound,
                self.params.feas_tol,
            )?;
            let mut added = 0;
            for cut in cuts {
                if self.cut_allowed(&cut) && self.pool_insert(cut.clone()) {
                    self.add_cut_row(&cut)?;
                    added += 1;
                }
            }
            if added == 0 {
                break;
            }
            self.stats.cuts += added;
            rounds += 1;
            let next = self.solve_lp();
            let improved = if next.is_optimal() {
                next.objective_value - obj
            } else {
                f64::INFINITY
            };
            sol = next;
            if improved < self.params.improve_tol {
                // take the final solution through the checks once more
                rounds = MAX_NODE_ROUNDS;
            }
        }
        if !self.root_done {
            self.stats.root_bound = sol.objective_value;
            self.root_done = true;
        }
        Ok(NodeStep::Branch(Some(sol)))
    }

    fn pool_insert(&mut self, cut: Cut) -> bool {
        self.pool.insert(cut)
    }

    pub(crate) fn run(&mut self) -> Result<Outcome> {
        let mut tree = vec![SearchNode::root()];
        while let Some(node) = next_node(&mut tree) {
            if self.out_of_time() {
                return Ok(Outcome::Limit(Status::TimeLimit));
            }
            if self.stats.nodes >= self.params.node_limit {
                return Ok(Outcome::Limit(Status::NodeLimit));
            }
            if self.prunable(node.parent_bound) {
                continue;
            }
            self.stats.nodes += 1;
            let (s, obj) = match self.bound_node(&node)? {
                NodeStep::Fathomed => continue,
                NodeStep::Stop(out) => return Ok(out),
                NodeStep::Branch(Some(sol)) => (self.s_values(&sol).to_vec(), sol.objective_value),
                NodeStep::Branch(None) => (vec![0.5; self.n], node.parent_bound),
            };
            if self.params.rounding {
                if let Some(out) = self.try_rounding(&s)? {
                    return Ok(out);
                }
                if self.prunable(obj) {
                    continue;
                }
            }
            let b = match self.params.branching {
                BranchingRule::Greedy => {
                    let (choice, iters) = select_branch_greedy(self.inst, &node, self.params)?;
                    self.stats.lp_iterations += iters;
                    match choice {
                        GreedyChoice::Branch(b) => Some(b),
                        GreedyChoice::Feasible(x) => {
                            if let Some(out) = self.offer(node.fixed_one.clone(), x)? {
                                return Ok(out);
                            }
                            continue;
                        }
                        GreedyChoice::Infeasible => self.most_fractional(&s),
                    }
                }
                BranchingRule::Strong { candidates } => {
                    if self.fixed.iter().all(Option::is_some) {
                        None
                    } else {
                        Some(self.strong_branch(&s, obj, candidates)?)
                    }
                }
            };
            if let Some(b) = b {
                push_children(&mut tree, &node, b, obj);
            }
        }
        Ok(Outcome::Exhausted)
    }
}

enum NodeStep {
    Fathomed,
    Stop(Outcome),
    Branch(Option<LpSolution>),
}

/// Largest margin over the box of the rows outside `cover`, with its
/// direction. An empty survivor set has margin `c`.
pub(crate) fn survivor_margin(
    inst: &DepthInstance,
    cover: &[usize],
    params: &SolverParams,
) -> Result<(f64, Vec<f64>)> {
    let rows: Vec<&[f64]> = (0..inst.num_rows())
        .filter(|j| !cover.contains(j))
        .map(|j| inst.row(j))
        .collect();
    if rows.is_empty() {
        let mut x = unit_direction(inst.dim());
        x.iter_mut().for_each(|v| *v *= params.box_bound);
        return Ok((params.box_bound, x));
    }
    max_margin(&rows, params.box_bound, params.feas_tol)
}

pub(crate) fn finish(
    inst: &DepthInstance,
    params: &SolverParams,
    mut rows: Vec<usize>,
    status: Status,
    mut stats: SearchStats,
    start: Instant,
) -> Result<DepthResult> {
    rows.sort_unstable();
    let (margin, direction) = survivor_margin(inst, &rows, params)?;
    stats.time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(DepthResult {
        depth: inst.cover_weight(&rows) + inst.forced_count(),
        cover: inst.expand_cover(&rows),
        cover_rows: rows,
        direction,
        status,
        epsilon: params.epsilon,
        epsilon_star: Some(margin),
        stats,
    })
}

/// Upper bound from the elastic heuristic alone, tagged `Heuristic`.
pub fn heuristic_depth(inst: &DepthInstance, params: &SolverParams) -> Result<DepthResult> {
    let start = Instant::now();
    params.validate()?;
    let mut stats = SearchStats::default();
    if inst.num_rows() == 0 {
        return finish(inst, params, Vec::new(), Status::Heuristic, stats, start);
    }
    let heur = chinneck_cover(inst, params)?;
    stats.lp_iterations = heur.lp_iterations;
    stats.heuristic_bound = inst.cover_weight(&heur.cover);
    finish(inst, params, heur.cover, Status::Heuristic, stats, start)
}

/// Exact depth by branch-and-cut with a fresh cut pool.
pub fn solve_depth(inst: &DepthInstance, params: &SolverParams) -> Result<DepthResult> {
    solve_depth_with_pool(inst, params, &mut CutPool::new())
}

/// Exact depth by branch-and-cut. Cuts already in `pool` are loaded into
/// the root relaxation and new cuts are added to it; every pool cut must
/// be valid for this instance and ε.
pub fn solve_depth_with_pool(
    inst: &DepthInstance,
    params: &SolverParams,
    pool: &mut CutPool,
) -> Result<DepthResult> {
    let start = Instant::now();
    params.validate()?;
    let mut stats = SearchStats::default();
    if inst.num_rows() == 0 {
        return finish(inst, params, Vec::new(), Status::Proven, stats, start);
    }
    let heur = chinneck_cover(inst, params)?;
    stats.lp_iterations += heur.lp_iterations;
    stats.heuristic_bound = inst.cover_weight(&heur.cover);
    if stats.heuristic_bound == 0 {
        return finish(inst, params, Vec::new(), Status::Proven, stats, start);
    }
    let mut engine = Engine::new(inst, params, Objective::MinCover, pool)?;
    engine.start = start;
    let mut cover = heur.cover;
    cover.sort_unstable();
    engine.set_incumbent(cover, heur.direction);
    let status = match engine.run()? {
        Outcome::Exhausted | Outcome::Found { .. } => Status::Proven,
        Outcome::Limit(s) => s,
    };
    stats.absorb(&engine.stats);
    stats.root_bound = engine.stats.root_bound;
    let rows = engine
        .incumbent
        .take()
        .map(|inc| inc.rows)
        .unwrap_or_default();
    finish(inst, params, rows, status, stats, start)
}

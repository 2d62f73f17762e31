//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::time::Instant;

use hsdepth::anova::{gen_random_anova, sign_gradients};
use hsdepth::binsearch::binary_search_depth;
use hsdepth::bnc::solve_depth_with_pool;
use hsdepth::cuts::{phase_one, pseudo_knapsack_select, CutPool};
use hsdepth::elastic::chinneck_cover;
use hsdepth::lp::{kkt_residuals, solve_lp, LpOptions};
use hsdepth::oracle::{depth_of, oracle_depth, sweep_depth_2d};
use hsdepth::random::{random_point, random_point_set};
use hsdepth::{build_instance, solve_depth, DepthInstance, PointSet, SolverParams, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SUITE: u64 = 200;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} [{tag}] {name}: {detail}");
        if !ok {
            self.failed += 1;
        }
    }
}

/// Per-instance results from the shared random suite.
struct SuiteRow {
    oracle: usize,
    bnc: usize,
    bnc_status: Status,
    bins: usize,
    bins_status: Status,
    guesses: usize,
    heuristic_bound: usize,
    heuristic: usize,
    half_eps: usize,
    cuts_checked: usize,
    bad_cuts: Vec<String>,
}

fn origin(d: usize) -> Vec<f64> {
    vec![0.0; d]
}

fn check_pool(
    inst: &DepthInstance,
    pool: &CutPool,
    cover_rows: &[usize],
    params: &SolverParams,
) -> Vec<String> {
    let mut bad = Vec::new();
    for cut in pool.cuts() {
        if cut.support.is_empty() || cut.support.len() > inst.dim() + 1 {
            bad.push(format!(
                "support size {} in d={}",
                cut.support.len(),
                inst.dim()
            ));
            continue;
        }
        let rows: Vec<&[f64]> = cut.support.iter().map(|&j| inst.row(j)).collect();
        let ph = phase_one(&rows, params.epsilon, params.box_bound, params.feas_tol).unwrap();
        if ph.x0 <= params.feas_tol {
            bad.push(format!("feasible support {:?}", cut.support));
        }
        if !cut.hit_by(cover_rows) {
            bad.push(format!("optimal cover misses cut {:?}", cut.support));
        }
    }
    bad
}

fn run_suite(params: &SolverParams) -> (Vec<SuiteRow>, f64, f64) {
    let mut rows = Vec::new();
    let mut bnc_secs = 0.0;
    let mut oracle_secs = 0.0;
    for i in 0..SUITE {
        let s = common::suite_instance(i);
        let p = origin(s.dim());
        let inst = build_instance(&s, &p).unwrap();

        let t = Instant::now();
        let oracle = depth_of(&s, &p);
        oracle_secs += t.elapsed().as_secs_f64();

        let t = Instant::now();
        let mut pool = CutPool::new();
        let r = solve_depth_with_pool(&inst, params, &mut pool).unwrap();
        bnc_secs += t.elapsed().as_secs_f64();
        let bad_cuts = check_pool(&inst, &pool, &r.cover_rows, params);

        let b = binary_search_depth(&inst, params).unwrap();
        let h = chinneck_cover(&inst, params).unwrap();
        let halved = SolverParams {
            epsilon: params.epsilon / 2.0,
            ..params.clone()
        };
        let half = solve_depth(&inst, &halved).unwrap();
        rows.push(SuiteRow {
            oracle,
            bnc: r.depth,
            bnc_status: r.status,
            bins: b.depth,
            bins_status: b.status,
            guesses: b.stats.guesses,
            heuristic_bound: b.stats.heuristic_bound,
            heuristic: inst.cover_weight(&h.cover) + inst.forced_count(),
            half_eps: half.depth,
            cuts_checked: pool.len(),
            bad_cuts,
        });
    }
    (rows, bnc_secs, oracle_secs)
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

fn criterion_1(rep: &mut Report, suite: &[SuiteRow], bnc_secs: f64, oracle_secs: f64) {
    let mismatches: Vec<usize> = (0..suite.len())
        .filter(|&i| suite[i].bnc_status != Status::Proven || suite[i].bnc != suite[i].oracle)
        .collect();
    let total = bnc_secs + oracle_secs;
    rep.line(
        1,
        "branch-and-cut equals oracle",
        mismatches.is_empty() && total < 600.0,
        format!(
            "{}/{} proven and equal (mismatched instances {:?}); {:.1}s solver + {:.1}s oracle",
            suite.len() - mismatches.len(),
            suite.len(),
            mismatches,
            bnc_secs,
            oracle_secs
        ),
    );
}

fn criterion_2(rep: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = 0;
    let trials = 500;
    for _ in 0..trials {
        let n = rng.random_range(1..=40);
        let rows: Vec<Vec<f64>> = (0..n).map(|_| random_point(&mut rng, 2, 10)).collect();
        if oracle_depth(&rows, 2) != sweep_depth_2d(&rows).unwrap() {
            bad += 1;
        }
    }
    rep.line(
        2,
        "oracle equals planar sweep",
        bad == 0,
        format!("{}/{trials} agree", trials - bad),
    );
}

fn criterion_3(rep: &mut Report, suite: &[SuiteRow]) {
    let disagree = suite
        .iter()
        .filter(|r| r.bins_status != Status::Proven || r.bins != r.bnc)
        .count();
    let over = suite
        .iter()
        .filter(|r| r.guesses > ceil_log2(r.heuristic_bound) + 1)
        .count();
    let max_guesses = suite.iter().map(|r| r.guesses).max().unwrap_or(0);
    rep.line(
        3,
        "binary search equals branch-and-cut",
        disagree == 0 && over == 0,
        format!(
            "{}/{} equal; guess budget exceeded on {over} (max {max_guesses} guesses)",
            suite.len() - disagree,
            suite.len()
        ),
    );
}

fn criterion_4(rep: &mut Report, suite: &[SuiteRow]) {
    let below = suite.iter().filter(|r| r.heuristic < r.oracle).count();
    let exact = suite.iter().filter(|r| r.heuristic == r.oracle).count();
    let rate = exact as f64 / suite.len() as f64;
    rep.line(
        4,
        "heuristic is an upper bound, often exact",
        below == 0 && rate >= 0.70,
        format!(
            "{below} below the depth; exact on {exact}/{} ({:.1}%)",
            suite.len(),
            rate * 100.0
        ),
    );
}

fn criterion_5(rep: &mut Report, suite: &[SuiteRow]) {
    let total: usize = suite.iter().map(|r| r.cuts_checked).sum();
    let bad: Vec<&String> = suite.iter().flat_map(|r| &r.bad_cuts).collect();
    rep.line(
        5,
        "cuts are small infeasible subsystems",
        bad.is_empty() && total > 0,
        format!(
            "{total} cuts checked, {} violations {:?}",
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

fn exhaustive_knapsack(values: &[f64]) -> usize {
    let n = values.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let sum: f64 = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| values[i])
            .sum();
        if sum < 1.0 {
            best = k;
        }
    }
    best
}

fn criterion_6(rep: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let trials = 1000;
    let mut bad = 0;
    for _ in 0..trials {
        let len = rng.random_range(0..=15);
        let scale = rng.random_range(0.05..1.0);
        let values: Vec<f64> = (0..len)
            .map(|_| rng.random_range(0.0..=1.0) * scale)
            .collect();
        let sel = pseudo_knapsack_select(&values);
        let sum: f64 = sel.iter().map(|&i| values[i]).sum();
        if sel.len() != exhaustive_knapsack(&values) || sum >= 1.0 {
            bad += 1;
        }
    }
    rep.line(
        6,
        "pseudo-knapsack greedy is optimal",
        bad == 0,
        format!("{}/{trials} match exhaustive search", trials - bad),
    );
}

fn criterion_7(rep: &mut Report, params: &SolverParams) {
    let shapes = [(4, 4, 2), (4, 4, 3), (4, 4, 4)];
    let mut equal = 0;
    let mut fewer_nodes = 0;
    let mut detail = Vec::new();
    let count = 20;
    for i in 0..count {
        let (n, m, r) = shapes[i % shapes.len()];
        let spec = gen_random_anova(n, m, r, 700 + i as u64, 0.0, 1.0).unwrap();
        let s = sign_gradients(&spec);
        let p = origin(s.dim());
        let weighted = build_instance(&s, &p).unwrap();
        let expanded = DepthInstance::from_points(s.dim(), s.points(), &p, false).unwrap();
        let w = solve_depth(&weighted, params).unwrap();
        let e = solve_depth(&expanded, params).unwrap();
        let ok = w.depth == e.depth && w.status == Status::Proven && e.status == Status::Proven;
        equal += ok as usize;
        fewer_nodes += (w.stats.nodes <= e.stats.nodes) as usize;
        detail.push(format!(
            "{}/{}n{}",
            w.depth,
            e.depth,
            w.stats.nodes as i64 - e.stats.nodes as i64
        ));
    }
    rep.line(
        7,
        "weighted program equals expanded program",
        equal == count && fewer_nodes * 10 >= count * 8,
        format!(
            "{equal}/{count} equal depth; weighted used no more nodes on {fewer_nodes}/{count} (depth w/e, node diff: {})",
            detail.join(" ")
        ),
    );
}

fn criterion_8(rep: &mut Report, params: &SolverParams) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let trials = 100;
    let mut bad = Vec::new();
    for t in 0..trials {
        let n = rng.random_range(8..=30);
        let d = rng.random_range(2..=4);
        let mut s: PointSet = random_point_set(n, d, 10, rng.random()).unwrap();
        let p = origin(d);
        let before = solve_depth(&build_instance(&s, &p).unwrap(), params).unwrap();
        s.push(random_point(&mut rng, d, 10)).unwrap();
        let after = solve_depth(&build_instance(&s, &p).unwrap(), params).unwrap();
        let proven = before.status == Status::Proven && after.status == Status::Proven;
        if !proven || after.depth < before.depth || after.depth > before.depth + 1 {
            bad.push(t);
        }
    }
    rep.line(
        8,
        "adding a point raises depth by 0 or 1",
        bad.is_empty(),
        format!(
            "{}/{trials} trials monotone (failures {bad:?})",
            trials - bad.len()
        ),
    );
}

fn criterion_9(rep: &mut Report, suite: &[SuiteRow]) {
    let bad: Vec<usize> = (0..suite.len())
        .filter(|&i| suite[i].half_eps != suite[i].bnc)
        .collect();
    rep.line(
        9,
        "halving epsilon keeps the depth",
        bad.is_empty(),
        format!(
            "{}/{} unchanged (changed {bad:?})",
            suite.len() - bad.len(),
            suite.len()
        ),
    );
}

fn criterion_10(rep: &mut Report) {
    let trials = 500;
    let mut worst: f64 = 0.0;
    let mut bad = 0;
    for seed in 0..trials {
        let model = common::random_feasible_lp(10_000 + seed);
        let sol = solve_lp(&model, &LpOptions::default()).unwrap();
        if !sol.is_optimal() {
            bad += 1;
            continue;
        }
        let k = kkt_residuals(&model, &sol);
        let gap = k.gap / (1.0 + sol.objective_value.abs());
        let r = k.complementarity.max(gap).max(k.primal).max(k.dual);
        worst = worst.max(r);
        if r > 1e-7 {
            bad += 1;
        }
    }
    rep.line(
        10,
        "simplex duality and complementary slackness",
        bad == 0,
        format!(
            "{}/{trials} within 1e-7 (worst residual {worst:.2e})",
            trials - bad
        ),
    );
}

fn main() {
    let params = SolverParams::default();
    let mut rep = Report { failed: 0 };
    let start = Instant::now();

    let (suite, bnc_secs, oracle_secs) = run_suite(&params);
    criterion_1(&mut rep, &suite, bnc_secs, oracle_secs);
    criterion_2(&mut rep);
    criterion_3(&mut rep, &suite);
    criterion_4(&mut rep, &suite);
    criterion_5(&mut rep, &suite);
    criterion_6(&mut rep);
    criterion_7(&mut rep, &params);
    criterion_8(&mut rep, &params);
    criterion_9(&mut rep, &suite);
    criterion_10(&mut rep);

    println!(
        "acceptance: {} of 10 criteria passed in {:.1}s",
        10 - rep.failed,
        start.elapsed().as_secs_f64()
    );
    if rep.failed > 0 {
        std::process::exit(1);
    }
}

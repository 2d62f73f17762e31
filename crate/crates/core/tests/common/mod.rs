#![allow(dead_code)]

use hsdepth::lp::{LpModel, Sense};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random LP that is feasible by construction: rows are built around a
/// hidden point inside the column bounds. Free columns are kept bounded
/// through explicit rows so the optimum is finite.
pub fn random_feasible_lp(seed: u64) -> LpModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=7);
    let m = rng.random_range(1..=9);
    let objective: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
    let mut model = LpModel::new(objective);
    let mut hidden = vec![0.0; n];
    let mut free_cols = Vec::new();
    for (j, h) in hidden.iter_mut().enumerate() {
        match rng.random_range(0..4) {
            0 => {
                model.set_bounds(j, f64::NEG_INFINITY, f64::INFINITY);
                free_cols.push(j);
                *h = rng.random_range(-3.0..3.0);
            }
            1 => {
                model.set_bounds(j, 1.0, 1.0);
                *h = 1.0;
            }
            _ => {
                let lo = rng.random_range(-4.0..0.0);
                let hi = lo + rng.random_range(0.5..6.0);
                model.set_bounds(j, lo, hi);
                *h = rng.random_range(lo..=hi);
            }
        }
    }
    for _ in 0..m {
        let coefs: Vec<f64> = (0..n)
            .map(|_| {
                if rng.random_bool(0.2) {
                    0.0
                } else {
                    rng.random_range(-4i32..=4) as f64
                }
            })
            .collect();
        let act: f64 = coefs.iter().zip(&hidden).map(|(a, x)| a * x).sum();
        let slack = rng.random_range(0.0..2.0);
        match rng.random_range(0..3) {
            0 => model.add_row(coefs, Sense::Ge, act - slack),
            1 => model.add_row(coefs, Sense::Le, act + slack),
            _ => model.add_row(coefs, Sense::Eq, act),
        };
    }
    for j in free_cols {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        model.add_row(e.clone(), Sense::Le, 10.0);
        model.add_row(e, Sense::Ge, -10.0);
    }
    model
}

/// Instance `i` of the shared random suite: n in [8, 40], d in [2, 5],
/// integer coordinates in [−10, 10], query at the origin.
pub fn suite_instance(i: u64) -> hsdepth::PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + i);
    let n = rng.random_range(8..=40);
    let d = rng.random_range(2..=5);
    hsdepth::random::random_point_set(n, d, 10, rng.random()).unwrap()
}

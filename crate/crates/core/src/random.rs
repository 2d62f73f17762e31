//! Seeded random integer point sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{DepthError, Result};
use crate::instance::PointSet;

/// `n` points with integer coordinates uniform in `[−range, range]`.
pub fn random_point_set(n: usize, dim: usize, range: i64, seed: u64) -> Result<PointSet> {
    if range < 0 {
        return Err(DepthError::InvalidParams(format!(
            "coordinate range must be non-negative, got {range}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| rng.random_range(-range..=range) as f64)
                .collect()
        })
        .collect();
    PointSet::new(dim, points)
}

/// One more random point in the same range, drawn from `rng`.
pub fn random_point(rng: &mut impl Rng, dim: usize, range: i64) -> Vec<f64> {
    (0..dim)
        .map(|_| rng.random_range(-range..=range) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_range() {
        let a = random_point_set(30, 4, 10, 7).unwrap();
        let b = random_point_set(30, 4, 10, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_point_set(30, 4, 10, 8).unwrap());
        for q in a.points() {
            assert!(q.iter().all(|v| v.fract() == 0.0 && v.abs() <= 10.0));
        }
    }
}

//! Two-factor ANOVA sign gradients.
//!
//! Observations `z_ijk` (level `i` of the first factor, level `j` of the
//! second, replicate `k`) are fitted by the additive model `μ_i + ν_j`.
//! The point set is the sign gradients
//!
//! ```text
//! G_ijk = −sign(z_ijk − μ_i − ν_j) · (e_i + e_{n+j})
//! ```
//!
//! in dimension `n + m`, with the origin as query. At most `2nm` distinct
//! points occur, so the set is heavily duplicated once `r > 1`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{DepthError, Result};
use crate::instance::PointSet;

#[derive(Debug, Clone, PartialEq)]
pub struct AnovaSpec {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    /// `(μ_1..μ_n, ν_1..ν_m)`.
    pub theta: Vec<f64>,
    /// `z[(i·m + j)·r + k]`.
    pub z: Vec<f64>,
    pub seed: u64,
}

impl AnovaSpec {
    pub fn new(n: usize, m: usize, r: usize, theta: Vec<f64>, z: Vec<f64>) -> Result<Self> {
        if n == 0 || m == 0 || r == 0 {
            return Err(DepthError::InvalidParams(
                "n, m and r must be positive".into(),
            ));
        }
        if theta.len() != n + m {
            return Err(DepthError::InvalidParams(format!(
                "theta has {} entries, expected {}",
                theta.len(),
                n + m
            )));
        }
        if z.len() != n * m * r {
            return Err(DepthError::InvalidParams(format!(
                "{} observations, expected {}",
                z.len(),
                n * m * r
            )));
        }
        Ok(Self {
            n,
            m,
            r,
            theta,
            z,
            seed: 0,
        })
    }

    pub fn z(&self, i: usize, j: usize, k: usize) -> f64 {
        self.z[(i * self.m + j) * self.r + k]
    }

    pub fn with_theta(mut self, theta: Vec<f64>) -> Result<Self> {
        if theta.len() != self.n + self.m {
            return Err(DepthError::InvalidParams(format!(
                "theta has {} entries, expected {}",
                theta.len(),
                self.n + self.m
            )));
        }
        self.theta = theta;
        Ok(self)
    }
}

/// Least-squares additive fit of a balanced layout: `μ_i` is the row mean
/// and `ν_j` the column mean minus the grand mean.
pub fn least_squares_fit(n: usize, m: usize, r: usize, z: &[f64]) -> Vec<f64> {
    let at = |i: usize, j: usize, k: usize| z[(i * m + j) * r + k];
    let grand = z.iter().sum::<f64>() / z.len() as f64;
    let mut theta = Vec::with_capacity(n + m);
    for i in 0..n {
        let s: f64 = (0..m)
            .flat_map(|j| (0..r).map(move |k| (j, k)))
            .map(|(j, k)| at(i, j, k))
            .sum();
        theta.push(s / (m * r) as f64);
    }
    for j in 0..m {
        let s: f64 = (0..n)
            .flat_map(|i| (0..r).map(move |k| (i, k)))
            .map(|(i, k)| at(i, j, k))
            .sum();
        theta.push(s / (n * r) as f64 - grand);
    }
    theta
}

/// Sample `z ~ N(mean, sd²)` and fit θ by least squares.
pub fn gen_random_anova(
    n: usize,
    m: usize,
    r: usize,
    seed: u64,
    mean: f64,
    sd: f64,
) -> Result<AnovaSpec> {
    let normal = Normal::new(mean, sd).map_err(|e| DepthError::InvalidParams(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z: Vec<f64> = (0..n * m * r).map(|_| normal.sample(&mut rng)).collect();
    let theta = least_squares_fit(n.max(1), m.max(1), r.max(1), &z);
    let mut spec = AnovaSpec::new(n, m, r, theta, z)?;
    spec.seed = seed;
    Ok(spec)
}

/// The gradient point set, labelled `i,j,k`. Residuals of exactly zero
/// give the zero vector.
pub fn sign_gradients(spec: &AnovaSpec) -> PointSet {
    let (n, m, r) = (spec.n, spec.m, spec.r);
    let mut points = Vec::with_capacity(n * m * r);
    let mut labels = Vec::with_capacity(n * m * r);
    for i in 0..n {
        for j in 0..m {
            for k in 0..r {
                let res = spec.z(i, j, k) - spec.theta[i] - spec.theta[n + j];
                let sign = if res > 0.0 {
                    1.0
                } else if res < 0.0 {
                    -1.0
                } else {
                    0.0
                };
                let mut g = vec![0.0; n + m];
                g[i] = -sign;
                g[n + j] = -sign;
                // avoid -0.0 in output
                if sign == 0.0 {
                    g.iter_mut().for_each(|v| *v = 0.0);
                }
                points.push(g);
                labels.push(format!("{i},{j},{k}"));
            }
        }
    }
    PointSet::new(n + m, points)
        .and_then(|p| p.with_labels(labels))
        .expect("sizes validated by AnovaSpec")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell() {
        let spec = AnovaSpec::new(1, 1, 1, vec![2.0, 1.0], vec![5.0]).unwrap();
        assert_eq!(sign_gradients(&spec).points(), &[vec![-1.0, -1.0]]);
        let spec = AnovaSpec::new(1, 1, 1, vec![2.0, 1.0], vec![3.0]).unwrap();
        assert_eq!(sign_gradients(&spec).points(), &[vec![0.0, 0.0]]);
    }

    #[test]
    fn shapes_and_determinism() {
        let a = gen_random_anova(4, 4, 2, 11, 0.0, 1.0).unwrap();
        let s = sign_gradients(&a);
        assert_eq!((s.len(), s.dim()), (32, 8));
        assert_eq!(
            s,
            sign_gradients(&gen_random_anova(4, 4, 2, 11, 0.0, 1.0).unwrap())
        );
        let b = sign_gradients(&gen_random_anova(6, 6, 4, 3, 0.0, 1.0).unwrap());
        assert_eq!((b.len(), b.dim()), (144, 12));
    }

    #[test]
    fn gradient_structure() {
        let spec = gen_random_anova(2, 2, 3, 5, 0.0, 1.0).unwrap();
        let s = sign_gradients(&spec);
        let mut distinct: Vec<&Vec<f64>> = s.points().iter().collect();
        distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
        distinct.dedup();
        assert!(distinct.len() <= 8);
        for g in s.points() {
            let first: Vec<f64> = g[..2].iter().copied().filter(|v| *v != 0.0).collect();
            let second: Vec<f64> = g[2..].iter().copied().filter(|v| *v != 0.0).collect();
            assert_eq!(first.len(), 1);
            assert_eq!(second.len(), 1);
            assert_eq!(first[0].abs(), 1.0);
            assert_eq!(first[0], second[0]);
        }
    }

    #[test]
    fn fit_is_row_and_column_means() {
        // z_ij = 10 i + j, one replicate
        let z = vec![0.0, 1.0, 10.0, 11.0];
        let t = least_squares_fit(2, 2, 1, &z);
        assert_eq!(t, vec![0.5, 10.5, -0.5, 0.5]);
    }
}

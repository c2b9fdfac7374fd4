//! Diagonal-Gaussian action distributions.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

const LN_2PI: f64 = 1.837877066409345483560659472811235279722794947275566825634;

/// Log density of a diagonal Gaussian at `action`.
///
/// This free function is the single implementation used both when sampling
/// actions and inside the differentiation tape, so stored behavior
/// log-densities reproduce bitwise when recomputed from the same parameters.
pub fn gaussian_log_density(mean: &[f64], log_std: &[f64], action: &[f64]) -> f64 {
    debug_assert_eq!(mean.len(), log_std.len());
    debug_assert_eq!(mean.len(), action.len());
    let dim = mean.len() as f64;
    let mut z_sq_sum = 0.0;
    let mut log_std_sum = 0.0;
    for i in 0..mean.len() {
        let z = (action[i] - mean[i]) * (-log_std[i]).exp();
        z_sq_sum += z * z;
        log_std_sum += log_std[i];
    }
    -0.5 * z_sq_sum - log_std_sum - 0.5 * dim * LN_2PI
}

/// Closed-form differential entropy of a diagonal Gaussian:
/// `0.5·d·(1 + ln 2π) + Σ log_std_i`.
pub fn gaussian_entropy(log_std: &[f64]) -> f64 {
    let dim = log_std.len() as f64;
    0.5 * dim * (1.0 + LN_2PI) + log_std.iter().sum::<f64>()
}

/// A diagonal Gaussian with a mean vector and per-dimension log standard
/// deviations. The log-stds are already clamped by the network that
/// produced the distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianDist {
    pub mean: Vec<f64>,
    pub log_std: Vec<f64>,
}

impl GaussianDist {
    pub fn new(mean: Vec<f64>, log_std: Vec<f64>) -> Self {
        assert_eq!(mean.len(), log_std.len(), "mean/log_std dim mismatch");
        GaussianDist { mean, log_std }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn log_density(&self, action: &[f64]) -> f64 {
        assert_eq!(action.len(), self.dim(), "action dim mismatch");
        gaussian_log_density(&self.mean, &self.log_std, action)
    }

    pub fn density(&self, action: &[f64]) -> f64 {
        self.log_density(action).exp()
    }

    pub fn entropy(&self) -> f64 {
        gaussian_entropy(&self.log_std)
    }

    /// Draws `mean + std ⊙ z` with `z` standard normal.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        self.mean
            .iter()
            .zip(&self.log_std)
            .map(|(&m, &ls)| {
                let z: f64 = rng.sample(StandardNormal);
                m + ls.exp() * z
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds::rng_for;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn log_density_at_mode_unit_std() {
        for d in 1..=4 {
            let dist = GaussianDist::new(vec![0.3; d], vec![0.0; d]);
            let expect = -0.5 * d as f64 * LN_2PI;
            assert!(close(dist.log_density(&vec![0.3; d]), expect, 1e-15));
        }
    }

    #[test]
    fn log_density_one_dim_standard_normal_at_one() {
        let dist = GaussianDist::new(vec![0.0], vec![0.0]);
        let expect = -0.5 - 0.5 * LN_2PI;
        assert!(close(dist.log_density(&[1.0]), expect, 1e-15));
    }

    #[test]
    fn log_density_matches_independent_closed_form() {
        // Independent oracle: per-dimension normal pdf assembled the textbook
        // way, ln(1/(σ√2π)) - (a-μ)²/(2σ²), summed over dimensions.
        let mut rng = rng_for(11, &[1]);
        for _ in 0..200 {
            let d = 1 + (rng.random::<u32>() % 4) as usize;
            let mean: Vec<f64> = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
            let log_std: Vec<f64> = (0..d).map(|_| rng.random_range(-2.0..1.5)).collect();
            let action: Vec<f64> = (0..d).map(|_| rng.random_range(-5.0..5.0)).collect();
            let dist = GaussianDist::new(mean.clone(), log_std.clone());

            let mut oracle = 0.0;
            for i in 0..d {
                let sigma = log_std[i].exp();
                oracle += (1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt())).ln()
                    - (action[i] - mean[i]).powi(2) / (2.0 * sigma * sigma);
            }
            assert!(
                close(dist.log_density(&action), oracle, 1e-12),
                "log density disagrees with oracle"
            );
        }
    }

    #[test]
    fn density_is_exp_of_log_density() {
        let dist = GaussianDist::new(vec![0.5, -0.5], vec![0.2, -0.3]);
        let a = [0.1, 0.7];
        assert_eq!(dist.density(&a), dist.log_density(&a).exp());
    }

    #[test]
    fn density_positive_within_ten_sigma_at_clamp_extremes() {
        // exp(log_density) must stay finite and positive for clamped log_std
        // and |action - mean| up to 10 std.
        for &ls in &[-20.0, -5.0, 0.0, 2.0] {
            for k in 0..=10 {
                let std = f64::exp(ls);
                let dist = GaussianDist::new(vec![0.0, 0.0], vec![ls, ls]);
                let action = [k as f64 * std, -(k as f64) * std];
                let p = dist.density(&action);
                assert!(p.is_finite() && p > 0.0, "ls={ls} k={k} p={p}");
            }
        }
    }

    #[test]
    fn entropy_closed_form_one_dim_unit_std() {
        let dist = GaussianDist::new(vec![0.0], vec![0.0]);
        assert!(close(dist.entropy(), 0.5 * (1.0 + LN_2PI), 1e-15));
        assert!(close(dist.entropy(), 1.4189385332046727, 1e-12));
    }

    #[test]
    fn doubling_std_adds_d_ln2() {
        let d = 3;
        let base = GaussianDist::new(vec![0.0; d], vec![0.1, -0.4, 0.9]);
        let doubled = GaussianDist::new(
            vec![0.0; d],
            base.log_std.iter().map(|ls| ls + 2f64.ln()).collect(),
        );
        assert!(close(
            doubled.entropy() - base.entropy(),
            d as f64 * 2f64.ln(),
            1e-12
        ));
    }

    #[test]
    fn entropy_matches_monte_carlo() {
        // Entropy is -E[log p(x)]; estimate it by sampling.
        let dist = GaussianDist::new(vec![0.7, -1.2], vec![0.3, -0.8]);
        let mut rng = rng_for(13, &[2]);
        let n = 100_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let x = dist.sample(&mut rng);
            let v = -dist.log_density(&x);
            sum += v;
            sum_sq += v * v;
        }
        let mean = sum / n as f64;
        let var = (sum_sq / n as f64 - mean * mean).max(0.0);
        let se = (var / n as f64).sqrt();
        let diff = (mean - dist.entropy()).abs();
        assert!(diff < 3.0 * se, "MC entropy off: diff={diff}, 3se={}", 3.0 * se);
    }

    #[test]
    fn sample_collapses_to_mean_at_std_floor() {
        let dist = GaussianDist::new(vec![1.5, -2.5], vec![-20.0, -20.0]);
        let mut rng = rng_for(17, &[3]);
        let s = dist.sample(&mut rng);
        assert!((s[0] - 1.5).abs() < 1e-8);
        assert!((s[1] + 2.5).abs() < 1e-8);
    }

    #[test]
    fn sampling_is_reproducible_per_seed() {
        let dist = GaussianDist::new(vec![0.0, 1.0], vec![0.5, -0.5]);
        let a: Vec<Vec<f64>> = {
            let mut rng = rng_for(23, &[4]);
            (0..5).map(|_| dist.sample(&mut rng)).collect()
        };
        let b: Vec<Vec<f64>> = {
            let mut rng = rng_for(23, &[4]);
            (0..5).map(|_| dist.sample(&mut rng)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn sample_moments_match_parameters() {
        let dist = GaussianDist::new(vec![0.8], vec![0.4]);
        let std = 0.4f64.exp();
        let mut rng = rng_for(29, &[5]);
        let n = 100_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let x = dist.sample(&mut rng)[0];
            sum += x;
            sum_sq += x * x;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        // Standard errors: se(mean) = σ/√n, se(var) ≈ σ²√(2/n).
        let se_mean = std / (n as f64).sqrt();
        let se_var = std * std * (2.0 / n as f64).sqrt();
        assert!((mean - 0.8).abs() < 3.0 * se_mean);
        assert!((var - std * std).abs() < 3.0 * se_var);
    }
}

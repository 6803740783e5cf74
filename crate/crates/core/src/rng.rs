//! Seedable randomness and heavy-tailed step sampling.
//!
//! Lévy steps follow a Pareto law with survival function
//! `P(T > t) = (t_min / t)^(lambda - 1)` for `t >= t_min`, i.e. density
//! proportional to `t^(-lambda)`. Samples are drawn by inverting the CDF.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// Single steps are capped at this multiple of `t_min`.
pub const MAX_STEP_FACTOR: f64 = 1e6;

/// Default minimum Lévy step length.
pub const DEFAULT_T_MIN: f64 = 5e-6;

/// Deterministic random stream. Two states built from the same seed yield
/// identical sequences.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform draw in `[lower, upper)`.
    pub fn uniform_range(&mut self, lower: f64, upper: f64) -> f64 {
        lower + (upper - lower) * self.uniform()
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    pub fn normal(&mut self, mean: f64, std_dev: f64) -> f64 {
        // std_dev is validated by callers; a zero deviation is allowed.
        match Normal::new(mean, std_dev) {
            Ok(dist) => dist.sample(&mut self.inner),
            Err(_) => mean,
        }
    }
}

impl RngCore for RngState {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

/// Parameters of the power-law step distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyConfig {
    lambda: f64,
    t_min: f64,
}

impl LevyConfig {
    /// `lambda` must lie in `(1, 3]` and `t_min` must be positive.
    pub fn new(lambda: f64, t_min: f64) -> Result<Self> {
        if !(lambda > 1.0 && lambda <= 3.0) {
            return Err(Error::InvalidConfig(format!(
                "Lévy exponent lambda = {lambda} must lie in (1, 3]"
            )));
        }
        if !(t_min > 0.0 && t_min.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "minimum step t_min = {t_min} must be positive"
            )));
        }
        Ok(Self { lambda, t_min })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    /// Largest step ever returned.
    pub fn max_step(&self) -> f64 {
        self.t_min * MAX_STEP_FACTOR
    }

    /// Inverse CDF: maps `u` in `[0, 1)` to `t_min * (1 - u)^(-1 / (lambda - 1))`,
    /// capped at [`max_step`](Self::max_step).
    pub fn step_from_uniform(&self, u: f64) -> f64 {
        let t = self.t_min * (1.0 - u).powf(-1.0 / (self.lambda - 1.0));
        let cap = self.max_step();
        if t > cap {
            log::debug!("Lévy step {t:e} clipped to {cap:e}");
            cap
        } else {
            t
        }
    }

    /// Analytic survival fraction `P(T > t)` of the uncapped law.
    pub fn survival(&self, t: f64) -> f64 {
        if t <= self.t_min {
            1.0
        } else {
            (self.t_min / t).powf(self.lambda - 1.0)
        }
    }

    /// Analytic median of the uncapped law.
    pub fn median(&self) -> f64 {
        self.t_min * 2f64.powf(1.0 / (self.lambda - 1.0))
    }
}

/// Draws one positive step length, always `>= cfg.t_min()`.
pub fn levy_step(cfg: &LevyConfig, rng: &mut RngState) -> f64 {
    cfg.step_from_uniform(rng.uniform())
}

/// `sign[u - 1/2]` with the `u = 1/2` boundary mapped to `+1`, so both signs
/// have probability exactly one half for `u` uniform in `[0, 1)`.
pub fn sign_from_uniform(u: f64) -> f64 {
    if u >= 0.5 {
        1.0
    } else {
        -1.0
    }
}

/// One component of a Lévy perturbation given the two uniforms that drive it.
pub fn perturbation_component(
    alpha: f64,
    scale: f64,
    cfg: &LevyConfig,
    u_sign: f64,
    u_step: f64,
) -> f64 {
    alpha * scale * sign_from_uniform(u_sign) * cfg.step_from_uniform(u_step)
}

/// Random displacement whose k-th component is `alpha * scales[k] * sign_k * t_k`
/// with independent signs and independent Lévy steps per component.
///
/// Each component consumes two uniforms (sign, then step), regardless of
/// `alpha`.
pub fn levy_perturbation(
    d: usize,
    alpha: f64,
    scales: &[f64],
    cfg: &LevyConfig,
    rng: &mut RngState,
) -> Result<Vec<f64>> {
    if scales.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: scales.len(),
        });
    }
    if d == 0 {
        return Err(Error::EmptyInput);
    }
    if !(alpha >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "alpha = {alpha} must be >= 0"
        )));
    }
    if let Some(s) = scales.iter().find(|s| !(**s > 0.0)) {
        return Err(Error::InvalidConfig(format!("scale {s} must be > 0")));
    }
    Ok(scales
        .iter()
        .map(|&s| {
            let u_sign = rng.uniform();
            let u_step = rng.uniform();
            perturbation_component(alpha, s, cfg, u_sign, u_step)
        })
        .collect())
}

/// Checks `lower[k] < upper[k]` for every component.
pub fn check_bounds(lower: &[f64], upper: &[f64]) -> Result<()> {
    if lower.len() != upper.len() {
        return Err(Error::DimensionMismatch {
            expected: lower.len(),
            found: upper.len(),
        });
    }
    if lower.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (index, (&lo, &hi)) in lower.iter().zip(upper).enumerate() {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidBounds {
                index,
                lower: lo,
                upper: hi,
            });
        }
    }
    Ok(())
}

/// Point drawn uniformly from the box `[lower, upper]`.
pub fn uniform_in_bounds(lower: &[f64], upper: &[f64], rng: &mut RngState) -> Result<Vec<f64>> {
    check_bounds(lower, upper)?;
    Ok(lower
        .iter()
        .zip(upper)
        // rounding in lo + w*u can land on hi when u is close to 1
        .map(|(&lo, &hi)| rng.uniform_range(lo, hi).min(hi))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_uniforms_give_closed_form_steps() {
        let cfg = LevyConfig::new(2.0, 1.0).unwrap();
        assert_eq!(cfg.step_from_uniform(0.0), 1.0);
        assert_eq!(cfg.step_from_uniform(0.5), 2.0);
        let cfg = LevyConfig::new(1.5, 1.0).unwrap();
        assert_eq!(cfg.step_from_uniform(0.75), 16.0);
    }

    #[test]
    fn invalid_lambda_and_t_min_are_rejected() {
        for (lambda, t_min) in [(1.0, 1.0), (3.1, 1.0), (0.5, 1.0), (2.0, 0.0), (2.0, -1.0)] {
            assert!(matches!(
                LevyConfig::new(lambda, t_min),
                Err(Error::InvalidConfig(_))
            ));
        }
        assert!(LevyConfig::new(3.0, 1.0).is_ok());
    }

    #[test]
    fn steps_are_capped() {
        let cfg = LevyConfig::new(1.5, 1.0).unwrap();
        let u = 1.0 - 1e-15;
        assert_eq!(cfg.step_from_uniform(u), 1e6);
    }

    #[test]
    fn forced_perturbation_component() {
        let cfg = LevyConfig::new(2.0, 1.0).unwrap();
        // sign[0.9 - 1/2] = +1, step at U = 0.5 is 2
        assert_eq!(perturbation_component(1.0, 1.0, &cfg, 0.9, 0.5), 2.0);
        assert_eq!(perturbation_component(1.0, 1.0, &cfg, 0.1, 0.5), -2.0);
    }

    #[test]
    fn zero_alpha_gives_zero_vector() {
        let cfg = LevyConfig::new(1.5, 1.0).unwrap();
        let mut rng = RngState::new(3);
        let p = levy_perturbation(5, 0.0, &[1.0; 5], &cfg, &mut rng).unwrap();
        assert!(p.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn perturbation_respects_lower_bound() {
        let cfg = LevyConfig::new(1.5, 1.0).unwrap();
        let mut rng = RngState::new(11);
        for _ in 0..1000 {
            let p = levy_perturbation(2, 0.2, &[1.0, 1.0], &cfg, &mut rng).unwrap();
            assert!(p.iter().all(|v| v.abs() >= 0.2));
        }
    }

    #[test]
    fn perturbation_dimension_mismatch() {
        let cfg = LevyConfig::new(1.5, 1.0).unwrap();
        let mut rng = RngState::new(0);
        assert!(matches!(
            levy_perturbation(3, 0.2, &[1.0, 1.0], &cfg, &mut rng),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn degenerate_bounds_rejected() {
        let mut rng = RngState::new(0);
        assert!(matches!(
            uniform_in_bounds(&[1.0, 0.0], &[1.0, 1.0], &mut rng),
            Err(Error::InvalidBounds { index: 0, .. })
        ));
        assert!(matches!(
            uniform_in_bounds(&[2.0], &[1.0], &mut rng),
            Err(Error::InvalidBounds { .. })
        ));
    }

    #[test]
    fn uniform_samples_stay_in_unit_square() {
        let mut rng = RngState::new(5);
        for _ in 0..10_000 {
            let x = uniform_in_bounds(&[0.0, 0.0], &[1.0, 1.0], &mut rng).unwrap();
            assert!(x.iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }

    #[test]
    fn uniform_mean_matches_center() {
        let mut rng = RngState::new(17);
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|_| uniform_in_bounds(&[-5.0], &[5.0], &mut rng).unwrap()[0])
            .sum::<f64>()
            / n as f64;
        assert!(mean.abs() < 0.2, "mean = {mean}");
    }

    #[test]
    fn same_seed_same_sequences() {
        let cfg = LevyConfig::new(1.5, 1.0).unwrap();
        let mut a = RngState::new(99);
        let mut b = RngState::new(99);
        for _ in 0..100 {
            assert_eq!(levy_step(&cfg, &mut a), levy_step(&cfg, &mut b));
            assert_eq!(
                levy_perturbation(3, 0.5, &[1.0, 2.0, 3.0], &cfg, &mut a).unwrap(),
                levy_perturbation(3, 0.5, &[1.0, 2.0, 3.0], &cfg, &mut b).unwrap()
            );
            assert_eq!(
                uniform_in_bounds(&[-1.0], &[1.0], &mut a).unwrap(),
                uniform_in_bounds(&[-1.0], &[1.0], &mut b).unwrap()
            );
        }
    }

    #[test]
    fn sign_symmetry() {
        let cfg = LevyConfig::new(1.5, 1.0).unwrap();
        let mut rng = RngState::new(2024);
        let n = 100_000;
        let mut positive = [0usize; 2];
        for _ in 0..n {
            let p = levy_perturbation(2, 1.0, &[1.0, 1.0], &cfg, &mut rng).unwrap();
            for (k, v) in p.iter().enumerate() {
                if *v > 0.0 {
                    positive[k] += 1;
                }
            }
        }
        for count in positive {
            let freq = count as f64 / n as f64;
            assert!((freq - 0.5).abs() <= 0.01, "freq = {freq}");
        }
    }

    #[test]
    fn analytic_helpers() {
        let cfg = LevyConfig::new(2.0, 1.0).unwrap();
        assert_eq!(cfg.median(), 2.0);
        let cfg = LevyConfig::new(1.5, 1.0).unwrap();
        assert_eq!(cfg.survival(16.0), 0.25);
        assert_eq!(cfg.survival(0.5), 1.0);
    }
}

//! Sparse corruption vectors and finite-shot sampling noise.
//!
//! Corruption `v` is generated independently of the sampling noise `z` and
//! added after it; callers compose `shot_estimate(...)` with
//! `sparse_gaussian(...)` in that order.

use rand::seq::index;
use rand_distr::{Binomial, Distribution, Normal};

use crate::error::{QptError, Result};
use crate::rng::rng_from_seed;

/// Slack allowed on the physical range of a probability or expectation
/// before it is rejected as an invalid state.
pub const RANGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorruptionSpec {
    /// Fraction of corrupted entries; `s = ⌊eta·m⌋`.
    pub eta: f64,
    /// Standard deviation of the nonzero entries.
    pub sigma: f64,
    pub mean: f64,
}

impl CorruptionSpec {
    pub fn new(eta: f64, sigma: f64, mean: f64) -> Result<Self> {
        let spec = CorruptionSpec { eta, sigma, mean };
        spec.validate()?;
        Ok(spec)
    }

    /// Zero-mean, unit-variance Gaussian corruption.
    pub fn standard(eta: f64) -> Result<Self> {
        Self::new(eta, 1.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(QptError::config(format!(
                "sparsity ratio must lie in [0, 1], got {}",
                self.eta
            )));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(QptError::config(format!(
                "corruption standard deviation must be positive, got {}",
                self.sigma
            )));
        }
        if !self.mean.is_finite() {
            return Err(QptError::config("corruption mean must be finite"));
        }
        Ok(())
    }

    /// Number of nonzero entries for a vector of length `m`, never rounded up.
    pub fn sparsity(&self, m: usize) -> usize {
        // The 1e-9 absorbs products like 0.1·30 that land a hair below an
        // integer in floating point.
        let s = (self.eta * m as f64 + 1e-9).floor() as usize;
        s.min(m)
    }
}

/// An `m`-vector with exactly `⌊eta·m⌋` nonzero entries on a uniformly
/// random support, each drawn i.i.d. from `Normal(mean, sigma²)`.
pub fn sparse_gaussian(m: usize, spec: &CorruptionSpec, seed: u64) -> Result<Vec<f64>> {
    spec.validate()?;
    if m == 0 {
        return Err(QptError::config("corruption vector length must be at least 1"));
    }
    let s = spec.sparsity(m);
    let mut rng = rng_from_seed(seed);
    let support = index::sample(&mut rng, m, s);
    let normal = Normal::new(spec.mean, spec.sigma)
        .map_err(|e| QptError::config(format!("invalid normal distribution: {e}")))?;
    let mut v = vec![0.0; m];
    for i in support.iter() {
        let mut x = normal.sample(&mut rng);
        // An exact zero would silently shrink the support.
        while x == 0.0 {
            x = normal.sample(&mut rng);
        }
        v[i] = x;
    }
    Ok(v)
}

/// Number of repetitions used to estimate each outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shots {
    Finite(u64),
    Infinite,
}

impl Shots {
    pub const DEFAULT: Shots = Shots::Finite(1000);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShotMode {
    /// Outcome is the probability of a projector click; estimated as
    /// `Binomial(N, p)/N`.
    ProjectorProbability,
    /// Outcome is the expectation of a ±1-valued observable; estimated as the
    /// mean of `N` ±1 draws.
    PauliExpectation,
}

impl ShotMode {
    fn range(self) -> (f64, f64) {
        match self {
            ShotMode::ProjectorProbability => (0.0, 1.0),
            ShotMode::PauliExpectation => (-1.0, 1.0),
        }
    }
}

/// Replaces exact outcomes by finite-shot estimates. With `Shots::Infinite`
/// the input is returned unchanged (after range validation).
pub fn shot_estimate(p_true: &[f64], shots: Shots, mode: ShotMode, seed: u64) -> Result<Vec<f64>> {
    let (lo, hi) = mode.range();
    for (i, &p) in p_true.iter().enumerate() {
        if !(p >= lo - RANGE_TOL && p <= hi + RANGE_TOL) {
            return Err(QptError::numerical(format!(
                "outcome {i} has exact value {p}, outside [{lo}, {hi}]"
            )));
        }
    }
    let n = match shots {
        Shots::Infinite => return Ok(p_true.to_vec()),
        Shots::Finite(0) => return Err(QptError::config("shot count must be positive")),
        Shots::Finite(n) => n,
    };
    let mut rng = rng_from_seed(seed);
    p_true
        .iter()
        .map(|&p| {
            let p = p.clamp(lo, hi);
            let success = match mode {
                ShotMode::ProjectorProbability => p,
                ShotMode::PauliExpectation => (1.0 + p) / 2.0,
            };
            let k = Binomial::new(n, success)
                .map_err(|e| QptError::numerical(format!("binomial sampling: {e}")))?
                .sample(&mut rng) as f64;
            Ok(match mode {
                ShotMode::ProjectorProbability => k / n as f64,
                ShotMode::PauliExpectation => (2.0 * k - n as f64) / n as f64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nnz(v: &[f64]) -> usize {
        v.iter().filter(|x| **x != 0.0).count()
    }

    #[test]
    fn sparsity_examples() {
        let spec = CorruptionSpec::standard(0.1).unwrap();
        assert_eq!(nnz(&sparse_gaussian(100, &spec, 1).unwrap()), 10);
        let zero = CorruptionSpec::standard(0.0).unwrap();
        assert!(sparse_gaussian(50, &zero, 1).unwrap().iter().all(|x| *x == 0.0));
        let five = CorruptionSpec::standard(0.05).unwrap();
        assert_eq!(nnz(&sparse_gaussian(64, &five, 3).unwrap()), 3);
    }

    #[test]
    fn sparsity_is_floor_for_every_length() {
        for eta in [0.05, 0.1, 0.3, 0.7] {
            let spec = CorruptionSpec::standard(eta).unwrap();
            for m in 1..=400 {
                let exact = (eta * 1e6).round() as usize * m / 1_000_000;
                assert_eq!(spec.sparsity(m), exact, "eta={eta}, m={m}");
            }
        }
    }

    #[test]
    fn dense_corruption_fills_every_entry() {
        let spec = CorruptionSpec::standard(1.0).unwrap();
        assert_eq!(nnz(&sparse_gaussian(37, &spec, 9).unwrap()), 37);
    }

    #[test]
    fn invalid_specs_are_config_errors() {
        assert!(matches!(CorruptionSpec::standard(1.5), Err(QptError::Config(_))));
        assert!(matches!(CorruptionSpec::standard(-0.1), Err(QptError::Config(_))));
        assert!(matches!(CorruptionSpec::new(0.1, 0.0, 0.0), Err(QptError::Config(_))));
        let bad = CorruptionSpec {
            eta: 2.0,
            sigma: 1.0,
            mean: 0.0,
        };
        assert!(matches!(sparse_gaussian(10, &bad, 0), Err(QptError::Config(_))));
    }

    #[test]
    fn deterministic_per_seed() {
        let spec = CorruptionSpec::standard(0.2).unwrap();
        assert_eq!(
            sparse_gaussian(80, &spec, 42).unwrap(),
            sparse_gaussian(80, &spec, 42).unwrap()
        );
        assert_ne!(
            sparse_gaussian(80, &spec, 42).unwrap(),
            sparse_gaussian(80, &spec, 43).unwrap()
        );
    }

    #[test]
    fn degenerate_and_infinite_shots() {
        let ones = shot_estimate(&[1.0, 0.0], Shots::Finite(1000), ShotMode::ProjectorProbability, 5)
            .unwrap();
        assert_eq!(ones, vec![1.0, 0.0]);
        let pm = shot_estimate(&[1.0, -1.0], Shots::Finite(17), ShotMode::PauliExpectation, 5).unwrap();
        assert_eq!(pm, vec![1.0, -1.0]);
        let p = [0.3, 0.9, 0.0];
        assert_eq!(
            shot_estimate(&p, Shots::Infinite, ShotMode::ProjectorProbability, 0).unwrap(),
            p.to_vec()
        );
    }

    #[test]
    fn out_of_range_is_numerical_error() {
        assert!(matches!(
            shot_estimate(&[1.1], Shots::Finite(10), ShotMode::ProjectorProbability, 0),
            Err(QptError::Numerical(_))
        ));
        assert!(matches!(
            shot_estimate(&[-1.5], Shots::Infinite, ShotMode::PauliExpectation, 0),
            Err(QptError::Numerical(_))
        ));
        // Round-off just outside the range is tolerated.
        assert!(shot_estimate(&[1.0 + 1e-12], Shots::Finite(10), ShotMode::ProjectorProbability, 0).is_ok());
    }

    #[test]
    fn half_probability_three_sigma() {
        // σ = √(0.25/1000) ≈ 0.0158, so 0.05 is more than 3σ; the two-sided
        // 3σ tail mass is 0.27%.
        let trials = 2000;
        let inside = (0..trials)
            .filter(|&s| {
                let est = shot_estimate(&[0.5], Shots::Finite(1000), ShotMode::ProjectorProbability, s)
                    .unwrap()[0];
                (est - 0.5).abs() <= 0.05
            })
            .count();
        assert!(inside as f64 / trials as f64 >= 0.997);
    }
}

use rand::Rng as _;
use rand_distr::Poisson;

use crate::error::{Error, Result};
use crate::seed::rng_for;

/// Above this expected offspring count a generation is advanced by its mean;
/// the Poisson relative spread there is below 1e-7.
const EXACT_LIMIT: f64 = 1e14;

/// Generation sizes `X_0 = 1, X_1, ..., X_L` of a Poisson(λ) Galton–Watson
/// process.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchingTrace {
    pub lambda: f64,
    pub seed: u64,
    pub generations: Vec<u64>,
}

impl BranchingTrace {
    pub fn last(&self) -> u64 {
        *self.generations.last().unwrap()
    }

    pub fn survived(&self) -> bool {
        self.last() > 0
    }
}

/// Simulates `generations` steps. The total offspring of `x` individuals is
/// drawn in one Poisson(λx) sample, which has the same law as summing `x`
/// independent Poisson(λ) draws.
pub fn branching_trace(lambda: f64, generations: usize, seed: u64) -> Result<BranchingTrace> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::param(format!(
            "lambda = {lambda} must be finite and >= 0"
        )));
    }
    let mut rng = rng_for(seed, "branching", &[]);
    let mut sizes = Vec::with_capacity(generations + 1);
    sizes.push(1u64);
    for _ in 0..generations {
        let x = *sizes.last().unwrap();
        let mean = lambda * x as f64;
        let next = if x == 0 || mean == 0.0 {
            0
        } else if mean < EXACT_LIMIT {
            let draw: f64 =
                rng.sample(Poisson::new(mean).map_err(|e| Error::param(e.to_string()))?);
            draw as u64
        } else {
            // Saturating: `as` clamps to u64::MAX.
            mean as u64
        };
        sizes.push(next);
    }
    Ok(BranchingTrace {
        lambda,
        seed,
        generations: sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ζ = 1 − e^{−λζ} by fixed-point iteration.
    fn survival(lambda: f64) -> f64 {
        let mut z = 1.0;
        for _ in 0..500 {
            z = 1.0 - (-lambda * z).exp();
        }
        z
    }

    #[test]
    fn zero_lambda_dies_immediately() {
        let t = branching_trace(0.0, 4, 1).unwrap();
        assert_eq!(t.generations, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn extinction_is_absorbing() {
        for seed in 0..300 {
            let t = branching_trace(1.2, 25, seed).unwrap();
            assert_eq!(t.generations[0], 1);
            for w in t.generations.windows(2) {
                if w[0] == 0 {
                    assert_eq!(w[1], 0);
                }
            }
        }
    }

    #[test]
    fn first_generation_mean() {
        // X_1 ~ Poisson(λ): sample mean within 3 standard errors.
        let (lambda, runs) = (5.0, 100_000u64);
        let total: u64 = (0..runs)
            .map(|s| branching_trace(lambda, 1, s).unwrap().generations[1])
            .sum();
        let m = total as f64 / runs as f64;
        assert!(
            (m - lambda).abs() < 3.0 * (lambda / runs as f64).sqrt(),
            "{m}"
        );
    }

    #[test]
    fn survival_frequency_matches_fixed_point() {
        let zeta = survival(5.0);
        assert!((zeta - 0.993).abs() < 5e-4);
        let runs = 10_000u64;
        let alive = (0..runs)
            .filter(|&s| branching_trace(5.0, 30, s).unwrap().survived())
            .count();
        let freq = alive as f64 / runs as f64;
        assert!((freq - zeta).abs() < 0.01, "{freq}");
    }

    #[test]
    fn rejects_bad_lambda() {
        assert!(branching_trace(-1.0, 3, 0).is_err());
        assert!(branching_trace(f64::NAN, 3, 0).is_err());
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            branching_trace(3.0, 10, 7).unwrap(),
            branching_trace(3.0, 10, 7).unwrap()
        );
    }
}

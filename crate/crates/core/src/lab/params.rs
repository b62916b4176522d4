//! Embedding sizes prescribed by the random-graph distortion theorems.
//!
//! Both theorems fix `r = ⌊(θ / ln M) · ln n⌋` and prescribe `R` only up to a
//! hidden constant; callers pass that constant explicitly.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// `(1 − ε)`-approximate lower bound.
    Lower,
    /// `(1 + ε)`-approximate upper bound.
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremInputs {
    pub n: usize,
    pub eps: f64,
    pub theta: f64,
    pub base: u32,
    /// Exponent slack `ς > 0`.
    pub varsigma: f64,
    /// Multiplier standing in for the hidden constant of `Ω(·)`.
    pub constant: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremParams {
    pub kind: BoundKind,
    pub inputs: TheoremInputs,
    pub max_exp: u32,
    pub rounds: u32,
    pub dims: u64,
}

/// Lower-bound sizing: `R = ⌈c · M · n^{1 − ε/2 − min(ε/2, θ) + ς}⌉`, with
/// `θ ∈ (0, ε)`.
pub fn params_lb(inputs: TheoremInputs) -> Result<TheoremParams> {
    check_common(&inputs)?;
    let TheoremInputs {
        n,
        eps,
        theta,
        base,
        varsigma,
        constant,
    } = inputs;
    if !(theta > 0.0 && theta < eps) {
        return Err(Error::param(format!(
            "theta = {theta} must lie in (0, eps = {eps})"
        )));
    }
    let exponent = 1.0 - eps / 2.0 - (eps / 2.0).min(theta) + varsigma;
    let rounds = constant * base as f64 * (n as f64).powf(exponent);
    finish(BoundKind::Lower, inputs, rounds)
}

/// Upper-bound sizing: `R = ⌈c · (ln M / (θ ln n)) · n^{1 − ε + ς}⌉`, with
/// `θ ∈ (0, (1 − ε)/2)`.
pub fn params_ub(inputs: TheoremInputs) -> Result<TheoremParams> {
    check_common(&inputs)?;
    let TheoremInputs {
        n,
        eps,
        theta,
        base,
        varsigma,
        constant,
    } = inputs;
    let limit = (1.0 - eps) / 2.0;
    if !(theta > 0.0 && theta < limit) {
        return Err(Error::param(format!(
            "theta = {theta} must lie in (0, {limit})"
        )));
    }
    let nf = n as f64;
    let rounds =
        constant * ((base as f64).ln() / (theta * nf.ln())) * nf.powf(1.0 - eps + varsigma);
    finish(BoundKind::Upper, inputs, rounds)
}

/// `⌊(θ / ln M) · ln n⌋`. A relative slack of 1e-12 keeps exact integers
/// such as `θ log₂ 1024 = 5` from rounding down.
pub fn max_exponent(n: usize, theta: f64, base: u32) -> u32 {
    let x = theta / (base as f64).ln() * (n as f64).ln();
    (x * (1.0 + 1e-12)).floor().max(0.0) as u32
}

fn check_common(p: &TheoremInputs) -> Result<()> {
    if p.n < 2 {
        return Err(Error::param("n must be at least 2"));
    }
    if !(p.eps > 0.0 && p.eps < 1.0) {
        return Err(Error::param(format!("eps = {} must lie in (0, 1)", p.eps)));
    }
    if p.base <= 1 {
        return Err(Error::param(format!("M = {} must exceed 1", p.base)));
    }
    if !(p.varsigma > 0.0) {
        return Err(Error::param("varsigma must be positive"));
    }
    if !(p.constant > 0.0) || !p.constant.is_finite() {
        return Err(Error::param("constant must be positive"));
    }
    Ok(())
}

fn finish(kind: BoundKind, inputs: TheoremInputs, rounds: f64) -> Result<TheoremParams> {
    let rounds = rounds.ceil().max(1.0);
    if rounds > u32::MAX as f64 {
        return Err(Error::param(format!(
            "R = {rounds} does not fit in 32 bits"
        )));
    }
    let rounds = rounds as u32;
    let max_exp = max_exponent(inputs.n, inputs.theta, inputs.base);
    Ok(TheoremParams {
        kind,
        inputs,
        max_exp,
        rounds,
        dims: rounds as u64 * (max_exp as u64 + 1),
    })
}

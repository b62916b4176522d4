//! Finite-size checks of the distortion guarantees at calculator-prescribed
//! embedding sizes.

use crate::bench::distortion::{run_distortion, DistortionOptions};
use crate::bench::pairs::sample_pairs;
use crate::embedding::{build_embedding, LandmarkFamily};
use crate::error::{Error, Result};
use crate::graph::er_generate;
use crate::lab::{params_lb, params_ub, BoundKind, CheckReport, TheoremInputs};
use crate::seed::derive_seed;
use crate::HopEmbedding;

/// Violation rates above this fail the check.
pub const MAX_VIOLATION_RATE: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremRun {
    pub n: usize,
    pub lambda: f64,
    pub eps: f64,
    pub theta: f64,
    pub base: u32,
    pub varsigma: f64,
    pub pairs: usize,
    pub seed: u64,
}

impl TheoremRun {
    pub fn new(n: usize, lambda: f64, eps: f64, theta: f64) -> Self {
        TheoremRun {
            n,
            lambda,
            eps,
            theta,
            base: 2,
            varsigma: 0.01,
            pairs: 1000,
            seed: 0,
        }
    }
}

/// Violation rate per constant, on one graph, one pair set, and nested
/// families (larger constants extend the smaller families' rounds).
fn violation_series(run: TheoremRun, kind: BoundKind, constants: &[f64]) -> Result<CheckReport> {
    if constants.is_empty() {
        return Err(Error::param("need at least one constant"));
    }
    let g = er_generate(
        run.n,
        run.lambda,
        derive_seed(run.seed, "theorem-graph", &[]),
    )?;
    let pairs = sample_pairs(&g, run.pairs, derive_seed(run.seed, "theorem-pairs", &[]))?;
    let fam_seed = derive_seed(run.seed, "theorem-family", &[]);
    let (name, columns) = match kind {
        BoundKind::Lower => ("theorem-lb", "viol_rate_lb_eps"),
        BoundKind::Upper => ("theorem-ub", "viol_rate_ub_eps"),
    };
    let mut report = CheckReport {
        name: name.into(),
        passed: false,
        summary: String::new(),
        columns: ["constant", "r", "R", "D", columns, "mean_rel_err_lb"]
            .map(String::from)
            .to_vec(),
        rows: Vec::new(),
    };
    let mut rates = Vec::with_capacity(constants.len());
    for &constant in constants {
        let inputs = TheoremInputs {
            n: run.n,
            eps: run.eps,
            theta: run.theta,
            base: run.base,
            varsigma: run.varsigma,
            constant,
        };
        let p = match kind {
            BoundKind::Lower => params_lb(inputs)?,
            BoundKind::Upper => params_ub(inputs)?,
        };
        let fam = LandmarkFamily::sample(run.n, run.base, p.max_exp, p.rounds, fam_seed)?;
        let emb: HopEmbedding = build_embedding(&g, &fam)?;
        let opts = DistortionOptions {
            eps: run.eps,
            upper: kind == BoundKind::Upper,
        };
        let r = run_distortion(&g, &emb, &pairs, "er", Some(run.lambda), opts)?;
        let rate = match kind {
            BoundKind::Lower => r.metrics.viol_rate_lb_eps,
            BoundKind::Upper => r.metrics.viol_rate_ub_eps.unwrap(),
        };
        rates.push(rate);
        report.rows.push(vec![
            constant.to_string(),
            p.max_exp.to_string(),
            p.rounds.to_string(),
            p.dims.to_string(),
            rate.to_string(),
            r.metrics.mean_rel_err_lb.to_string(),
        ]);
    }
    let below = rates[0] < MAX_VIOLATION_RATE;
    let monotone = rates.windows(2).all(|w| w[1] <= w[0]);
    report.passed = below && monotone;
    let shown: Vec<String> = constants
        .iter()
        .zip(&rates)
        .map(|(c, r)| format!("c={c}: {r:.4}"))
        .collect();
    report.summary = format!(
        "violation rate at eps = {} {} over {} pairs (threshold {MAX_VIOLATION_RATE}{})",
        run.eps,
        shown.join(", "),
        pairs.len(),
        if constants.len() > 1 {
            ", nonincreasing in c"
        } else {
            ""
        }
    );
    Ok(report)
}

/// Lower-bound violation rate at each constant; passes when the first is
/// below 10% and the series is nonincreasing.
pub fn theorem_lb_check(run: TheoremRun, constants: &[f64]) -> Result<CheckReport> {
    violation_series(run, BoundKind::Lower, constants)
}

/// Upper-bound violation rate at each constant; same verdict rule.
pub fn theorem_ub_check(run: TheoremRun, constants: &[f64]) -> Result<CheckReport> {
    violation_series(run, BoundKind::Upper, constants)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lower_bound_run_is_monotone() {
        let run = TheoremRun {
            pairs: 200,
            ..TheoremRun::new(600, 4.0, 0.5, 0.25)
        };
        let r = theorem_lb_check(run, &[0.25, 1.0]).unwrap();
        assert_eq!(r.rows.len(), 2);
        let a: f64 = r.rows[0][4].parse().unwrap();
        let b: f64 = r.rows[1][4].parse().unwrap();
        assert!(b <= a);
    }

    #[test]
    fn calculator_errors_propagate() {
        let run = TheoremRun::new(600, 4.0, 0.5, 0.3);
        assert!(theorem_ub_check(run, &[1.0]).is_err());
        assert!(theorem_lb_check(run, &[]).is_err());
    }
}

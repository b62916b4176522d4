use std::collections::BTreeMap;

use rand::Rng as _;
use rand_distr::Binomial;
use rayon::prelude::*;

use super::branching::branching_trace;
use super::shells::{log_base, shell_profile};
use super::stats::ks_two_sample;
use crate::error::{Error, Result};
use crate::graph::{er_generate, NodeId};
use crate::seed::{derive_seed, rng_for};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingConfig {
    pub n: usize,
    pub lambda: f64,
    /// Shell depth `L`.
    pub depth: u32,
    pub trials: usize,
    pub seed: u64,
    /// Depth above `kappa0 · log_λ n` is reported as outside the coupling
    /// window (a warning, not an error).
    pub kappa0: f64,
    pub sampler: ShellSampler,
}

/// How the shell size `|∂N_L(u)|` is drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ShellSampler {
    /// Generate `ER(n, λ/n)`, pick a uniform node, run BFS.
    #[default]
    Graph,
    /// Reveal only the edges BFS inspects. A node not yet seen joins shell
    /// `k + 1` iff it has an edge into shell `k`, probability
    /// `1 − (1 − p)^{|∂N_k|}`, independently of everything revealed so far.
    /// Same law as [`ShellSampler::Graph`] at `O(L)` cost per trial.
    Exploration,
}

impl CouplingConfig {
    pub fn new(n: usize, lambda: f64, depth: u32, trials: usize, seed: u64) -> Self {
        CouplingConfig {
            n,
            lambda,
            depth,
            trials,
            seed,
            kappa0: 0.5,
            sampler: ShellSampler::Graph,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CouplingReport {
    pub config: CouplingConfig,
    /// `|∂N_L(u)|` per trial, each from a fresh graph and random node.
    pub shell_sizes: Vec<u64>,
    /// Independently simulated `X_L` per trial.
    pub branching_sizes: Vec<u64>,
    pub ks: f64,
    pub warnings: Vec<String>,
}

impl CouplingReport {
    /// Value → (shell count, branching count).
    pub fn histogram(&self) -> BTreeMap<u64, (usize, usize)> {
        let mut h = BTreeMap::new();
        for &s in &self.shell_sizes {
            h.entry(s).or_insert((0, 0)).0 += 1;
        }
        for &b in &self.branching_sizes {
            h.entry(b).or_insert((0, 0)).1 += 1;
        }
        h
    }
}

/// Compares the depth-`L` shell size of a random node in `ER(n, λ/n)` with
/// generation `L` of a Poisson(λ) branching process, via the two-sample KS
/// statistic over `trials` independent draws of each.
pub fn coupling_check(cfg: CouplingConfig) -> Result<CouplingReport> {
    if cfg.trials == 0 {
        return Err(Error::param("need at least one trial"));
    }
    if cfg.n < 2 || !(cfg.lambda > 0.0) || cfg.lambda > cfg.n as f64 {
        return Err(Error::param("need n >= 2 and lambda in (0, n]"));
    }
    let mut warnings = Vec::new();
    if cfg.lambda <= 1.0 {
        warnings.push(format!(
            "lambda = {} is subcritical; results are outside the supercritical regime",
            cfg.lambda
        ));
    } else {
        let window = cfg.kappa0 * log_base(cfg.lambda, cfg.n);
        if cfg.depth as f64 > window {
            warnings.push(format!(
                "depth {} exceeds kappa0 * log_lambda n = {window:.3}",
                cfg.depth
            ));
        }
    }
    for w in &warnings {
        log::warn!("{w}");
    }

    let pairs = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| -> Result<(u64, u64)> {
            let shell = match cfg.sampler {
                ShellSampler::Graph => {
                    let g = er_generate(
                        cfg.n,
                        cfg.lambda,
                        derive_seed(cfg.seed, "coupling-graph", &[t]),
                    )?;
                    let u =
                        rng_for(cfg.seed, "coupling-node", &[t]).random_range(0..cfg.n as NodeId);
                    shell_profile(&g, u, cfg.depth)?.counts[cfg.depth as usize] as u64
                }
                ShellSampler::Exploration => {
                    explored_shell(cfg.n, cfg.lambda, cfg.depth, cfg.seed, t)?
                }
            };
            let bp = branching_trace(
                cfg.lambda,
                cfg.depth as usize,
                derive_seed(cfg.seed, "coupling-branching", &[t]),
            )?;
            Ok((shell, bp.last()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (shell_sizes, branching_sizes): (Vec<u64>, Vec<u64>) = pairs.into_iter().unzip();
    let ks = ks_two_sample(&shell_sizes, &branching_sizes);
    Ok(CouplingReport {
        config: cfg,
        shell_sizes,
        branching_sizes,
        ks,
        warnings,
    })
}

fn explored_shell(n: usize, lambda: f64, depth: u32, seed: u64, trial: u64) -> Result<u64> {
    let mut rng = rng_for(seed, "coupling-explore", &[trial]);
    let p = lambda / n as f64;
    let mut unseen = n as u64 - 1;
    let mut shell = 1u64;
    for _ in 0..depth {
        if shell == 0 {
            break;
        }
        let hit = -(shell as f64 * (-p).ln_1p()).exp_m1();
        let draw =
            Binomial::new(unseen, hit.clamp(0.0, 1.0)).map_err(|e| Error::param(e.to_string()))?;
        shell = rng.sample(draw);
        unseen -= shell;
    }
    Ok(shell)
}

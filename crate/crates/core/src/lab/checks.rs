//! Named statistical checks with a PASS/FAIL verdict and a per-trial table.

use std::io::Write;

use rand::seq::index::sample as sample_indices;
use rand::Rng as _;
use rayon::prelude::*;

use super::branching::branching_trace;
use super::coupling::{coupling_check, CouplingConfig};
use super::shells::{
    shell_intersection, GrowthConfig, GrowthOutcome, IntersectionConfig, ShellGrowthValidator,
};
use super::stats::median;
use super::typical::{typical_distance_check, uniform_pairs};
use crate::error::{Error, Result};
use crate::graph::{components, er_generate, NodeId};
use crate::seed::{derive_seed, rng_for};

pub const TYPICAL_RANGE: (f64, f64) = (0.8, 1.2);
pub const GROWTH_REL_TOL: f64 = 0.15;
pub const PASS_FRACTION: f64 = 0.9;
pub const KS_THRESHOLD: f64 = 0.1;
pub const SURVIVAL_TOL: f64 = 0.01;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CheckReport {
    fn new(name: &str, columns: &[&str]) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: false,
            summary: String::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// `PASS name: summary` or `FAIL name: summary`.
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("{verdict} {}: {}", self.name, self.summary)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => Error::Io(e),
        other => Error::Format(format!("{other:?}")),
    }
}

fn check_lambda(n: usize, lambda: f64) -> Result<()> {
    if !(lambda > 1.0) || lambda >= n as f64 {
        return Err(Error::param(format!(
            "need 1 < lambda < n, got lambda = {lambda}"
        )));
    }
    Ok(())
}

/// Mean `d / log_λ n` over uniform pairs of one `ER(n, λ/n)` graph.
pub fn typical_distance_run(n: usize, lambda: f64, pairs: usize, seed: u64) -> Result<CheckReport> {
    check_lambda(n, lambda)?;
    let g = er_generate(n, lambda, derive_seed(seed, "check-graph", &[]))?;
    let pairs = uniform_pairs(n, pairs, derive_seed(seed, "check-pairs", &[]));
    let t = typical_distance_check(&g, &pairs, lambda)?;
    let mut r = CheckReport::new("typical-distance", &["pair", "ratio"]);
    r.rows = t
        .ratios
        .iter()
        .enumerate()
        .map(|(i, x)| vec![i.to_string(), x.to_string()])
        .collect();
    r.passed = t.mean_ratio >= TYPICAL_RANGE.0 && t.mean_ratio <= TYPICAL_RANGE.1;
    r.summary = format!(
        "mean ratio {:.4} over {} pairs ({} disconnected, {} self) target [{}, {}]",
        t.mean_ratio,
        t.ratios.len(),
        t.disconnected,
        t.self_pairs,
        TYPICAL_RANGE.0,
        TYPICAL_RANGE.1
    );
    Ok(r)
}

/// Growth ratios over the shell window for `nodes` distinct giant-component
/// nodes; passes when at least 90% have a mean ratio within 15% of λ.
pub fn shell_growth_run(n: usize, lambda: f64, nodes: usize, seed: u64) -> Result<CheckReport> {
    check_lambda(n, lambda)?;
    let g = er_generate(n, lambda, derive_seed(seed, "check-graph", &[]))?;
    let v = ShellGrowthValidator::new(&g, GrowthConfig::new(lambda))?;
    let giant = v.labels().largest_members();
    if giant.len() < nodes || nodes == 0 {
        return Err(Error::EmptySample(format!(
            "largest component has {} nodes, {nodes} requested",
            giant.len()
        )));
    }
    let mut rng = rng_for(seed, "check-nodes", &[]);
    let picked: Vec<NodeId> = sample_indices(&mut rng, giant.len(), nodes)
        .into_iter()
        .map(|i| giant[i])
        .collect();
    let outcomes = picked
        .par_iter()
        .map(|&u| v.check(u))
        .collect::<Result<Vec<_>>>()?;

    let mut r = CheckReport::new(
        "shell-growth",
        &[
            "node",
            "start",
            "steps",
            "counts",
            "mean_ratio",
            "within_tol",
            "chain_holds",
            "skipped",
        ],
    );
    let (mut evaluated, mut within, mut chain) = (0usize, 0usize, 0usize);
    for (u, o) in picked.iter().zip(&outcomes) {
        match o {
            GrowthOutcome::Evaluated(res) => {
                evaluated += 1;
                let ok = res.mean_within(lambda, GROWTH_REL_TOL);
                within += ok as usize;
                chain += res.chain_holds as usize;
                let counts: Vec<String> = res.counts.iter().map(|c| c.to_string()).collect();
                r.rows.push(vec![
                    u.to_string(),
                    res.start.to_string(),
                    res.steps.to_string(),
                    counts.join(" "),
                    res.mean_ratio.to_string(),
                    ok.to_string(),
                    res.chain_holds.to_string(),
                    String::new(),
                ]);
            }
            GrowthOutcome::Skipped(why) => {
                r.rows.push(vec![
                    u.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    "false".into(),
                    "false".into(),
                    why.clone(),
                ]);
            }
        }
    }
    // Skipped nodes count as failures.
    let frac = within as f64 / nodes as f64;
    let (start, steps) = v.window();
    r.passed = frac >= PASS_FRACTION;
    r.summary = format!(
        "{within}/{nodes} nodes with mean growth ratio within {:.0}% of {lambda} \
         (shells {start}..={}, {evaluated} evaluated, chain held at {chain})",
        GROWTH_REL_TOL * 100.0,
        start + steps
    );
    Ok(r)
}

/// Shell intersections at radius `k = ⌈0.55 log_λ n⌉` for random pairs of
/// distinct giant-component nodes.
pub fn shell_intersection_run(
    n: usize,
    lambda: f64,
    pairs: usize,
    seed: u64,
) -> Result<CheckReport> {
    check_lambda(n, lambda)?;
    let (k, lo, hi) = IntersectionConfig::new(lambda).radius_and_bracket(n)?;
    let g = er_generate(n, lambda, derive_seed(seed, "check-graph", &[]))?;
    let giant = components(&g).largest_members();
    if giant.len() < 2 || pairs == 0 {
        return Err(Error::EmptySample(
            "need two giant-component nodes and one pair".into(),
        ));
    }
    let mut rng = rng_for(seed, "check-pairs", &[]);
    let picked: Vec<(NodeId, NodeId)> = (0..pairs)
        .map(|_| loop {
            let a = giant[rng.random_range(0..giant.len())];
            let b = giant[rng.random_range(0..giant.len())];
            if a != b {
                break (a, b);
            }
        })
        .collect();
    let sizes = picked
        .par_iter()
        .map(|&(a, b)| shell_intersection(&g, a, b, k, k))
        .collect::<Result<Vec<_>>>()?;

    let mut r = CheckReport::new(
        "shell-intersection",
        &["u1", "u2", "k", "intersection", "inside"],
    );
    let mut inside = 0;
    for (&(a, b), &s) in picked.iter().zip(&sizes) {
        let ok = (s as f64) >= lo && (s as f64) <= hi;
        inside += ok as usize;
        r.rows.push(vec![
            a.to_string(),
            b.to_string(),
            k.to_string(),
            s.to_string(),
            ok.to_string(),
        ]);
    }
    r.passed = inside as f64 / pairs as f64 >= PASS_FRACTION;
    r.summary = format!("{inside}/{pairs} pairs inside [{lo:.3}, {hi:.3}] at k = {k}");
    Ok(r)
}

/// KS statistic between depth-`depth` shell sizes and branching generation
/// sizes; passes below 0.1.
pub fn coupling_run(cfg: CouplingConfig) -> Result<CheckReport> {
    let rep = coupling_check(cfg)?;
    let mut r = CheckReport::new("coupling", &["value", "shell_count", "branching_count"]);
    r.rows = rep
        .histogram()
        .into_iter()
        .map(|(v, (s, b))| vec![v.to_string(), s.to_string(), b.to_string()])
        .collect();
    r.passed = rep.ks < KS_THRESHOLD;
    r.summary = format!(
        "KS {:.4} (n = {}, lambda = {}, L = {}, {} trials) threshold {KS_THRESHOLD}",
        rep.ks, cfg.n, cfg.lambda, cfg.depth, cfg.trials
    );
    if !rep.warnings.is_empty() {
        r.summary
            .push_str(&format!("; {}", rep.warnings.join("; ")));
    }
    Ok(r)
}

/// Median KS over `reps` repetitions at each size; passes when the medians
/// are nonincreasing in `n`. `template` supplies everything but `n`.
/// Repetition `i` uses the same derived seed at every size, so the
/// branching samples are shared across sizes.
pub fn coupling_trend_run(
    sizes: &[usize],
    template: CouplingConfig,
    reps: usize,
) -> Result<CheckReport> {
    if sizes.len() < 2 || reps == 0 {
        return Err(Error::param("need at least two sizes and one repetition"));
    }
    let mut r = CheckReport::new("coupling-trend", &["n", "rep", "ks"]);
    let mut medians = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mut ks = Vec::with_capacity(reps);
        for rep in 0..reps {
            let cfg = CouplingConfig {
                n,
                seed: derive_seed(template.seed, "coupling-trend", &[rep as u64]),
                ..template
            };
            let c = coupling_check(cfg)?;
            r.rows
                .push(vec![n.to_string(), rep.to_string(), c.ks.to_string()]);
            ks.push(c.ks);
        }
        medians.push(median(&ks).unwrap());
    }
    r.passed = medians.windows(2).all(|w| w[1] <= w[0]);
    let shown: Vec<String> = sizes
        .iter()
        .zip(&medians)
        .map(|(n, m)| format!("n={n}: {m:.4}"))
        .collect();
    r.summary = format!(
        "median KS {} ({reps} reps, {} trials, {:?} sampler)",
        shown.join(", "),
        template.trials,
        template.sampler
    );
    Ok(r)
}

/// Survival frequency at generation `generations` against the fixed point
/// `ζ = 1 − e^{−λζ}`.
pub fn branching_survival_run(
    lambda: f64,
    generations: usize,
    runs: usize,
    seed: u64,
) -> Result<CheckReport> {
    if runs == 0 {
        return Err(Error::param("need at least one run"));
    }
    let alive = (0..runs as u64)
        .into_par_iter()
        .map(|i| {
            branching_trace(
                lambda,
                generations,
                derive_seed(seed, "check-branching", &[i]),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let zeta = survival_probability(lambda);
    let mut r = CheckReport::new("branching-survival", &["run", "last_generation"]);
    r.rows = alive
        .iter()
        .enumerate()
        .map(|(i, t)| vec![i.to_string(), t.last().to_string()])
        .collect();
    let freq = alive.iter().filter(|t| t.survived()).count() as f64 / runs as f64;
    r.passed = (freq - zeta).abs() <= SURVIVAL_TOL;
    r.summary = format!("survival {freq:.4} vs zeta {zeta:.4} at generation {generations}");
    Ok(r)
}

/// Largest root of `ζ = 1 − e^{−λζ}` (zero for `λ ≤ 1`).
pub fn survival_probability(lambda: f64) -> f64 {
    let mut z = 1.0;
    for _ in 0..10_000 {
        let next = 1.0 - (-lambda * z).exp();
        if (next - z).abs() < 1e-15 {
            return next;
        }
        z = next;
    }
    z
}

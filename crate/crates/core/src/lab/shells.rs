//! Shell profiles `|∂N_k(u)|` and the growth and intersection validators
//! built on them.

use crate::error::{Error, Result};
use crate::graph::{bfs_bounded, components, ComponentLabeling, Graph, NodeId};
use crate::scalar::{Hops, UNREACHED};

/// Shell sizes around one node: `counts[k]` nodes at distance exactly `k`,
/// `cumulative[k]` nodes within distance `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellProfile {
    pub source: NodeId,
    pub counts: Vec<usize>,
    pub cumulative: Vec<usize>,
}

pub fn shell_profile(g: &Graph, u: NodeId, k_max: Hops) -> Result<ShellProfile> {
    if k_max == UNREACHED {
        return Err(Error::param("k_max too large"));
    }
    let dist = bfs_bounded(g, u, k_max)?;
    let mut counts = vec![0usize; k_max as usize + 1];
    for &d in dist.iter() {
        if d != UNREACHED {
            counts[d as usize] += 1;
        }
    }
    let cumulative = counts
        .iter()
        .scan(0, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    Ok(ShellProfile {
        source: u,
        counts,
        cumulative,
    })
}

/// `|∂N_{k1}(u1) ∩ ∂N_{k2}(u2)|`, from two bounded BFS passes.
pub fn shell_intersection(g: &Graph, u1: NodeId, u2: NodeId, k1: Hops, k2: Hops) -> Result<usize> {
    let d1 = bfs_bounded(g, u1, k1)?;
    let d2 = bfs_bounded(g, u2, k2)?;
    Ok(d1
        .iter()
        .zip(d2.iter())
        .filter(|&(&a, &b)| a == k1 && b == k2)
        .count())
}

/// `log_λ n`.
pub fn log_base(lambda: f64, n: usize) -> f64 {
    (n as f64).ln() / lambda.ln()
}

/// Parameters of the shell-growth event chain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthConfig {
    pub lambda: f64,
    /// Slack exponent of the shell-size window, in `(0, kappa0)`.
    pub eps: f64,
    /// Starting shell `L = ⌊kappa0 · log_λ n⌋`, `kappa0 ∈ (0, 1/2)`.
    pub kappa0: f64,
    /// Number of growth steps `⌊kappa · log_λ n⌋`, `kappa ∈ (0, 1 − kappa0)`.
    pub kappa: f64,
}

impl GrowthConfig {
    pub fn new(lambda: f64) -> Self {
        GrowthConfig {
            lambda,
            eps: 0.2,
            kappa0: 0.25,
            kappa: 0.5,
        }
    }
}

/// Result of evaluating the growth chain at one node.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthResult {
    pub node: NodeId,
    /// First shell of the window (`L`).
    pub start: Hops,
    /// Growth steps evaluated (`k`).
    pub steps: Hops,
    /// `|∂N_l(u)|` for `l = L..=L + k`.
    pub counts: Vec<usize>,
    /// `counts[l + 1] / counts[l]` across the window.
    pub ratios: Vec<f64>,
    pub mean_ratio: f64,
    /// Every shell in the window lies in `[n^{-ε} λ^l, n^{ε} λ^l]`.
    pub chain_holds: bool,
}

impl GrowthResult {
    pub fn mean_within(&self, lambda: f64, rel_tol: f64) -> bool {
        (self.mean_ratio - lambda).abs() <= rel_tol * lambda
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GrowthOutcome {
    Evaluated(GrowthResult),
    /// The node is outside the giant component or its shells die out.
    Skipped(String),
}

/// Evaluates the shell-growth chain at nodes of one graph.
pub struct ShellGrowthValidator<'g> {
    g: &'g Graph,
    labels: ComponentLabeling,
    cfg: GrowthConfig,
    start: Hops,
    steps: Hops,
}

impl<'g> ShellGrowthValidator<'g> {
    pub fn new(g: &'g Graph, cfg: GrowthConfig) -> Result<Self> {
        let n = g.node_count();
        if !(cfg.lambda > 1.0) {
            return Err(Error::param(format!(
                "lambda = {} is not supercritical (need lambda > 1)",
                cfg.lambda
            )));
        }
        if !(cfg.kappa0 > 0.0 && cfg.kappa0 < 0.5) {
            return Err(Error::param("kappa0 must lie in (0, 1/2)"));
        }
        if !(cfg.kappa > 0.0 && cfg.kappa < 1.0 - cfg.kappa0) {
            return Err(Error::param("kappa must lie in (0, 1 - kappa0)"));
        }
        if !(cfg.eps > 0.0 && cfg.eps < cfg.kappa0) {
            return Err(Error::param("eps must lie in (0, kappa0)"));
        }
        if n < 2 || cfg.lambda >= n as f64 {
            return Err(Error::param("lambda must be below n"));
        }
        let logn = log_base(cfg.lambda, n);
        let start = (cfg.kappa0 * logn).floor() as Hops;
        let steps = (cfg.kappa * logn).floor() as Hops;
        if steps == 0 {
            return Err(Error::param(format!(
                "dense regime: log_lambda n = {logn:.3} leaves no growth steps"
            )));
        }
        Ok(ShellGrowthValidator {
            g,
            labels: components(g),
            cfg,
            start,
            steps,
        })
    }

    pub fn window(&self) -> (Hops, Hops) {
        (self.start, self.steps)
    }

    pub fn labels(&self) -> &ComponentLabeling {
        &self.labels
    }

    pub fn check(&self, u: NodeId) -> Result<GrowthOutcome> {
        self.g.check_node(u)?;
        if Some(self.labels.label(u)) != self.labels.largest() {
            return Ok(GrowthOutcome::Skipped(format!(
                "node {u} is outside the largest component"
            )));
        }
        let (start, steps) = (self.start, self.steps);
        let profile = shell_profile(self.g, u, start + steps)?;
        let counts = profile.counts[start as usize..].to_vec();
        if let Some(dead) = counts.iter().position(|&c| c == 0) {
            return Ok(GrowthOutcome::Skipped(format!(
                "shell {} of node {u} is empty",
                start as usize + dead
            )));
        }
        let ratios: Vec<f64> = counts
            .windows(2)
            .map(|w| w[1] as f64 / w[0] as f64)
            .collect();
        let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let n = self.g.node_count() as f64;
        let (lambda, eps) = (self.cfg.lambda, self.cfg.eps);
        let chain_holds = counts.iter().enumerate().all(|(l, &c)| {
            let centre = lambda.powi((start as usize + l) as i32);
            let c = c as f64;
            c >= n.powf(-eps) * centre && c <= n.powf(eps) * centre
        });
        Ok(GrowthOutcome::Evaluated(GrowthResult {
            node: u,
            start,
            steps,
            counts,
            ratios,
            mean_ratio,
            chain_holds,
        }))
    }
}

/// Parameters for the shell-intersection bracket.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntersectionConfig {
    pub lambda: f64,
    pub eps: f64,
    /// Radius `k = ⌈k_factor · log_λ n⌉` used for both nodes.
    pub k_factor: f64,
    /// Shells must satisfy `2k > (1 + zeta) log_λ n`.
    pub zeta: f64,
    pub kappa0: f64,
    pub kappa: f64,
}

impl IntersectionConfig {
    pub fn new(lambda: f64) -> Self {
        IntersectionConfig {
            lambda,
            eps: 0.2,
            k_factor: 0.55,
            zeta: 0.05,
            kappa0: 0.25,
            kappa: 0.5,
        }
    }

    /// Radius and the bracket `[n^{−ε}λ^{2k}/(2n), n^{ε}λ^{2k}/n]`, after
    /// checking the radius lies in the admissible window.
    pub fn radius_and_bracket(&self, n: usize) -> Result<(Hops, f64, f64)> {
        if !(self.lambda > 1.0) {
            return Err(Error::param("lambda must exceed 1"));
        }
        let logn = log_base(self.lambda, n);
        let k = (self.k_factor * logn).ceil() as Hops;
        let start = (self.kappa0 * logn).floor();
        if (k as f64) <= start || (k as f64) > (self.kappa0 + self.kappa) * logn {
            return Err(Error::param(format!(
                "radius {k} outside (L, (kappa0 + kappa) log_lambda n] = ({start}, {:.3}]",
                (self.kappa0 + self.kappa) * logn
            )));
        }
        if 2.0 * k as f64 <= (1.0 + self.zeta) * logn {
            return Err(Error::param(format!(
                "2k = {} does not exceed (1 + zeta) log_lambda n = {:.3}",
                2 * k,
                (1.0 + self.zeta) * logn
            )));
        }
        let nf = n as f64;
        let centre = self.lambda.powi(2 * k as i32) / nf;
        Ok((
            k,
            nf.powf(-self.eps) * centre / 2.0,
            nf.powf(self.eps) * centre,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{bfs, er_generate};

    #[test]
    fn star_from_centre() {
        let p = shell_profile(&star(9), 0, 3).unwrap();
        assert_eq!(p.counts, vec![1, 8, 0, 0]);
        assert_eq!(p.cumulative, vec![1, 9, 9, 9]);
    }

    #[test]
    fn path_from_endpoint() {
        let p = shell_profile(&path(6), 0, 5).unwrap();
        assert_eq!(p.counts, vec![1; 6]);
        assert_eq!(p.cumulative, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn cumulative_reaches_component_size() {
        let g = er_generate(300, 1.5, 8).unwrap();
        let c = components(&g);
        for u in [0, 17, 123] {
            let p = shell_profile(&g, u, 300).unwrap();
            assert_eq!(p.counts[0], 1);
            assert_eq!(*p.cumulative.last().unwrap(), c.component_size_of(u));
            assert!(p.cumulative.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn intersection_edge_cases() {
        let g = er_generate(400, 4.0, 3).unwrap();
        let p = shell_profile(&g, 5, 3).unwrap();
        assert_eq!(shell_intersection(&g, 5, 5, 3, 3).unwrap(), p.counts[3]);
        let d = bfs(&g, 5).unwrap();
        let far = (0..400)
            .find(|&v| d[v as usize] != UNREACHED && d[v as usize] >= 5)
            .unwrap();
        assert_eq!(shell_intersection(&g, 5, far, 2, 2).unwrap(), 0);
        assert_eq!(
            shell_intersection(&g, 5, far, 3, 2).unwrap(),
            shell_intersection(&g, far, 5, 2, 3).unwrap()
        );
    }

    #[test]
    fn growth_guards() {
        let g = er_generate(100, 50.0, 1).unwrap();
        assert!(ShellGrowthValidator::new(&g, GrowthConfig::new(50.0)).is_err());
        let g = er_generate(100, 0.8, 1).unwrap();
        assert!(ShellGrowthValidator::new(&g, GrowthConfig::new(0.8)).is_err());
        let g = er_generate(1000, 3.0, 1).unwrap();
        let bad = GrowthConfig {
            eps: 0.3,
            ..GrowthConfig::new(3.0)
        };
        assert!(ShellGrowthValidator::new(&g, bad).is_err());
    }

    #[test]
    fn growth_skips_small_components() {
        // Giant path plus an isolated edge.
        let mut edges: Vec<(NodeId, NodeId)> = (1..60).map(|v| (v - 1, v)).collect();
        edges.push((60, 61));
        let g = Graph::from_edges(62, edges).unwrap().0;
        let v = ShellGrowthValidator::new(&g, GrowthConfig::new(2.0)).unwrap();
        assert!(matches!(v.check(60).unwrap(), GrowthOutcome::Skipped(_)));
        assert!(matches!(v.check(30).unwrap(), GrowthOutcome::Evaluated(_)));
        // The far endpoint of the path runs out of shells.
        let (start, steps) = v.window();
        assert!(start + steps > 0);
        match v.check(0).unwrap() {
            GrowthOutcome::Evaluated(r) => assert!(r.ratios.iter().all(|&x| x == 1.0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn intersection_bracket_values() {
        let cfg = IntersectionConfig::new(5.0);
        let (k, lo, hi) = cfg.radius_and_bracket(20_000).unwrap();
        assert_eq!(k, 4);
        let n = 20_000f64;
        assert!((lo - n.powf(-0.2) * 5f64.powi(8) / (2.0 * n)).abs() < 1e-9);
        assert!((hi - n.powf(0.2) * 5f64.powi(8) / n).abs() < 1e-9);
        let tight = IntersectionConfig {
            k_factor: 0.45,
            ..cfg
        };
        assert!(tight.radius_and_bracket(20_000).is_err());
    }
}

use std::time::{Duration, Instant};

use crate::embedding::{Builder, Embedding};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::lab::pair_distances;
use crate::scalar::Distance;

/// Identifies the graph and embedding a report was measured on.
#[derive(Clone, Debug, PartialEq)]
pub struct DistortionConfig {
    pub graph_source: String,
    pub n: usize,
    pub m: usize,
    /// Generator parameter; `None` for graphs read from disk.
    pub lambda: Option<f64>,
    pub base: u32,
    pub max_exp: u32,
    pub rounds: u32,
    pub seed: u64,
    pub builder: Builder,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistortionSample {
    pub u: NodeId,
    pub v: NodeId,
    pub d: u32,
    pub lb: f64,
    /// `None` when not computed or when no closest landmark is shared.
    pub ub: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistortionMetrics {
    pub pairs: usize,
    pub mse_lb: f64,
    pub mean_rel_err_lb: f64,
    /// Fraction with `lb < (1 − ε) d`.
    pub viol_rate_lb_eps: f64,
    /// Fraction with `ub > (1 + ε) d`; an undefined `ub` counts as a
    /// violation. `None` when upper bounds were not computed.
    pub viol_rate_ub_eps: Option<f64>,
}

impl DistortionMetrics {
    pub fn from_samples(samples: &[DistortionSample], eps: f64, with_ub: bool) -> Self {
        let k = samples.len().max(1) as f64;
        let mut mse = 0.0;
        let mut rel = 0.0;
        let mut lb_viol = 0usize;
        let mut ub_viol = 0usize;
        for s in samples {
            let d = s.d as f64;
            mse += (d - s.lb) * (d - s.lb);
            rel += (d - s.lb) / d;
            lb_viol += (s.lb < (1.0 - eps) * d) as usize;
            ub_viol += s.ub.is_none_or(|ub| ub > (1.0 + eps) * d) as usize;
        }
        DistortionMetrics {
            pairs: samples.len(),
            mse_lb: mse / k,
            mean_rel_err_lb: rel / k,
            viol_rate_lb_eps: lb_viol as f64 / k,
            viol_rate_ub_eps: with_ub.then_some(ub_viol as f64 / k),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistortionOptions {
    pub eps: f64,
    pub upper: bool,
}

impl Default for DistortionOptions {
    fn default() -> Self {
        DistortionOptions {
            eps: 0.5,
            upper: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistortionReport {
    pub config: DistortionConfig,
    pub eps: f64,
    pub samples: Vec<DistortionSample>,
    pub metrics: DistortionMetrics,
    /// Filled in by the caller when it timed the build.
    pub build: Option<Duration>,
    pub query: Duration,
}

impl DistortionReport {
    pub fn query_us_per_pair(&self) -> f64 {
        self.query.as_secs_f64() * 1e6 / self.samples.len().max(1) as f64
    }
}

/// Compares embedding bounds against exact BFS distances on `pairs`.
///
/// Every pair must be connected with distinct endpoints. For BFS-built
/// embeddings `lb ≤ d ≤ ub` is checked and a breach is an
/// [`Error::Invariant`]. Requesting upper bounds on a learned embedding is
/// [`Error::Unsupported`].
pub fn run_distortion<T: Distance>(
    g: &Graph,
    emb: &Embedding<T>,
    pairs: &[(NodeId, NodeId)],
    graph_source: &str,
    lambda: Option<f64>,
    opts: DistortionOptions,
) -> Result<DistortionReport> {
    if emb.node_count() != g.node_count() {
        return Err(Error::param(format!(
            "embedding has {} nodes, graph has {}",
            emb.node_count(),
            g.node_count()
        )));
    }
    if opts.upper && emb.builder() != Builder::Bfs {
        return Err(Error::Unsupported(format!(
            "upper bounds requested on a {} embedding",
            emb.builder().tag()
        )));
    }
    if pairs.is_empty() {
        return Err(Error::EmptySample("no pairs to evaluate".into()));
    }
    let exact = pair_distances(g, pairs)?;

    let started = Instant::now();
    let bounds = pairs
        .iter()
        .map(|&(u, v)| {
            let lb = emb.query_lower(u, v)?;
            let ub = if opts.upper {
                emb.upper_bound(u, v)?
            } else {
                None
            };
            Ok((lb, ub))
        })
        .collect::<Result<Vec<_>>>()?;
    let query = started.elapsed();

    let hard = emb.builder() == Builder::Bfs;
    let mut samples = Vec::with_capacity(pairs.len());
    for ((&(u, v), d), (lb, ub)) in pairs.iter().zip(exact).zip(bounds) {
        let d = match d {
            Some(d) if d > 0 => d,
            Some(_) => {
                return Err(Error::param(format!(
                    "pair ({u}, {v}) has identical endpoints"
                )))
            }
            None => return Err(Error::param(format!("pair ({u}, {v}) is disconnected"))),
        };
        let s = DistortionSample {
            u,
            v,
            d,
            lb: lb.as_f64(),
            ub: ub.map(|x| x.as_f64()),
        };
        if hard && (s.lb > d as f64 || s.ub.is_some_and(|ub| ub < d as f64)) {
            return Err(Error::Invariant(format!(
                "bounds [{}, {:?}] do not contain d({u}, {v}) = {d}",
                s.lb, s.ub
            )));
        }
        samples.push(s);
    }

    let h = emb.header();
    Ok(DistortionReport {
        config: DistortionConfig {
            graph_source: graph_source.to_string(),
            n: g.node_count(),
            m: g.edge_count(),
            lambda,
            base: h.base,
            max_exp: h.max_exp,
            rounds: h.rounds,
            seed: h.seed,
            builder: h.builder,
        },
        eps: opts.eps,
        metrics: DistortionMetrics::from_samples(&samples, opts.eps, opts.upper),
        samples,
        build: None,
        query,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::sample_pairs;
    use crate::embedding::{build_embedding, LandmarkFamily};
    use crate::graph::fixtures::*;
    use crate::graph::{er_generate, extract_lcc};
    use crate::HopEmbedding;

    #[test]
    fn singleton_landmarks_everywhere_are_exact() {
        let g = path(8);
        let sets = (0..8).map(|v| vec![v]).collect();
        let fam = LandmarkFamily::from_sets(8, 2, 0, 0, sets).unwrap();
        let emb: HopEmbedding = build_embedding(&g, &fam).unwrap();
        let pairs = sample_pairs(&g, 60, 1).unwrap();
        let r =
            run_distortion(&g, &emb, &pairs, "path", None, DistortionOptions::default()).unwrap();
        assert!(r
            .samples
            .iter()
            .all(|s| s.lb == s.d as f64 && s.ub == Some(s.d as f64)));
        assert_eq!(r.metrics.mse_lb, 0.0);
        assert_eq!(r.metrics.mean_rel_err_lb, 0.0);
        assert_eq!(r.metrics.viol_rate_lb_eps, 0.0);
        assert_eq!(r.metrics.viol_rate_ub_eps, Some(0.0));
    }

    #[test]
    fn metrics_recompute_from_samples() {
        let g = extract_lcc(&er_generate(500, 4.0, 3).unwrap()).unwrap().0;
        let fam = LandmarkFamily::sample(g.node_count(), 2, 3, 6, 4).unwrap();
        let emb: HopEmbedding = build_embedding(&g, &fam).unwrap();
        let pairs = sample_pairs(&g, 300, 2).unwrap();
        let r = run_distortion(
            &g,
            &emb,
            &pairs,
            "er",
            Some(4.0),
            DistortionOptions::default(),
        )
        .unwrap();
        let d: Vec<f64> = r.samples.iter().map(|s| s.d as f64).collect();
        let lb: Vec<f64> = r.samples.iter().map(|s| s.lb).collect();
        let mse = d.iter().zip(&lb).map(|(d, l)| (d - l).powi(2)).sum::<f64>() / d.len() as f64;
        let rel = d.iter().zip(&lb).map(|(d, l)| (d - l) / d).sum::<f64>() / d.len() as f64;
        assert!((r.metrics.mse_lb - mse).abs() < 1e-12);
        assert!((r.metrics.mean_rel_err_lb - rel).abs() < 1e-12);
        assert_eq!(
            r.metrics,
            DistortionMetrics::from_samples(&r.samples, 0.5, true)
        );
    }

    #[test]
    fn more_rounds_never_hurt_on_the_same_pairs() {
        let g = extract_lcc(&er_generate(800, 5.0, 9).unwrap()).unwrap().0;
        let n = g.node_count();
        let pairs = sample_pairs(&g, 400, 1).unwrap();
        let mut last = f64::INFINITY;
        for rounds in [2, 4, 8, 16] {
            let fam = LandmarkFamily::sample(n, 2, 3, rounds, 77).unwrap();
            let emb: HopEmbedding = build_embedding(&g, &fam).unwrap();
            let r = run_distortion(
                &g,
                &emb,
                &pairs,
                "er",
                Some(5.0),
                DistortionOptions::default(),
            )
            .unwrap();
            assert!(r.metrics.mean_rel_err_lb <= last);
            last = r.metrics.mean_rel_err_lb;
        }
    }

    #[test]
    fn learned_embeddings_refuse_upper_bounds() {
        let g = path(5);
        let fam = LandmarkFamily::from_sets(5, 2, 0, 0, vec![vec![0]]).unwrap();
        let emb: Embedding<f64> = build_embedding(&g, &fam).unwrap();
        let emb = emb.into_learned();
        let pairs = [(0, 4), (1, 3)];
        assert!(matches!(
            run_distortion(&g, &emb, &pairs, "p", None, DistortionOptions::default()),
            Err(Error::Unsupported(_))
        ));
        let opts = DistortionOptions {
            upper: false,
            ..Default::default()
        };
        let r = run_distortion(&g, &emb, &pairs, "p", None, opts).unwrap();
        assert_eq!(r.metrics.viol_rate_ub_eps, None);
        assert_eq!(r.samples[0].lb, 4.0);
    }

    #[test]
    fn breached_bounds_are_invariant_errors() {
        let g = path(4);
        let fam = LandmarkFamily::from_sets(4, 2, 0, 0, vec![vec![0]]).unwrap();
        let good: HopEmbedding = build_embedding(&g, &fam).unwrap();
        // Coordinates claiming node 3 sits 9 hops from node 0.
        let bad = Embedding::from_parts(
            *good.header(),
            vec![0u32, 1, 2, 9],
            good.sigma().map(|s| s.to_vec()),
        )
        .unwrap();
        assert!(matches!(
            run_distortion(&g, &bad, &[(0, 3)], "p", None, DistortionOptions::default()),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn rejects_degenerate_pairs() {
        let g = two_edges();
        let fam = LandmarkFamily::from_sets(4, 2, 0, 0, vec![vec![0]]).unwrap();
        let emb: HopEmbedding = build_embedding(&g, &fam).unwrap();
        let opts = DistortionOptions::default();
        assert!(run_distortion(&g, &emb, &[(1, 1)], "g", None, opts).is_err());
        assert!(run_distortion(&g, &emb, &[(0, 2)], "g", None, opts).is_err());
        assert!(run_distortion(&g, &emb, &[], "g", None, opts).is_err());
    }
}

use std::time::{Duration, Instant};

use crate::embedding::{build_embedding, LandmarkFamily};
use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::HopEmbedding;

#[derive(Clone, Debug, PartialEq)]
pub struct TimingRecord {
    pub n: usize,
    pub m: usize,
    pub dims: usize,
    /// Fastest of the repeated builds.
    pub build: Duration,
    /// Fastest of the repeated query batches.
    pub query: Duration,
    pub queries: usize,
}

impl TimingRecord {
    pub fn build_ms(&self) -> f64 {
        self.build.as_secs_f64() * 1e3
    }

    pub fn query_us_per_pair(&self) -> f64 {
        self.query.as_secs_f64() * 1e6 / self.queries.max(1) as f64
    }
}

pub fn time_build(g: &Graph, fam: &LandmarkFamily) -> Result<(HopEmbedding, Duration)> {
    let started = Instant::now();
    let emb = build_embedding(g, fam)?;
    Ok((emb, started.elapsed()))
}

/// Wall-clock time for lower and upper bounds on every pair. Fails on an
/// embedding without coordinates.
pub fn time_queries(emb: &HopEmbedding, pairs: &[(NodeId, NodeId)]) -> Result<Duration> {
    let started = Instant::now();
    for &(u, v) in pairs {
        std::hint::black_box(emb.query(u, v)?);
    }
    Ok(started.elapsed())
}

/// Best-of-`repeats` build and query times.
pub fn timing_bench(
    g: &Graph,
    fam: &LandmarkFamily,
    pairs: &[(NodeId, NodeId)],
    repeats: usize,
) -> Result<TimingRecord> {
    let mut build = Duration::MAX;
    let mut query = Duration::MAX;
    for _ in 0..repeats.max(1) {
        let (emb, b) = time_build(g, fam)?;
        build = build.min(b);
        query = query.min(time_queries(&emb, pairs)?);
    }
    Ok(TimingRecord {
        n: g.node_count(),
        m: g.edge_count(),
        dims: fam.dims(),
        build,
        query,
        queries: pairs.len(),
    })
}

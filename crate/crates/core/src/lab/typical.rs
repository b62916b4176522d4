use rand::Rng as _;
use rayon::prelude::*;

use super::shells::log_base;
use crate::error::{Error, Result};
use crate::graph::{bfs, Graph, NodeId};
use crate::scalar::UNREACHED;
use crate::seed::rng_for;

/// Pairs drawn uniformly from `V × V` with replacement, no filtering.
pub fn uniform_pairs(n: usize, count: usize, seed: u64) -> Vec<(NodeId, NodeId)> {
    let mut rng = rng_for(seed, "uniform-pairs", &[]);
    (0..count)
        .map(|_| {
            (
                rng.random_range(0..n as NodeId),
                rng.random_range(0..n as NodeId),
            )
        })
        .collect()
}

/// Exact distances for a batch of pairs, one BFS per distinct first
/// endpoint. `None` marks disconnected pairs.
pub fn pair_distances(g: &Graph, pairs: &[(NodeId, NodeId)]) -> Result<Vec<Option<u32>>> {
    for &(u, v) in pairs {
        g.check_node(u)?;
        g.check_node(v)?;
    }
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&i| pairs[i].0);
    let groups: Vec<&[usize]> = order.chunk_by(|&a, &b| pairs[a].0 == pairs[b].0).collect();
    let solved = groups
        .par_iter()
        .map(|idx| -> Result<Vec<(usize, Option<u32>)>> {
            let dist = bfs(g, pairs[idx[0]].0)?;
            Ok(idx
                .iter()
                .map(|&i| {
                    let d = dist[pairs[i].1 as usize];
                    (i, (d != UNREACHED).then_some(d))
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![None; pairs.len()];
    for (i, d) in solved.into_iter().flatten() {
        out[i] = d;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypicalDistance {
    /// `d(u, v) / log_λ n` for every connected pair with `u ≠ v`.
    pub ratios: Vec<f64>,
    pub mean_ratio: f64,
    pub self_pairs: usize,
    pub disconnected: usize,
}

/// Mean of `d / log_λ n` over the connected, distinct pairs in `pairs`.
pub fn typical_distance_check(
    g: &Graph,
    pairs: &[(NodeId, NodeId)],
    lambda: f64,
) -> Result<TypicalDistance> {
    if !(lambda > 1.0) {
        return Err(Error::param("lambda must exceed 1"));
    }
    let scale = log_base(lambda, g.node_count());
    let dists = pair_distances(g, pairs)?;
    let mut self_pairs = 0;
    let mut disconnected = 0;
    let mut ratios = Vec::new();
    for (&(u, v), d) in pairs.iter().zip(dists) {
        match d {
            _ if u == v => self_pairs += 1,
            None => disconnected += 1,
            Some(d) => ratios.push(d as f64 / scale),
        }
    }
    if ratios.is_empty() {
        return Err(Error::EmptySample(
            "no connected pair of distinct nodes".into(),
        ));
    }
    let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
    Ok(TypicalDistance {
        ratios,
        mean_ratio,
        self_pairs,
        disconnected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn complete_graph_distances_are_one() {
        let g = complete(30);
        let pairs = uniform_pairs(30, 200, 4);
        let t = typical_distance_check(&g, &pairs, 29.0).unwrap();
        let scale = log_base(29.0, 30);
        assert!(t.ratios.iter().all(|&r| (r - 1.0 / scale).abs() < 1e-12));
        assert_eq!(t.ratios.len() + t.self_pairs, 200);
    }

    #[test]
    fn degenerate_pairs_are_excluded() {
        let g = two_edges();
        let t = typical_distance_check(&g, &[(0, 0), (0, 2), (0, 1)], 2.0).unwrap();
        assert_eq!(t.self_pairs, 1);
        assert_eq!(t.disconnected, 1);
        assert_eq!(t.ratios.len(), 1);
        assert!(matches!(
            typical_distance_check(&g, &[(0, 0), (1, 3)], 2.0),
            Err(Error::EmptySample(_))
        ));
    }

    #[test]
    fn pair_distances_follow_input_order() {
        let g = path(5);
        let d = pair_distances(&g, &[(4, 0), (0, 3), (4, 4), (0, 1)]).unwrap();
        assert_eq!(d, vec![Some(4), Some(3), Some(0), Some(1)]);
    }
}

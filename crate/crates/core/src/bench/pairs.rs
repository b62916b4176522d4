use rand::distr::{weighted::WeightedIndex, Distribution};
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{components, Graph, NodeId};
use crate::seed::rng_for;

/// Below this acceptance probability the rejection loop is replaced by
/// drawing the component first. Both give the uniform law on
/// `{(u, v) : u ≠ v, same component}`.
const MIN_ACCEPTANCE: f64 = 1e-3;

/// Pairs drawn uniformly from `V × V` with replacement, redrawn until both
/// endpoints differ and share a component.
pub fn sample_pairs(g: &Graph, count: usize, seed: u64) -> Result<Vec<(NodeId, NodeId)>> {
    let n = g.node_count();
    let labels = components(g);
    let sizes = labels.sizes_desc();
    let admissible: f64 = sizes.iter().map(|&s| s as f64 * (s as f64 - 1.0)).sum();
    if admissible == 0.0 {
        return Err(Error::EmptySample("no component has two nodes".into()));
    }
    let mut rng = rng_for(seed, "pairs", &[]);
    let nn = n as f64 * n as f64;
    if admissible / nn >= MIN_ACCEPTANCE {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let u = rng.random_range(0..n as NodeId);
            let v = rng.random_range(0..n as NodeId);
            if u != v && labels.connected(u, v) {
                out.push((u, v));
            }
        }
        return Ok(out);
    }

    let members: Vec<Vec<NodeId>> = (0..labels.count() as u32)
        .map(|c| labels.members(c))
        .collect();
    let weights: Vec<f64> = members
        .iter()
        .map(|m| m.len() as f64 * (m.len() as f64 - 1.0))
        .collect();
    let pick = WeightedIndex::new(&weights).map_err(|e| Error::Invariant(e.to_string()))?;
    Ok((0..count)
        .map(|_| {
            let m = &members[pick.sample(&mut rng)];
            let i = rng.random_range(0..m.len());
            let j = (i + rng.random_range(1..m.len())) % m.len();
            (m[i], m[j])
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::er_generate;
    use crate::graph::fixtures::*;

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap().0;
        let p = sample_pairs(&g, 50, 1).unwrap();
        assert!(p.iter().all(|&e| e == (0, 1) || e == (1, 0)));
        assert!(p.contains(&(0, 1)) && p.contains(&(1, 0)));
    }

    #[test]
    fn deterministic_and_admissible() {
        let g = two_edges();
        let a = sample_pairs(&g, 100, 5).unwrap();
        assert_eq!(a, sample_pairs(&g, 100, 5).unwrap());
        let c = components(&g);
        assert!(a.iter().all(|&(u, v)| u != v && c.connected(u, v)));
    }

    #[test]
    fn no_admissible_pair() {
        assert!(matches!(
            sample_pairs(&Graph::empty(10), 5, 0),
            Err(Error::EmptySample(_))
        ));
    }

    #[test]
    fn sparse_fallback() {
        // One edge among 2000 isolated nodes: acceptance 2 / 4e6.
        let g = Graph::from_edges(2000, [(7, 1999)]).unwrap().0;
        let p = sample_pairs(&g, 20, 3).unwrap();
        assert!(p.iter().all(|&e| e == (7, 1999) || e == (1999, 7)));
    }

    #[test]
    fn giant_component_share() {
        // ζ² ≈ 0.986 of admissible pairs fall in the giant component.
        let g = er_generate(10_000, 5.0, 2).unwrap();
        let c = components(&g);
        let giant = c.largest().unwrap();
        let p = sample_pairs(&g, 2000, 8).unwrap();
        let inside = p.iter().filter(|&&(u, _)| c.label(u) == giant).count();
        assert!(inside as f64 / p.len() as f64 >= 0.95);
    }
}

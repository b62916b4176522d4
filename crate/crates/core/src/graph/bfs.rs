use std::ops::Deref;

use super::{Graph, NodeId};
use crate::error::{Error, Result};
use crate::scalar::{Hops, UNREACHED};

/// Marks nodes that have no closest source (they are unreached).
pub const NO_SOURCE: NodeId = NodeId::MAX;

/// Hop distance per node; [`UNREACHED`] outside the explored component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceVector(Vec<Hops>);

impl DistanceVector {
    pub fn into_inner(self) -> Vec<Hops> {
        self.0
    }

    pub fn get(&self, u: NodeId) -> Option<Hops> {
        self.0.get(u as usize).copied().filter(|&d| d != UNREACHED)
    }
}

impl Deref for DistanceVector {
    type Target = [Hops];

    fn deref(&self) -> &[Hops] {
        &self.0
    }
}

/// For each node, the source achieving its distance (smallest id on ties).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosestSource(Vec<NodeId>);

impl ClosestSource {
    pub fn into_inner(self) -> Vec<NodeId> {
        self.0
    }
}

impl Deref for ClosestSource {
    type Target = [NodeId];

    fn deref(&self) -> &[NodeId] {
        &self.0
    }
}

/// Exact single-source hop distances.
pub fn bfs(g: &Graph, source: NodeId) -> Result<DistanceVector> {
    bfs_bounded(g, source, Hops::MAX - 1)
}

/// BFS that stops after assigning distance `max_depth`; nodes further away
/// are reported UNREACHED.
pub fn bfs_bounded(g: &Graph, source: NodeId, max_depth: Hops) -> Result<DistanceVector> {
    g.check_node(source)?;
    let mut dist = vec![UNREACHED; g.node_count()];
    dist[source as usize] = 0;
    let mut queue = Vec::with_capacity(64);
    queue.push(source);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u as usize];
        if du >= max_depth {
            // FIFO order: everything left is at depth max_depth.
            break;
        }
        for &v in g.neighbors(u) {
            if dist[v as usize] == UNREACHED {
                dist[v as usize] = du + 1;
                queue.push(v);
            }
        }
    }
    Ok(DistanceVector(dist))
}

/// Distance from each node to its nearest source, and which source that is.
///
/// One level-synchronous pass over the graph. A node first reached at depth
/// `k + 1` takes the smallest closest-source among all its depth-`k`
/// neighbors, which by induction is the smallest id among all sources at
/// minimum distance.
pub fn multi_source_bfs(g: &Graph, sources: &[NodeId]) -> Result<(DistanceVector, ClosestSource)> {
    if sources.is_empty() {
        return Err(Error::param("source set is empty"));
    }
    for &s in sources {
        g.check_node(s)?;
    }
    let n = g.node_count();
    let mut dist = vec![UNREACHED; n];
    let mut closest = vec![NO_SOURCE; n];
    let mut frontier = Vec::with_capacity(sources.len());
    for &s in sources {
        if dist[s as usize] == UNREACHED {
            dist[s as usize] = 0;
            closest[s as usize] = s;
            frontier.push(s);
        }
    }
    let mut next = Vec::new();
    let mut depth: Hops = 0;
    while !frontier.is_empty() {
        depth += 1;
        for &u in &frontier {
            let cu = closest[u as usize];
            for &v in g.neighbors(u) {
                let dv = &mut dist[v as usize];
                if *dv == UNREACHED {
                    *dv = depth;
                    closest[v as usize] = cu;
                    next.push(v);
                } else if *dv == depth && cu < closest[v as usize] {
                    closest[v as usize] = cu;
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    Ok((DistanceVector(dist), ClosestSource(closest)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::er_generate;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    #[test]
    fn path_distances() {
        assert_eq!(&*bfs(&path(4), 0).unwrap(), &[0, 1, 2, 3]);
    }

    #[test]
    fn disconnected_nodes_are_unreached() {
        let d = bfs(&two_edges(), 0).unwrap();
        assert_eq!(&*d, &[0, 1, UNREACHED, UNREACHED]);
        assert_eq!(d.get(2), None);
        assert_eq!(d.get(1), Some(1));
    }

    #[test]
    fn bad_source() {
        assert!(matches!(bfs(&path(3), 3), Err(Error::Param(_))));
        assert!(matches!(
            multi_source_bfs(&path(3), &[]),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            multi_source_bfs(&path(3), &[0, 7]),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn bounded_bfs_stops() {
        let d = bfs_bounded(&path(6), 0, 2).unwrap();
        assert_eq!(&*d, &[0, 1, 2, UNREACHED, UNREACHED, UNREACHED]);
    }

    #[test]
    fn two_sources_on_a_path() {
        let (d, c) = multi_source_bfs(&path(4), &[0, 3]).unwrap();
        assert_eq!(&*d, &[0, 1, 1, 0]);
        assert_eq!(&*c, &[0, 0, 3, 3]);
    }

    #[test]
    fn ties_go_to_smaller_source() {
        let (_, c) = multi_source_bfs(&path(3), &[2, 0]).unwrap();
        assert_eq!(c[1], 0);
    }

    #[test]
    fn all_nodes_as_sources() {
        let g = er_generate(50, 3.0, 1).unwrap();
        let all: Vec<NodeId> = (0..50).collect();
        let (d, c) = multi_source_bfs(&g, &all).unwrap();
        assert!(d.iter().all(|&x| x == 0));
        assert!(c.iter().enumerate().all(|(u, &s)| s as usize == u));
    }

    #[test]
    fn duplicate_sources_are_harmless() {
        let (d, c) = multi_source_bfs(&path(5), &[4, 4, 1, 1]).unwrap();
        assert_eq!(&*d, &[1, 0, 1, 1, 0]);
        assert_eq!(&*c, &[1, 1, 1, 4, 4]);
    }

    proptest! {
        #[test]
        fn edges_are_lipschitz(n in 2usize..120, lambda in 0.5f64..6.0, seed: u64, s in 0u32..1000) {
            let g = er_generate(n, lambda.min(n as f64), seed).unwrap();
            let d = bfs(&g, s % n as NodeId).unwrap();
            for (u, v) in g.edges() {
                let (a, b) = (d[u as usize], d[v as usize]);
                if a != UNREACHED || b != UNREACHED {
                    prop_assert!(a != UNREACHED && b != UNREACHED);
                    prop_assert!(a.abs_diff(b) <= 1);
                }
            }
        }
    }
}

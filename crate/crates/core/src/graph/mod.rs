//! Undirected, unweighted graphs in compressed adjacency form.

mod bfs;
mod components;
mod generate;
pub(crate) mod io;

pub use bfs::{bfs, bfs_bounded, multi_source_bfs, ClosestSource, DistanceVector, NO_SOURCE};
pub use components::{components, extract_lcc, ComponentLabeling};
pub use generate::er_generate;
pub use io::{
    ingest_edgelist, read_binary, read_graph, write_binary, write_edgelist, IngestStats, Ingested,
    GRAPH_MAGIC, GRAPH_VERSION,
};

use crate::error::{Error, Result};

/// Dense node identifier in `0..n`.
pub type NodeId = u32;

/// Largest node count representable with [`NodeId`]; `NodeId::MAX` is
/// reserved as a sentinel.
pub const MAX_NODES: usize = NodeId::MAX as usize;

/// Immutable undirected graph.
///
/// Canonical form: no self-loops, no duplicate edges, every neighbor list
/// sorted ascending, and `v ∈ adj(u)` iff `u ∈ adj(v)`. Two graphs with the
/// same edge set are therefore equal field by field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

/// What [`Graph::from_edges`] discarded while canonicalizing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Simplification {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a canonical graph from an arbitrary edge list over `0..n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Self, Simplification)>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        check_node_count(n)?;
        let mut stats = Simplification::default();
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::param(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                stats.self_loops += 1;
                continue;
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        stats.duplicates = before - pairs.len();
        Ok((Self::from_sorted_pairs(n, &pairs), stats))
    }

    /// `pairs` must be strictly increasing with `u < v` in every pair.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(NodeId, NodeId)]) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        let mut degree = vec![0usize; n];
        for &(u, v) in pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; 2 * pairs.len()];
        // Lexicographic pair order fills every list in ascending order: the
        // smaller neighbors of x arrive via (a, x) with a < x before any (x, b).
        for &(u, v) in pairs {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        Graph { offsets, targets }
    }

    /// Validates raw CSR arrays against the canonical-form invariants.
    pub fn from_csr(offsets: Vec<usize>, targets: Vec<NodeId>) -> Result<Self> {
        if offsets.is_empty() || offsets[0] != 0 {
            return Err(Error::format("offsets must start at 0"));
        }
        let n = offsets.len() - 1;
        check_node_count(n)?;
        if offsets.windows(2).any(|w| w[0] > w[1]) || offsets[n] != targets.len() {
            return Err(Error::format("offsets are not a valid prefix sum"));
        }
        if !targets.len().is_multiple_of(2) {
            return Err(Error::format("odd number of adjacency entries"));
        }
        let g = Graph { offsets, targets };
        for u in 0..n {
            let adj = g.neighbors(u as NodeId);
            if adj.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::format(format!(
                    "neighbors of {u} not strictly ascending"
                )));
            }
            for &v in adj {
                if v as usize >= n || v as usize == u {
                    return Err(Error::format(format!("bad neighbor {v} of {u}")));
                }
                if g.neighbors(v).binary_search(&(u as NodeId)).is_err() {
                    return Err(Error::format(format!("edge ({u}, {v}) not symmetric")));
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: NodeId) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[NodeId] {
        &self.targets
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count() as NodeId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn average_degree(&self) -> f64 {
        if self.node_count() == 0 {
            0.0
        } else {
            self.targets.len() as f64 / self.node_count() as f64
        }
    }

    /// Subgraph induced by `keep` (ascending, unique), relabeled densely in
    /// the same order.
    pub fn induced(&self, keep: &[NodeId]) -> Self {
        let mut remap = vec![NodeId::MAX; self.node_count()];
        for (i, &u) in keep.iter().enumerate() {
            remap[u as usize] = i as NodeId;
        }
        let mut offsets = Vec::with_capacity(keep.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for &u in keep {
            // Relabeling is monotone, so lists stay sorted.
            targets.extend(
                self.neighbors(u)
                    .iter()
                    .map(|&v| remap[v as usize])
                    .filter(|&v| v != NodeId::MAX),
            );
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    pub(crate) fn check_node(&self, u: NodeId) -> Result<()> {
        if (u as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::param(format!(
                "node {u} out of range for {} nodes",
                self.node_count()
            )))
        }
    }
}

fn check_node_count(n: usize) -> Result<()> {
    if n > MAX_NODES {
        Err(Error::param(format!(
            "{n} nodes exceeds the supported maximum"
        )))
    } else {
        Ok(())
    }
}

use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// Connected components of a graph.
///
/// Component ids follow discovery order when scanning nodes ascending, so
/// component `c` has a smaller minimum member than component `c + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    labels: Vec<u32>,
    sizes: Vec<usize>,
    /// Component ids by size descending, smallest member first on ties.
    by_size: Vec<u32>,
}

impl ComponentLabeling {
    pub fn label(&self, u: NodeId) -> u32 {
        self.labels[u as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, component: u32) -> usize {
        self.sizes[component as usize]
    }

    pub fn component_size_of(&self, u: NodeId) -> usize {
        self.size(self.label(u))
    }

    pub fn connected(&self, u: NodeId, v: NodeId) -> bool {
        self.label(u) == self.label(v)
    }

    /// `|C_(1)| ≥ |C_(2)| ≥ ...`
    pub fn sizes_desc(&self) -> Vec<usize> {
        self.by_size.iter().map(|&c| self.size(c)).collect()
    }

    /// Id of the largest component, `None` for the empty graph.
    pub fn largest(&self) -> Option<u32> {
        self.by_size.first().copied()
    }

    /// Members of `component`, ascending.
    pub fn members(&self, component: u32) -> Vec<NodeId> {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == component)
            .map(|(u, _)| u as NodeId)
            .collect()
    }

    pub fn largest_members(&self) -> Vec<NodeId> {
        self.largest().map(|c| self.members(c)).unwrap_or_default()
    }
}

pub fn components(g: &Graph) -> ComponentLabeling {
    let n = g.node_count();
    let mut labels = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for root in 0..n {
        if labels[root] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        labels[root] = id;
        stack.push(root as NodeId);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &v in g.neighbors(u) {
                if labels[v as usize] == u32::MAX {
                    labels[v as usize] = id;
                    stack.push(v);
                }
            }
        }
        sizes.push(size);
    }
    let mut by_size: Vec<u32> = (0..sizes.len() as u32).collect();
    // Stable sort keeps discovery (= smallest member) order among equal sizes.
    by_size.sort_by(|&a, &b| sizes[b as usize].cmp(&sizes[a as usize]));
    ComponentLabeling {
        labels,
        sizes,
        by_size,
    }
}

/// Induced subgraph on the largest component, relabeled densely in ascending
/// original-id order. Also returns the original id of every kept node.
pub fn extract_lcc(g: &Graph) -> Result<(Graph, Vec<NodeId>)> {
    if g.node_count() == 0 {
        return Err(Error::param("graph has no nodes"));
    }
    let keep = components(g).largest_members();
    Ok((g.induced(&keep), keep))
}

//! Reference implementations used as test oracles. Written from the
//! definitions, sharing no code with the library.

#![allow(dead_code)]

use std::collections::VecDeque;

use lmk_core::Graph;

pub const INF: u32 = u32::MAX;

/// Adjacency lists rebuilt from the edge iterator.
pub fn adjacency(g: &Graph) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); g.node_count()];
    for (u, v) in g.edges() {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    adj
}

/// Textbook queue BFS.
pub fn bfs(adj: &[Vec<u32>], s: u32) -> Vec<u32> {
    let mut d = vec![INF; adj.len()];
    let mut q = VecDeque::new();
    d[s as usize] = 0;
    q.push_back(s);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u as usize] {
            if d[v as usize] == INF {
                d[v as usize] = d[u as usize] + 1;
                q.push_back(v);
            }
        }
    }
    d
}

pub fn all_pairs(adj: &[Vec<u32>]) -> Vec<Vec<u32>> {
    (0..adj.len() as u32).map(|s| bfs(adj, s)).collect()
}

/// Edge set as sorted `(min, max)` pairs.
pub fn edge_set(g: &Graph) -> Vec<(u32, u32)> {
    let mut e: Vec<_> = g.edges().collect();
    e.sort_unstable();
    e
}

//! Landmark embeddings and the distance bounds they support.

mod family;
mod io;

pub use family::LandmarkFamily;
pub use io::{read_embedding, write_embedding, AnyEmbedding, EMBEDDING_MAGIC, EMBEDDING_VERSION};

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{multi_source_bfs, Graph, NodeId, NO_SOURCE};
use crate::scalar::Distance;

/// Where an embedding's coordinates came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builder {
    /// Exact multi-source BFS.
    Bfs,
    /// Predicted by a learned model; only lower bounds are meaningful.
    Gnn,
}

impl Builder {
    pub fn tag(self) -> &'static str {
        match self {
            Builder::Bfs => "bfs",
            Builder::Gnn => "gnn",
        }
    }
}

impl std::str::FromStr for Builder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bfs" => Ok(Builder::Bfs),
            "gnn" => Ok(Builder::Gnn),
            _ => Err(Error::param(format!("unknown builder `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingHeader {
    pub n: usize,
    pub base: u32,
    pub max_exp: u32,
    pub rounds: u32,
    pub seed: u64,
    pub builder: Builder,
}

impl EmbeddingHeader {
    pub fn dims(&self) -> usize {
        self.rounds as usize * (self.max_exp as usize + 1)
    }
}

/// Lower bound and, when available, upper bound on a distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundPair<T> {
    pub lb: T,
    /// `None` when no coordinate pair shares a closest landmark.
    pub ub: Option<T>,
}

/// Per-node landmark coordinates, stored row-major (`n × D`).
///
/// `x[u][c]` is the distance from `u` to landmark set `c`; `sigma[u][c]` is
/// the global id of the member of set `c` closest to `u`. Learned
/// embeddings carry no `sigma`.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding<T> {
    header: EmbeddingHeader,
    x: Vec<T>,
    sigma: Option<Vec<NodeId>>,
}

impl<T: Distance> Embedding<T> {
    /// Assembles an embedding from raw rows, checking shapes against the
    /// header. BFS embeddings need `sigma`; learned ones must not have it.
    pub fn from_parts(
        header: EmbeddingHeader,
        x: Vec<T>,
        sigma: Option<Vec<NodeId>>,
    ) -> Result<Self> {
        let cells = header
            .n
            .checked_mul(header.dims())
            .ok_or_else(|| Error::param("embedding too large"))?;
        if x.len() != cells {
            return Err(Error::param(format!(
                "expected {cells} coordinates, got {}",
                x.len()
            )));
        }
        match (header.builder, &sigma) {
            (Builder::Bfs, Some(s)) if s.len() == cells => {}
            (Builder::Bfs, _) => {
                return Err(Error::param("bfs embedding needs an n × D sigma block"))
            }
            (Builder::Gnn, None) => {}
            (Builder::Gnn, Some(_)) => {
                return Err(Error::param("learned embedding cannot carry sigma"))
            }
        }
        Ok(Embedding { header, x, sigma })
    }

    pub fn header(&self) -> &EmbeddingHeader {
        &self.header
    }

    pub fn builder(&self) -> Builder {
        self.header.builder
    }

    pub fn node_count(&self) -> usize {
        self.header.n
    }

    pub fn dims(&self) -> usize {
        self.header.dims()
    }

    pub fn row(&self, u: NodeId) -> &[T] {
        let d = self.dims();
        &self.x[u as usize * d..(u as usize + 1) * d]
    }

    pub fn sigma_row(&self, u: NodeId) -> Option<&[NodeId]> {
        let d = self.dims();
        self.sigma
            .as_ref()
            .map(|s| &s[u as usize * d..(u as usize + 1) * d])
    }

    pub fn coordinates(&self) -> &[T] {
        &self.x
    }

    pub fn sigma(&self) -> Option<&[NodeId]> {
        self.sigma.as_deref()
    }

    /// `max_c |x[u][c] − x[v][c]|` over coordinates reached from both sides;
    /// zero when no such coordinate exists.
    ///
    /// Panics if `u` or `v` is out of range.
    pub fn lower_bound(&self, u: NodeId, v: NodeId) -> T {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .filter(|(a, b)| !a.is_unreached() && !b.is_unreached())
            .map(|(&a, &b)| a.abs_diff(b))
            .fold(T::zero(), |acc, g| if g > acc { g } else { acc })
    }

    /// Shortest route `x[u][i] + x[v][j]` through a landmark that is the
    /// closest member for `u` at `i` and for `v` at `j`.
    ///
    /// Coordinates are grouped by landmark first, so the cost is `O(D)`
    /// expected rather than `O(D²)`. Returns `Ok(None)` if the nodes share
    /// no closest landmark and an error for learned embeddings.
    ///
    /// Panics if `u` or `v` is out of range.
    pub fn upper_bound(&self, u: NodeId, v: NodeId) -> Result<Option<T>> {
        if self.builder() != Builder::Bfs {
            return Err(Error::Unsupported(
                "upper bounds are not computed on learned embeddings".into(),
            ));
        }
        let (su, sv) = (self.sigma_row(u).unwrap(), self.sigma_row(v).unwrap());
        let mut via: HashMap<NodeId, T> = HashMap::with_capacity(su.len());
        for (&l, &x) in su.iter().zip(self.row(u)) {
            if l == NO_SOURCE || x.is_unreached() {
                continue;
            }
            via.entry(l)
                .and_modify(|best| {
                    if x < *best {
                        *best = x
                    }
                })
                .or_insert(x);
        }
        let mut best: Option<T> = None;
        for (&l, &y) in sv.iter().zip(self.row(v)) {
            if l == NO_SOURCE || y.is_unreached() {
                continue;
            }
            if let Some(&x) = via.get(&l) {
                let route = x + y;
                if best.is_none_or(|b| route < b) {
                    best = Some(route);
                }
            }
        }
        Ok(best)
    }

    /// Range-checked lower and upper bound for one pair.
    pub fn query(&self, u: NodeId, v: NodeId) -> Result<BoundPair<T>> {
        self.check_query(u, v)?;
        Ok(BoundPair {
            lb: self.lower_bound(u, v),
            ub: self.upper_bound(u, v)?,
        })
    }

    /// Range-checked lower bound; valid for every builder.
    pub fn query_lower(&self, u: NodeId, v: NodeId) -> Result<T> {
        self.check_query(u, v)?;
        Ok(self.lower_bound(u, v))
    }

    fn check_query(&self, u: NodeId, v: NodeId) -> Result<()> {
        let n = self.node_count();
        if u as usize >= n || v as usize >= n {
            return Err(Error::param(format!(
                "query ({u}, {v}) out of range for {n} nodes"
            )));
        }
        if self.dims() == 0 {
            return Err(Error::param("embedding has no coordinates"));
        }
        Ok(())
    }

    /// Converts coordinates to another scalar type; fails if a value does
    /// not fit.
    pub fn cast<U: Distance>(&self) -> Result<Embedding<U>> {
        let x = self
            .x
            .iter()
            .map(|&v| {
                if v.is_unreached() {
                    Ok(U::UNREACHED)
                } else {
                    <U as num_traits::NumCast>::from(v)
                        .ok_or_else(|| Error::param(format!("coordinate {v} does not fit")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Embedding {
            header: self.header,
            x,
            sigma: self.sigma.clone(),
        })
    }

    /// Relabels the embedding as learned and drops `sigma`.
    pub fn into_learned(mut self) -> Self {
        self.header.builder = Builder::Gnn;
        self.sigma = None;
        self
    }
}

/// Runs one multi-source BFS per landmark set (in parallel) and collects the
/// coordinates.
pub fn build_embedding<T: Distance>(g: &Graph, fam: &LandmarkFamily) -> Result<Embedding<T>> {
    let n = g.node_count();
    if fam.node_count() != n {
        return Err(Error::param(format!(
            "family sampled for {} nodes, graph has {n}",
            fam.node_count()
        )));
    }
    let dims = fam.dims();
    let columns = (0..dims)
        .into_par_iter()
        .map(|c| multi_source_bfs(g, &fam.distinct_set(c)))
        .collect::<Result<Vec<_>>>()?;

    let mut x = vec![T::UNREACHED; n * dims];
    let mut sigma = vec![NO_SOURCE; n * dims];
    for (c, (dist, closest)) in columns.iter().enumerate() {
        for u in 0..n {
            x[u * dims + c] = T::from_hops(dist[u]);
            sigma[u * dims + c] = closest[u];
        }
    }
    let header = EmbeddingHeader {
        n,
        base: fam.base(),
        max_exp: fam.max_exp(),
        rounds: fam.rounds(),
        seed: fam.seed(),
        builder: Builder::Bfs,
    };
    Embedding::from_parts(header, x, Some(sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{bfs, er_generate};
    use crate::scalar::UNREACHED;

    fn path_embedding() -> Embedding<u32> {
        let fam = LandmarkFamily::from_sets(4, 2, 1, 0, vec![vec![0], vec![0, 3]]).unwrap();
        build_embedding(&path(4), &fam).unwrap()
    }

    fn two_coordinate(xu: [u32; 2], xv: [u32; 2], su: [u32; 2], sv: [u32; 2]) -> Embedding<u32> {
        let header = EmbeddingHeader {
            n: 2,
            base: 2,
            max_exp: 1,
            rounds: 1,
            seed: 0,
            builder: Builder::Bfs,
        };
        let x = [xu, xv].concat();
        let sigma = [su, sv].concat();
        Embedding::from_parts(header, x, Some(sigma)).unwrap()
    }

    #[test]
    fn path_coordinates() {
        let emb = path_embedding();
        assert_eq!(emb.coordinates(), &[0, 0, 1, 1, 2, 1, 3, 0]);
        assert_eq!(emb.sigma().unwrap(), &[0, 0, 0, 0, 0, 3, 0, 3]);
    }

    #[test]
    fn path_query() {
        let q = path_embedding().query(1, 2).unwrap();
        assert_eq!(q, BoundPair { lb: 1, ub: Some(3) });
    }

    #[test]
    fn bound_definitions() {
        let emb = two_coordinate([2, 5], [4, 1], [7, 3], [7, 9]);
        assert_eq!(emb.lower_bound(0, 1), 4);
        assert_eq!(emb.upper_bound(0, 1).unwrap(), Some(6));
        assert_eq!(emb.lower_bound(1, 0), 4);
        assert_eq!(emb.upper_bound(1, 0).unwrap(), Some(6));
    }

    #[test]
    fn no_shared_landmark_means_no_upper_bound() {
        let emb = two_coordinate([2, 5], [4, 1], [7, 3], [8, 9]);
        assert_eq!(emb.upper_bound(0, 1).unwrap(), None);
    }

    #[test]
    fn unreached_coordinates_are_skipped() {
        let emb = two_coordinate([UNREACHED, 5], [4, 1], [NO_SOURCE, 3], [7, 3]);
        assert_eq!(emb.lower_bound(0, 1), 4);
        assert_eq!(emb.upper_bound(0, 1).unwrap(), Some(6));
        let all = two_coordinate([UNREACHED; 2], [4, 1], [NO_SOURCE; 2], [7, 3]);
        assert_eq!(all.lower_bound(0, 1), 0);
        assert_eq!(all.upper_bound(0, 1).unwrap(), None);
    }

    #[test]
    fn self_query_is_zero() {
        let emb = path_embedding();
        for u in 0..4 {
            assert_eq!(emb.lower_bound(u, u), 0);
        }
    }

    #[test]
    fn landmark_endpoint_gives_exact_upper_bound() {
        let g = er_generate(80, 4.0, 2).unwrap();
        let (g, _) = crate::graph::extract_lcc(&g).unwrap();
        let n = g.node_count();
        let fam = LandmarkFamily::from_sets(n, 2, 0, 0, vec![vec![5]]).unwrap();
        let emb: Embedding<u32> = build_embedding(&g, &fam).unwrap();
        let d = bfs(&g, 5).unwrap();
        for v in 0..n as NodeId {
            assert_eq!(emb.upper_bound(5, v).unwrap(), Some(d[v as usize]));
        }
    }

    #[test]
    fn node_in_every_set_has_zero_row() {
        let fam =
            LandmarkFamily::from_sets(6, 2, 1, 0, vec![vec![2], vec![2, 4], vec![2], vec![0, 2]])
                .unwrap();
        let emb: Embedding<u64> = build_embedding(&path(6), &fam).unwrap();
        assert!(emb.row(2).iter().all(|&x| x == 0));
        assert!(emb.sigma_row(2).unwrap().iter().all(|&s| s == 2));
    }

    #[test]
    fn learned_embeddings_refuse_upper_bounds() {
        let emb = path_embedding().cast::<f64>().unwrap().into_learned();
        assert_eq!(emb.query_lower(1, 2).unwrap(), 1.0);
        assert!(matches!(emb.upper_bound(1, 2), Err(Error::Unsupported(_))));
        assert!(matches!(emb.query(1, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn query_errors() {
        let emb = path_embedding();
        assert!(matches!(emb.query(0, 4), Err(Error::Param(_))));
        let fam = LandmarkFamily::from_sets(4, 2, 0, 0, vec![]).unwrap();
        let empty: Embedding<u32> = build_embedding(&path(4), &fam).unwrap();
        assert!(matches!(empty.query(0, 1), Err(Error::Param(_))));
    }

    #[test]
    fn family_must_match_graph() {
        let fam = LandmarkFamily::sample(5, 2, 1, 1, 0).unwrap();
        assert!(build_embedding::<u32>(&path(4), &fam).is_err());
    }

    #[test]
    fn shape_checks() {
        let header = EmbeddingHeader {
            n: 2,
            base: 2,
            max_exp: 0,
            rounds: 1,
            seed: 0,
            builder: Builder::Bfs,
        };
        assert!(Embedding::<u32>::from_parts(header, vec![0, 1], None).is_err());
        assert!(Embedding::<u32>::from_parts(header, vec![0], Some(vec![0])).is_err());
        let learned = EmbeddingHeader {
            builder: Builder::Gnn,
            ..header
        };
        assert!(Embedding::<f64>::from_parts(learned, vec![0.0, 1.0], Some(vec![0, 0])).is_err());
        assert!(Embedding::<f64>::from_parts(learned, vec![0.0, 1.0], None).is_ok());
    }
}

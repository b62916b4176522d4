//! Landmark embeddings for approximate shortest-path distances.
//!
//! A landmark family is a collection of randomly sampled node sets. Every node
//! stores its hop distance to each set and which member of the set is
//! closest. Two rows of that table give a lower bound (the largest coordinate
//! gap) and an upper bound (the shortest route through a shared closest
//! landmark) on the true distance between the two nodes.
//!
//! The crate also carries the tooling used to study these bounds on
//! Erdős–Rényi graphs: a generator, shell and branching-process validators,
//! theorem parameter calculators, and a reproducible benchmark harness.

// Range checks are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod lab;
pub mod scalar;
pub mod seed;

pub use embedding::{build_embedding, AnyEmbedding, BoundPair, Builder, Embedding, LandmarkFamily};
pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use scalar::{Distance, Hops, UNREACHED};

/// Embedding with integer hop-count coordinates, as built by BFS.
pub type HopEmbedding = Embedding<Hops>;
/// Embedding with real-valued coordinates, as exported by a learned model.
pub type RealEmbedding = Embedding<f64>;
/// Compact real-valued embedding.
pub type RealEmbedding32 = Embedding<f32>;

//! Grouping of closely related tool instances in dataflow workflows.
//!
//! A workflow of connected tool instances becomes a weighted directed graph
//! (one vertex per instance, edge weights encoding semantic closeness);
//! graph clustering then recovers groups of instances that collaborate on
//! one computational goal - typically a major tool with its helpers. The
//! pipeline is assembled from interchangeable parts:
//!
//! - a weighting function (data-driven, its reciprocal, or unit weights),
//! - an optional symmetrization (naive or bibliometric) for the undirected
//!   algorithms,
//! - a clustering algorithm (edge betweenness, agglomerative, or spectral
//!   bisection), and
//! - a stopping criterion: a metric in [0, 1] with a cutoff; clusters
//!   scoring below the cutoff are clustered again.
//!
//! Core math is generic over the scalar type; the [`Weight`] alias and the
//! concrete type aliases below fix `f64` for ordinary use.

pub mod agglomerative;
pub mod betweenness;
pub mod eigen;
pub mod graph;
pub mod matrix;
pub mod metrics;
pub mod paths;
pub mod pipeline;
mod scalar;
pub mod spectral;
pub mod symmetrize;
pub mod synth;
pub mod weights;
pub mod workflow;

pub use scalar::{approx_eq, Scalar};

/// Scalar type used by the concrete aliases and the CLI.
pub type Weight = f64;

/// [`graph::WeightedDigraph`] over [`Weight`].
pub type Digraph = graph::WeightedDigraph<Weight>;

/// [`graph::Clustering`] over [`Weight`].
pub type Partition = graph::Clustering<Weight>;

/// [`metrics::Cutoff`] over [`Weight`].
pub type CutoffValue = metrics::Cutoff<Weight>;

/// [`pipeline::ClusterConfig`] over [`Weight`].
pub type Config = pipeline::ClusterConfig<Weight>;

/// [`pipeline::ClusterReport`] over [`Weight`].
pub type Report = pipeline::ClusterReport<Weight>;

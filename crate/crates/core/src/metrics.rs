//! Stopping-criterion metrics, each mapping a graph to a score in [0, 1].
//!
//! All metrics work on the undirected simple view of their input: a vertex
//! pair {u, v} is linked iff an edge exists in either direction, and its
//! pair weight is `w0(u, v) + w0(v, u)` where weights matter. This keeps a
//! single metric implementation valid for every algorithm path.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Clustering, WeightedDigraph};
use crate::scalar::Scalar;

/// The four stopping-criterion metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MetricKind {
    #[serde(rename = "density")]
    ClusterDensity,
    #[serde(rename = "global-cc")]
    GlobalClusteringCoefficient,
    #[serde(rename = "local-cc")]
    LocalClusteringCoefficient,
    #[serde(rename = "modularity")]
    Modularity,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::ClusterDensity,
        MetricKind::GlobalClusteringCoefficient,
        MetricKind::LocalClusteringCoefficient,
        MetricKind::Modularity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricKind::ClusterDensity => "density",
            MetricKind::GlobalClusteringCoefficient => "global-cc",
            MetricKind::LocalClusteringCoefficient => "local-cc",
            MetricKind::Modularity => "modularity",
        }
    }
}

/// Metric cutoff in [0, 1]. Clusters scoring below it are re-clustered.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cutoff<T>(T);

impl<T: Scalar> Cutoff<T> {
    pub fn new(value: T) -> Result<Self, MetricError> {
        if value >= T::zero() && value <= T::one() {
            Ok(Cutoff(value))
        } else {
            Err(MetricError::CutoffOutOfRange(format!("{value}")))
        }
    }

    pub fn value(self) -> T {
        self.0
    }
}

#[derive(Debug, Error)]
pub enum MetricError {
    #[error("cutoff {0} is outside [0, 1]")]
    CutoffOutOfRange(String),
    #[error("invalid clustering: {0}")]
    InvalidClustering(String),
    #[error("cluster vertex `{0}` is not part of the parent graph")]
    UnknownVertex(String),
}

/// Fraction of linked vertex pairs among all pairs. Graphs with fewer than
/// two vertices score 1: they are vacuously cohesive and must never trigger
/// further splitting.
pub fn cluster_density<T: Scalar>(graph: &WeightedDigraph<T>) -> T {
    let n = graph.vertex_count();
    if n <= 1 {
        return T::one();
    }
    let mut linked = 0usize;
    for u in 0..n {
        for v in (u + 1)..n {
            if graph.linked(u, v) {
                linked += 1;
            }
        }
    }
    let pairs = n * (n - 1) / 2;
    T::from_usize(linked).unwrap() / T::from_usize(pairs).unwrap()
}

/// Transitivity: three times the triangle count over the connected-triple
/// count, 0 when no connected triples exist.
pub fn global_clustering_coefficient<T: Scalar>(graph: &WeightedDigraph<T>) -> T {
    let neighbors = graph.undirected_neighbors();
    let mut closed = 0usize;
    let mut triples = 0usize;
    for center in neighbors.iter() {
        let around: Vec<usize> = center.iter().copied().collect();
        let k = around.len();
        if k < 2 {
            continue;
        }
        triples += k * (k - 1) / 2;
        for (i, &a) in around.iter().enumerate() {
            for &b in &around[(i + 1)..] {
                if neighbors[a].contains(&b) {
                    closed += 1;
                }
            }
        }
    }
    if triples == 0 {
        return T::zero();
    }
    T::from_usize(closed).unwrap() / T::from_usize(triples).unwrap()
}

/// Average over all vertices of the per-vertex clustering coefficient, with
/// degree-below-two vertices contributing 0. Returns 0 for the empty graph.
pub fn local_clustering_coefficient<T: Scalar>(graph: &WeightedDigraph<T>) -> T {
    let n = graph.vertex_count();
    if n == 0 {
        return T::zero();
    }
    let neighbors = graph.undirected_neighbors();
    let mut total = T::zero();
    for center in neighbors.iter() {
        let around: Vec<usize> = center.iter().copied().collect();
        let k = around.len();
        if k < 2 {
            continue;
        }
        let mut links = 0usize;
        for (i, &a) in around.iter().enumerate() {
            for &b in &around[(i + 1)..] {
                if neighbors[a].contains(&b) {
                    links += 1;
                }
            }
        }
        total += T::from_usize(links).unwrap() / T::from_usize(k * (k - 1) / 2).unwrap();
    }
    total / T::from_usize(n).unwrap()
}

// Per-cluster modularity terms of a parent graph: total undirected weight W,
// and for a vertex subset its intra weight and weighted degree sum.
struct ModularityContext<T> {
    total_weight: T,
    pair_adjacency: Vec<Vec<(usize, T)>>,
    weighted_degree: Vec<T>,
}

impl<T: Scalar> ModularityContext<T> {
    fn new(parent: &WeightedDigraph<T>) -> Self {
        let pair_adjacency = parent.undirected_adjacency();
        let weighted_degree: Vec<T> = pair_adjacency
            .iter()
            .map(|partners| partners.iter().map(|&(_, w)| w).sum())
            .collect();
        let total_weight = weighted_degree.iter().copied().sum::<T>() / T::two();
        ModularityContext { total_weight, pair_adjacency, weighted_degree }
    }

    /// Q addend of one cluster, given as parent vertex indices:
    /// `W_in/W - (W_deg/(2W))^2`. Zero when the parent has no edges.
    fn addend(&self, members: &BTreeSet<usize>) -> T {
        if self.total_weight <= T::zero() {
            return T::zero();
        }
        let mut intra = T::zero();
        let mut degree = T::zero();
        for &u in members {
            degree += self.weighted_degree[u];
            for &(v, w) in &self.pair_adjacency[u] {
                if v > u && members.contains(&v) {
                    intra += w;
                }
            }
        }
        let half_degree_fraction = degree / (T::two() * self.total_weight);
        intra / self.total_weight - half_degree_fraction * half_degree_fraction
    }
}

/// Reusable metric evaluation against one fixed parent graph. For
/// modularity the parent's weight context is computed once and shared by
/// every score query, which matters when a caller gates thousands of
/// candidate clusters against the same parent.
pub struct MetricEvaluator<'a, T> {
    kind: MetricKind,
    parent: &'a WeightedDigraph<T>,
    modularity_context: Option<ModularityContext<T>>,
}

impl<'a, T: Scalar> MetricEvaluator<'a, T> {
    pub fn new(kind: MetricKind, parent: &'a WeightedDigraph<T>) -> Self {
        let modularity_context = match kind {
            MetricKind::Modularity => Some(ModularityContext::new(parent)),
            _ => None,
        };
        MetricEvaluator { kind, parent, modularity_context }
    }

    /// Score for the cluster given as a set of parent vertex indices.
    /// Indices must be in range.
    pub fn evaluate_members(&self, members: &BTreeSet<usize>) -> T {
        match (&self.modularity_context, self.kind) {
            (Some(context), _) => context.addend(members).max(T::zero()),
            (None, _) if members.len() <= 1 => T::one(),
            (None, MetricKind::ClusterDensity) => {
                cluster_density(&self.parent.induced_by_indices(members))
            }
            (None, MetricKind::GlobalClusteringCoefficient) => {
                global_clustering_coefficient(&self.parent.induced_by_indices(members))
            }
            (None, MetricKind::LocalClusteringCoefficient) => {
                local_clustering_coefficient(&self.parent.induced_by_indices(members))
            }
            (None, MetricKind::Modularity) => unreachable!("context built in new"),
        }
    }
}

fn cluster_member_indices<T: Scalar>(
    parent: &WeightedDigraph<T>,
    cluster: &WeightedDigraph<T>,
) -> Result<BTreeSet<usize>, MetricError> {
    cluster
        .ids()
        .iter()
        .map(|id| parent.index_of(id).ok_or_else(|| MetricError::UnknownVertex(id.clone())))
        .collect()
}

/// Weighted Newman modularity of a clustering before clamping. May be
/// negative; upper-bounded by 1.
pub fn modularity_q<T: Scalar>(
    parent: &WeightedDigraph<T>,
    clustering: &Clustering<T>,
) -> Result<T, MetricError> {
    clustering.check_partition_of(parent).map_err(MetricError::InvalidClustering)?;
    let context = ModularityContext::new(parent);
    let mut q = T::zero();
    for cluster in clustering.iter() {
        let members = cluster_member_indices(parent, cluster)?;
        q += context.addend(&members);
    }
    Ok(q)
}

/// Modularity score in [0, 1]: weighted Newman Q with negative values
/// clamped to 0. A negative Q means worse than random, which for a stopping
/// criterion is equivalent to "keep splitting".
pub fn modularity<T: Scalar>(
    parent: &WeightedDigraph<T>,
    clustering: &Clustering<T>,
) -> Result<T, MetricError> {
    Ok(modularity_q(parent, clustering)?.max(T::zero()))
}

/// Modularity addend of a single cluster within `parent`, clamped to 0.
pub fn modularity_addend<T: Scalar>(
    parent: &WeightedDigraph<T>,
    cluster: &WeightedDigraph<T>,
) -> Result<T, MetricError> {
    let members = cluster_member_indices(parent, cluster)?;
    Ok(ModularityContext::new(parent).addend(&members).max(T::zero()))
}

/// Evaluate one metric for a cluster. Density and both clustering
/// coefficients use only the cluster; modularity scores the cluster's
/// addend within `parent`. Clusters with fewer than two vertices score 1
/// under the cluster-local metrics.
pub fn evaluate<T: Scalar>(
    kind: MetricKind,
    parent: &WeightedDigraph<T>,
    cluster: &WeightedDigraph<T>,
) -> Result<T, MetricError> {
    match kind {
        MetricKind::ClusterDensity | MetricKind::GlobalClusteringCoefficient
        | MetricKind::LocalClusteringCoefficient
            if cluster.vertex_count() <= 1 =>
        {
            Ok(T::one())
        }
        MetricKind::ClusterDensity => Ok(cluster_density(cluster)),
        MetricKind::GlobalClusteringCoefficient => Ok(global_clustering_coefficient(cluster)),
        MetricKind::LocalClusteringCoefficient => Ok(local_clustering_coefficient(cluster)),
        MetricKind::Modularity => modularity_addend(parent, cluster),
    }
}

//! The iterative, metric-gated clustering pipeline and the configuration
//! grid.
//!
//! A run builds the workflow's associated graph under the configured
//! weighting, optionally symmetrizes it, and then applies the clustering
//! algorithm. Betweenness and spectral bisection run under a recursive
//! driver: each cluster scoring below the cutoff is clustered again, until
//! every cluster satisfies the metric, is a singleton, or stops making
//! progress. Agglomerative clustering is bottom-up and runs once with the
//! metric embedded as a merge gate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agglomerative::agglomerative_cluster;
use crate::betweenness::edge_betweenness_step;
use crate::graph::{Clustering, WeightedDigraph};
use crate::metrics::{evaluate, Cutoff, MetricError, MetricKind};
use crate::paths::PathMode;
use crate::scalar::Scalar;
use crate::spectral::spectral_bisection_step;
use crate::symmetrize::{bibliometric_symmetrize, naive_symmetrize};
use crate::weights::{build_graph, WeightingKind};
use crate::workflow::Workflow;

/// The three clustering algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgorithmKind {
    #[serde(rename = "betweenness")]
    EdgeBetweenness,
    #[serde(rename = "agglomerative")]
    Agglomerative,
    #[serde(rename = "spectral")]
    SpectralBisection,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 3] = [
        AlgorithmKind::EdgeBetweenness,
        AlgorithmKind::Agglomerative,
        AlgorithmKind::SpectralBisection,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmKind::EdgeBetweenness => "betweenness",
            AlgorithmKind::Agglomerative => "agglomerative",
            AlgorithmKind::SpectralBisection => "spectral",
        }
    }
}

/// How the directed associated graph becomes undirected, if at all. `None`
/// is only valid with edge betweenness, the sole directed-capable
/// algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetrizationKind {
    #[serde(rename = "none")]
    None,
    #[serde(rename = "naive")]
    Naive,
    #[serde(rename = "bibliometric")]
    Bibliometric,
}

impl SymmetrizationKind {
    pub const ALL: [SymmetrizationKind; 3] =
        [SymmetrizationKind::None, SymmetrizationKind::Naive, SymmetrizationKind::Bibliometric];

    pub fn as_str(self) -> &'static str {
        match self {
            SymmetrizationKind::None => "none",
            SymmetrizationKind::Naive => "naive",
            SymmetrizationKind::Bibliometric => "bibliometric",
        }
    }
}

/// One point of the instantiation grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterConfig<T> {
    pub weighting: WeightingKind,
    pub symmetrization: SymmetrizationKind,
    pub algorithm: AlgorithmKind,
    pub metric: MetricKind,
    pub cutoff: Cutoff<T>,
}

impl<T: Scalar> ClusterConfig<T> {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.symmetrization == SymmetrizationKind::None
            && self.algorithm != AlgorithmKind::EdgeBetweenness
        {
            return Err(PipelineError::IncompatibleConfig {
                algorithm: self.algorithm,
                symmetrization: self.symmetrization,
            });
        }
        Ok(())
    }

    /// Compact `weighting/symmetrization/algorithm/metric/cutoff` label.
    pub fn fingerprint(&self) -> String {
        format!(
            "{}/{}/{}/{}/{}",
            self.weighting.as_str(),
            self.symmetrization.as_str(),
            self.algorithm.as_str(),
            self.metric.as_str(),
            self.cutoff.value()
        )
    }
}

/// Knobs that are not part of the instantiation grid.
#[derive(Debug, Clone, Copy, Default)]
pub struct PipelineOptions {
    pub path_mode: PathMode,
}

/// Why a cluster was finalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    #[serde(rename = "metricSatisfied")]
    MetricSatisfied,
    #[serde(rename = "singleton")]
    Singleton,
    #[serde(rename = "noProgress")]
    NoProgress,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::MetricSatisfied => "metricSatisfied",
            Termination::Singleton => "singleton",
            Termination::NoProgress => "noProgress",
        }
    }
}

/// One finalized group of instance ids.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportedCluster<T> {
    /// Member instance ids in workflow declaration order.
    pub members: Vec<String>,
    /// Metric score at finalization.
    pub score: T,
    pub termination: Termination,
}

/// Result of one pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReport<T> {
    pub config: ClusterConfig<T>,
    /// Number of clustering-algorithm applications.
    pub iterations: usize,
    pub clusters: Vec<ReportedCluster<T>>,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("symmetrization `{}` is incompatible with algorithm `{}`",
        symmetrization.as_str(), algorithm.as_str())]
    IncompatibleConfig { algorithm: AlgorithmKind, symmetrization: SymmetrizationKind },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("internal pipeline error: {0}")]
    Internal(String),
}

struct Driver<T> {
    algorithm: AlgorithmKind,
    metric: MetricKind,
    cutoff: Cutoff<T>,
    mode: PathMode,
    root_size: usize,
    iterations: usize,
    finals: Vec<(WeightedDigraph<T>, T, Termination)>,
}

impl<T: Scalar> Driver<T> {
    fn step(&mut self, graph: &WeightedDigraph<T>) -> Result<Clustering<T>, PipelineError> {
        self.iterations += 1;
        match self.algorithm {
            AlgorithmKind::EdgeBetweenness => Ok(edge_betweenness_step(graph, self.mode)),
            AlgorithmKind::SpectralBisection => spectral_bisection_step(graph)
                .map_err(|e| PipelineError::Internal(e.to_string())),
            AlgorithmKind::Agglomerative => {
                Err(PipelineError::Internal("agglomerative has no recursive step".into()))
            }
        }
    }

    fn drive(&mut self, graph: WeightedDigraph<T>, depth: usize) -> Result<(), PipelineError> {
        if depth > self.root_size {
            return Err(PipelineError::Internal(format!(
                "recursion depth {depth} exceeded vertex count {}",
                self.root_size
            )));
        }
        if graph.vertex_count() <= 1 {
            let score = evaluate(self.metric, &graph, &graph)?;
            self.finals.push((graph, score, Termination::Singleton));
            return Ok(());
        }

        let clustering = self.step(&graph)?;
        if clustering.len() == 1
            && clustering.clusters[0].vertex_count() == graph.vertex_count()
        {
            let score = evaluate(self.metric, &graph, &graph)?;
            self.finals.push((graph, score, Termination::NoProgress));
            return Ok(());
        }

        for cluster in clustering.clusters {
            let score = evaluate(self.metric, &graph, &cluster)?;
            if cluster.vertex_count() <= 1 {
                self.finals.push((cluster, score, Termination::Singleton));
            } else if score >= self.cutoff.value() {
                self.finals.push((cluster, score, Termination::MetricSatisfied));
            } else {
                self.drive(cluster, depth + 1)?;
            }
        }
        Ok(())
    }
}

/// Run one configuration against a workflow.
pub fn run_pipeline<T: Scalar>(
    workflow: &Workflow,
    config: &ClusterConfig<T>,
) -> Result<ClusterReport<T>, PipelineError> {
    run_pipeline_with(workflow, config, &PipelineOptions::default())
}

/// [`run_pipeline`] with explicit path-length options.
pub fn run_pipeline_with<T: Scalar>(
    workflow: &Workflow,
    config: &ClusterConfig<T>,
    options: &PipelineOptions,
) -> Result<ClusterReport<T>, PipelineError> {
    config.validate()?;

    let base: WeightedDigraph<T> = build_graph(workflow, config.weighting);
    let prepared = match config.symmetrization {
        SymmetrizationKind::None => base,
        SymmetrizationKind::Naive => naive_symmetrize(&base),
        SymmetrizationKind::Bibliometric => bibliometric_symmetrize(&base),
    };

    let (finals, iterations) = match config.algorithm {
        AlgorithmKind::Agglomerative => {
            let clustering =
                agglomerative_cluster(&prepared, config.metric, config.cutoff, options.path_mode)?;
            let mut finals = Vec::with_capacity(clustering.len());
            for cluster in clustering.clusters {
                let score = evaluate(config.metric, &prepared, &cluster)?;
                let termination = if cluster.vertex_count() <= 1 {
                    Termination::Singleton
                } else if score >= config.cutoff.value() {
                    Termination::MetricSatisfied
                } else {
                    Termination::NoProgress
                };
                finals.push((cluster, score, termination));
            }
            (finals, 1)
        }
        _ => {
            let mut driver = Driver {
                algorithm: config.algorithm,
                metric: config.metric,
                cutoff: config.cutoff,
                mode: options.path_mode,
                root_size: prepared.vertex_count(),
                iterations: 0,
                finals: Vec::new(),
            };
            if prepared.vertex_count() > 0 {
                driver.drive(prepared.clone(), 0)?;
            }
            (driver.finals, driver.iterations)
        }
    };

    // Workflow declaration order both across clusters and within members.
    let position = |id: &str| prepared.index_of(id).expect("cluster ids come from the graph");
    let mut clusters: Vec<ReportedCluster<T>> = finals
        .into_iter()
        .map(|(graph, score, termination)| ReportedCluster {
            members: graph.ids().to_vec(),
            score,
            termination,
        })
        .collect();
    clusters.sort_by_key(|cluster| position(&cluster.members[0]));

    Ok(ClusterReport { config: *config, iterations, clusters })
}

/// Outcome of one grid entry; failures are recorded, not fatal.
pub struct SweepOutcome<T> {
    pub config: ClusterConfig<T>,
    pub result: Result<ClusterReport<T>, PipelineError>,
}

/// Run a list of configurations in order.
pub fn grid_sweep<T: Scalar>(
    workflow: &Workflow,
    configs: &[ClusterConfig<T>],
    options: &PipelineOptions,
) -> Vec<SweepOutcome<T>> {
    configs
        .iter()
        .map(|config| SweepOutcome {
            config: *config,
            result: run_pipeline_with(workflow, config, options),
        })
        .collect()
}

/// Cutoff values evaluated by the default grid.
pub const DEFAULT_CUTOFFS: [f64; 4] = [0.2, 0.4, 0.6, 0.8];

/// The full instantiation grid: every compatible combination of weighting,
/// symmetrization, algorithm, and metric, crossed with the default cutoffs.
pub fn default_grid<T: Scalar>() -> Vec<ClusterConfig<T>> {
    let mut grid = Vec::new();
    for weighting in WeightingKind::ALL {
        for symmetrization in SymmetrizationKind::ALL {
            for algorithm in AlgorithmKind::ALL {
                if symmetrization == SymmetrizationKind::None
                    && algorithm != AlgorithmKind::EdgeBetweenness
                {
                    continue;
                }
                for metric in MetricKind::ALL {
                    for cutoff in DEFAULT_CUTOFFS {
                        grid.push(ClusterConfig {
                            weighting,
                            symmetrization,
                            algorithm,
                            metric,
                            cutoff: Cutoff::new(T::from_f64(cutoff).unwrap())
                                .expect("default cutoffs are in range"),
                        });
                    }
                }
            }
        }
    }
    grid
}

//! JSON documents and the sweep summary table.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use flowgroup::pipeline::{PipelineError, Termination};
use flowgroup::{Config, Digraph, Report};

#[derive(Serialize, Deserialize)]
pub struct ConfigDoc {
    weighting: String,
    symmetrization: String,
    algorithm: String,
    metric: String,
    cutoff: f64,
    #[serde(rename = "hopPaths")]
    hop_paths: bool,
}

impl ConfigDoc {
    fn new(config: &Config, hop_paths: bool) -> Self {
        ConfigDoc {
            weighting: config.weighting.as_str().to_string(),
            symmetrization: config.symmetrization.as_str().to_string(),
            algorithm: config.algorithm.as_str().to_string(),
            metric: config.metric.as_str().to_string(),
            cutoff: config.cutoff.value(),
            hop_paths,
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct ClusterDoc {
    id: usize,
    instances: Vec<String>,
    #[serde(rename = "metricScore")]
    metric_score: f64,
    termination: Termination,
}

#[derive(Serialize, Deserialize)]
pub struct ReportDoc {
    config: ConfigDoc,
    iterations: usize,
    clusters: Vec<ClusterDoc>,
}

impl ReportDoc {
    fn new(report: &Report, hop_paths: bool) -> Self {
        ReportDoc {
            config: ConfigDoc::new(&report.config, hop_paths),
            iterations: report.iterations,
            clusters: report
                .clusters
                .iter()
                .enumerate()
                .map(|(id, cluster)| ClusterDoc {
                    id,
                    instances: cluster.members.clone(),
                    metric_score: cluster.score,
                    termination: cluster.termination,
                })
                .collect(),
        }
    }
}

/// Pretty-print any document the way every emitter here does: two-space
/// indentation and a trailing newline.
pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable document");
    text.push('\n');
    text
}

/// Report JSON per the documented schema.
pub fn report_json(report: &Report, hop_paths: bool) -> String {
    to_pretty_json(&ReportDoc::new(report, hop_paths))
}

pub struct SweepRow {
    pub config: Config,
    pub result: Result<Report, PipelineError>,
    pub elapsed: Duration,
}

/// Human-readable sweep summary, one row per configuration with wall time.
pub fn sweep_table(rows: &[SweepRow]) -> String {
    let mut width = "config".len();
    for row in rows {
        width = width.max(row.config.fingerprint().len());
    }
    let mut out = String::new();
    out.push_str(&format!(
        "{:<width$}  {:>8}  {:>10}  {:>9}\n",
        "config", "clusters", "meanScore", "ms"
    ));
    for row in rows {
        match &row.result {
            Ok(report) => {
                let mean = if report.clusters.is_empty() {
                    0.0
                } else {
                    report.clusters.iter().map(|c| c.score).sum::<f64>()
                        / report.clusters.len() as f64
                };
                out.push_str(&format!(
                    "{:<width$}  {:>8}  {:>10.4}  {:>9.3}\n",
                    row.config.fingerprint(),
                    report.clusters.len(),
                    mean,
                    row.elapsed.as_secs_f64() * 1e3
                ));
            }
            Err(error) => {
                out.push_str(&format!(
                    "{:<width$}  failed: {error}\n",
                    row.config.fingerprint()
                ));
            }
        }
    }
    out
}

#[derive(Serialize)]
#[serde(untagged)]
enum SweepEntryDoc {
    Ok(ReportDoc),
    Failed { config: ConfigDoc, error: String },
}

/// Machine-readable sweep output. Deliberately timing-free so identical
/// inputs re-serialize byte-identically.
pub fn sweep_json(rows: &[SweepRow], hop_paths: bool) -> String {
    let entries: Vec<SweepEntryDoc> = rows
        .iter()
        .map(|row| match &row.result {
            Ok(report) => SweepEntryDoc::Ok(ReportDoc::new(report, hop_paths)),
            Err(error) => SweepEntryDoc::Failed {
                config: ConfigDoc::new(&row.config, hop_paths),
                error: error.to_string(),
            },
        })
        .collect();
    to_pretty_json(&entries)
}

#[derive(Serialize)]
struct EdgeDoc<'a> {
    source: &'a str,
    target: &'a str,
    weight: f64,
}

#[derive(Serialize)]
struct GraphDoc<'a> {
    vertices: &'a [String],
    edges: Vec<EdgeDoc<'a>>,
}

/// Associated-graph JSON: vertex list plus weighted directed edges.
pub fn graph_json(graph: &Digraph) -> String {
    to_pretty_json(&GraphDoc {
        vertices: graph.ids(),
        edges: graph
            .edges()
            .map(|(u, v, w)| EdgeDoc { source: graph.id(u), target: graph.id(v), weight: w })
            .collect(),
    })
}

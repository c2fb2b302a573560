//! Bottom-up agglomerative clustering with the stopping metric embedded as
//! a merge gate.
//!
//! Cluster distance is the mean shortest-path length over all cross-cluster
//! vertex pairs, with path lengths taken on the full input graph (edge
//! length = 1/weight by default). Unreachable pairs make a cluster pair
//! unmergeable. Merges happen closest-first; a merge is rejected when the
//! merged induced subgraph would score below the cutoff, and the run
//! terminates when no admissible merge remains.

use std::collections::{BTreeSet, HashSet};

use crate::graph::{Clustering, WeightedDigraph};
use crate::metrics::{Cutoff, MetricError, MetricEvaluator, MetricKind};
use crate::paths::{all_pairs_lengths, PathMode};
use crate::scalar::{approx_eq, Scalar};

struct ClusterState {
    uid: u64,
    members: BTreeSet<usize>,
    // Lexicographically smallest member id; tie-break key for merges.
    min_id: String,
}

/// Run the gated agglomerative clustering on an undirected graph.
pub fn agglomerative_cluster<T: Scalar>(
    graph: &WeightedDigraph<T>,
    metric: MetricKind,
    cutoff: Cutoff<T>,
    mode: PathMode,
) -> Result<Clustering<T>, MetricError> {
    let n = graph.vertex_count();
    let lengths = all_pairs_lengths(graph, mode);
    let tol = T::weight_tolerance();
    let evaluator = MetricEvaluator::new(metric, graph);

    let mut next_uid: u64 = n as u64;
    let mut clusters: Vec<ClusterState> = (0..n)
        .map(|v| ClusterState {
            uid: v as u64,
            members: BTreeSet::from([v]),
            min_id: graph.id(v).to_string(),
        })
        .collect();

    // distance[i][j] between cluster slots; slots never shrink, dead slots
    // are skipped via `alive`.
    let mut distance: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| lengths[i][j].min(lengths[j][i])).collect())
        .collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut rejected: HashSet<(u64, u64)> = HashSet::new();

    loop {
        // Distances are fixed between merges, so collect the round's viable
        // pairs once, sorted closest-first, and walk that order. A pair
        // rejected by the metric gate keeps the same union (hence the same
        // score) until one of its sides merges, so it is memoized and
        // skipped for good.
        let mut candidates: Vec<(T, usize, usize)> = Vec::new();
        for i in 0..clusters.len() {
            if !alive[i] {
                continue;
            }
            for j in (i + 1)..clusters.len() {
                if alive[j]
                    && distance[i][j].is_finite()
                    && !rejected.contains(&pair_uid(&clusters[i], &clusters[j]))
                {
                    candidates.push((distance[i][j], i, j));
                }
            }
        }
        candidates.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| pair_key(&clusters[a.1], &clusters[a.2])
                    .cmp(&pair_key(&clusters[b.1], &clusters[b.2])))
        });

        let mut merged = false;
        let mut cursor = 0;
        while cursor < candidates.len() {
            let (anchor_distance, i0, j0) = candidates[cursor];
            if rejected.contains(&pair_uid(&clusters[i0], &clusters[j0])) {
                cursor += 1;
                continue;
            }
            // Among all pairs within tolerance of the closest remaining
            // distance, take the lexicographically smallest member-id pair.
            let mut pick = cursor;
            let mut scan = cursor + 1;
            while scan < candidates.len() && approx_eq(candidates[scan].0, anchor_distance, tol) {
                let (_, si, sj) = candidates[scan];
                if !rejected.contains(&pair_uid(&clusters[si], &clusters[sj]))
                    && pair_key(&clusters[si], &clusters[sj])
                        < pair_key(&clusters[candidates[pick].1], &clusters[candidates[pick].2])
                {
                    pick = scan;
                }
                scan += 1;
            }
            let (_, i, j) = candidates[pick];

            let union: BTreeSet<usize> =
                clusters[i].members.union(&clusters[j].members).copied().collect();
            let score = evaluator.evaluate_members(&union);
            if score < cutoff.value() {
                rejected.insert(pair_uid(&clusters[i], &clusters[j]));
                continue;
            }

            // Merge j into i (mean linkage over original vertex pairs).
            let size_i = T::from_usize(clusters[i].members.len()).unwrap();
            let size_j = T::from_usize(clusters[j].members.len()).unwrap();
            for k in 0..clusters.len() {
                if !alive[k] || k == i || k == j {
                    continue;
                }
                let combined = if distance[i][k].is_finite() && distance[j][k].is_finite() {
                    (size_i * distance[i][k] + size_j * distance[j][k]) / (size_i + size_j)
                } else {
                    T::infinity()
                };
                distance[i][k] = combined;
                distance[k][i] = combined;
            }
            alive[j] = false;
            let (left, right) = clusters.split_at_mut(j);
            let cluster_j = &right[0];
            let cluster_i = &mut left[i];
            cluster_i.members.extend(cluster_j.members.iter().copied());
            if cluster_j.min_id < cluster_i.min_id {
                cluster_i.min_id = cluster_j.min_id.clone();
            }
            cluster_i.uid = next_uid;
            next_uid += 1;
            merged = true;
            break;
        }

        if !merged {
            break;
        }
    }

    let mut finals: Vec<&ClusterState> =
        clusters.iter().zip(&alive).filter(|(_, &a)| a).map(|(c, _)| c).collect();
    finals.sort_by_key(|c| *c.members.first().expect("clusters are non-empty"));
    Ok(Clustering {
        clusters: finals.iter().map(|c| graph.induced_by_indices(&c.members)).collect(),
    })
}

fn pair_uid(a: &ClusterState, b: &ClusterState) -> (u64, u64) {
    if a.uid < b.uid {
        (a.uid, b.uid)
    } else {
        (b.uid, a.uid)
    }
}

fn pair_key<'a>(a: &'a ClusterState, b: &'a ClusterState) -> (&'a str, &'a str) {
    if a.min_id <= b.min_id {
        (&a.min_id, &b.min_id)
    } else {
        (&b.min_id, &a.min_id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn undirected(ids: &[&str], edges: &[(&str, &str, f64)]) -> WeightedDigraph<f64> {
        let mut g = WeightedDigraph::with_vertices(ids.iter().copied()).unwrap();
        for &(u, v, w) in edges {
            g.set_edge(u, v, w).unwrap();
            g.set_edge(v, u, w).unwrap();
        }
        g
    }

    fn bridged_triangles() -> WeightedDigraph<f64> {
        undirected(
            &["a", "b", "c", "d", "e", "f"],
            &[
                ("a", "b", 1.0),
                ("a", "c", 1.0),
                ("b", "c", 1.0),
                ("c", "d", 1.0),
                ("d", "e", 1.0),
                ("d", "f", 1.0),
                ("e", "f", 1.0),
            ],
        )
    }

    #[test]
    fn density_gate_keeps_the_two_triangles_apart() {
        let g = bridged_triangles();
        let clustering = agglomerative_cluster(
            &g,
            MetricKind::ClusterDensity,
            Cutoff::new(0.8).unwrap(),
            PathMode::Weighted,
        )
        .unwrap();
        assert_eq!(clustering.len(), 2);
        let sets: Vec<Vec<&str>> = clustering
            .iter()
            .map(|c| c.ids().iter().map(String::as_str).collect())
            .collect();
        assert_eq!(sets[0], vec!["a", "b", "c"]);
        assert_eq!(sets[1], vec!["d", "e", "f"]);
        clustering.check_partition_of(&g).unwrap();
    }

    #[test]
    fn single_vertex_stays_a_singleton() {
        let g = undirected(&["a"], &[]);
        let clustering = agglomerative_cluster(
            &g,
            MetricKind::ClusterDensity,
            Cutoff::new(0.5).unwrap(),
            PathMode::Weighted,
        )
        .unwrap();
        assert_eq!(clustering.len(), 1);
        assert_eq!(clustering.clusters[0].vertex_count(), 1);
    }

    #[test]
    fn zero_cutoff_merges_a_connected_graph_completely() {
        let g = bridged_triangles();
        let clustering = agglomerative_cluster(
            &g,
            MetricKind::ClusterDensity,
            Cutoff::new(0.0).unwrap(),
            PathMode::Weighted,
        )
        .unwrap();
        assert_eq!(clustering.len(), 1);
        assert_eq!(clustering.clusters[0].vertex_count(), 6);
    }

    #[test]
    fn disconnected_graphs_never_merge_across_components() {
        let g = undirected(&["a", "b", "x", "y"], &[("a", "b", 1.0), ("x", "y", 1.0)]);
        let clustering = agglomerative_cluster(
            &g,
            MetricKind::ClusterDensity,
            Cutoff::new(0.0).unwrap(),
            PathMode::Weighted,
        )
        .unwrap();
        assert_eq!(clustering.len(), 2);
    }
}

//! Shortest-path machinery shared by edge betweenness and agglomerative
//! clustering.
//!
//! High edge weight means "close", so the default path length of an edge is
//! the reciprocal of its weight. The hop-count mode treats every edge as
//! length 1 instead, for comparing against unweighted shortest paths.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::graph::WeightedDigraph;
use crate::scalar::Scalar;

/// How edge weights translate into path lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PathMode {
    /// Edge length = 1 / weight.
    #[default]
    #[serde(rename = "weighted")]
    Weighted,
    /// Edge length = 1 for every edge.
    #[serde(rename = "hops")]
    HopCount,
}

impl PathMode {
    pub fn edge_length<T: Scalar>(self, weight: T) -> T {
        match self {
            PathMode::Weighted => T::one() / weight,
            PathMode::HopCount => T::one(),
        }
    }
}

/// Out-adjacency lists with weights already converted to path lengths.
pub fn length_adjacency<T: Scalar>(
    graph: &WeightedDigraph<T>,
    mode: PathMode,
) -> Vec<Vec<(usize, T)>> {
    let mut adjacency = vec![Vec::new(); graph.vertex_count()];
    for (u, v, w) in graph.edges() {
        adjacency[u].push((v, mode.edge_length(w)));
    }
    adjacency
}

// Min-heap entry; lengths are finite positive floats, so the total order is
// safe. Ties fall back to the vertex index for a deterministic pop order.
struct HeapEntry<T> {
    distance: T,
    vertex: usize,
}

impl<T: Scalar> PartialEq for HeapEntry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.distance == other.distance && self.vertex == other.vertex
    }
}

impl<T: Scalar> Eq for HeapEntry<T> {}

impl<T: Scalar> PartialOrd for HeapEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for HeapEntry<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap, we want the smallest distance.
        other
            .distance
            .partial_cmp(&self.distance)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Single-source shortest path lengths over prebuilt length-adjacency
/// lists. Unreachable vertices get `T::infinity()`.
pub fn dijkstra<T: Scalar>(adjacency: &[Vec<(usize, T)>], source: usize) -> Vec<T> {
    let n = adjacency.len();
    let mut dist = vec![T::infinity(); n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = T::zero();
    heap.push(HeapEntry { distance: T::zero(), vertex: source });

    while let Some(HeapEntry { distance, vertex }) = heap.pop() {
        if done[vertex] {
            continue;
        }
        done[vertex] = true;
        for &(next, length) in &adjacency[vertex] {
            let candidate = distance + length;
            if candidate < dist[next] {
                dist[next] = candidate;
                heap.push(HeapEntry { distance: candidate, vertex: next });
            }
        }
    }
    dist
}

/// All-pairs shortest path lengths; `result[u][v]` is the length from u to
/// v, infinity when unreachable.
pub fn all_pairs_lengths<T: Scalar>(graph: &WeightedDigraph<T>, mode: PathMode) -> Vec<Vec<T>> {
    let adjacency = length_adjacency(graph, mode);
    (0..graph.vertex_count()).map(|source| dijkstra(&adjacency, source)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(ids: &[&str], edges: &[(&str, &str, f64)]) -> WeightedDigraph<f64> {
        let mut g = WeightedDigraph::with_vertices(ids.iter().copied()).unwrap();
        for &(u, v, w) in edges {
            g.set_edge(u, v, w).unwrap();
        }
        g
    }

    #[test]
    fn heavier_edges_are_shorter() {
        // a->b->c with heavy edges beats the light direct edge a->c.
        let g = graph(
            &["a", "b", "c"],
            &[("a", "b", 10.0), ("b", "c", 10.0), ("a", "c", 1.0)],
        );
        let lengths = all_pairs_lengths(&g, PathMode::Weighted);
        assert!((lengths[0][2] - 0.2).abs() < 1e-12);
    }

    #[test]
    fn hop_mode_ignores_weights() {
        let g = graph(
            &["a", "b", "c"],
            &[("a", "b", 10.0), ("b", "c", 10.0), ("a", "c", 1.0)],
        );
        let lengths = all_pairs_lengths(&g, PathMode::HopCount);
        assert_eq!(lengths[0][2], 1.0);
    }

    #[test]
    fn unreachable_is_infinite_and_direction_matters() {
        let g = graph(&["a", "b"], &[("a", "b", 1.0)]);
        let lengths = all_pairs_lengths(&g, PathMode::Weighted);
        assert_eq!(lengths[0][1], 1.0);
        assert!(lengths[1][0].is_infinite());
    }
}

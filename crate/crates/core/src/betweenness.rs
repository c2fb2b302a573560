//! Edge betweenness and the single-split betweenness clustering step.
//!
//! Edge betweenness of an edge e is the number of shortest paths over all
//! ordered vertex pairs passing through e, with each pair's contribution
//! split evenly among that pair's equal-length shortest paths. Computed
//! with Brandes-style dependency accumulation on top of Dijkstra.

use std::collections::BTreeMap;

use crate::graph::{Clustering, WeightedDigraph};
use crate::paths::PathMode;
use crate::scalar::{approx_eq, Scalar};

// Flat adjacency with stable edge ids; rebuilt after each edge removal,
// while the per-source workspace buffers are reused across passes.
struct EdgeList<T> {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    lengths: Vec<T>,
    keys: Vec<(usize, usize)>,
}

impl<T: Scalar> EdgeList<T> {
    fn new(graph: &WeightedDigraph<T>, mode: PathMode) -> Self {
        let n = graph.vertex_count();
        let mut offsets = vec![0usize; n + 1];
        let mut targets = Vec::with_capacity(graph.edge_count());
        let mut lengths = Vec::with_capacity(graph.edge_count());
        let mut keys = Vec::with_capacity(graph.edge_count());
        // Edges iterate in (source, target) order, so per-source slices are
        // contiguous.
        for (u, v, w) in graph.edges() {
            offsets[u + 1] += 1;
            targets.push(v);
            lengths.push(mode.edge_length(w));
            keys.push((u, v));
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        EdgeList { offsets, targets, lengths, keys }
    }
}

struct Workspace<T> {
    dist: Vec<T>,
    sigma: Vec<T>,
    delta: Vec<T>,
    done: Vec<bool>,
    preds: Vec<Vec<(usize, usize)>>, // (predecessor vertex, edge id)
    order: Vec<usize>,
    heap: std::collections::BinaryHeap<HeapEntry<T>>,
}

impl<T: Scalar> Workspace<T> {
    fn new(n: usize) -> Self {
        Workspace {
            dist: vec![T::infinity(); n],
            sigma: vec![T::zero(); n],
            delta: vec![T::zero(); n],
            done: vec![false; n],
            preds: vec![Vec::new(); n],
            order: Vec::with_capacity(n),
            heap: std::collections::BinaryHeap::new(),
        }
    }
}

fn accumulate_scores<T: Scalar>(
    edges: &EdgeList<T>,
    n: usize,
    workspace: &mut Workspace<T>,
    scores: &mut [T],
) {
    let tol = T::weight_tolerance();
    for score in scores.iter_mut() {
        *score = T::zero();
    }

    for source in 0..n {
        for v in 0..n {
            workspace.dist[v] = T::infinity();
            workspace.sigma[v] = T::zero();
            workspace.delta[v] = T::zero();
            workspace.done[v] = false;
            workspace.preds[v].clear();
        }
        workspace.order.clear();
        workspace.heap.clear();

        workspace.dist[source] = T::zero();
        workspace.sigma[source] = T::one();
        workspace.heap.push(HeapEntry { distance: T::zero(), vertex: source });

        while let Some(HeapEntry { vertex, .. }) = workspace.heap.pop() {
            if workspace.done[vertex] {
                continue;
            }
            workspace.done[vertex] = true;
            workspace.order.push(vertex);
            let sigma_vertex = workspace.sigma[vertex];
            let dist_vertex = workspace.dist[vertex];
            for edge in edges.offsets[vertex]..edges.offsets[vertex + 1] {
                let next = edges.targets[edge];
                let candidate = dist_vertex + edges.lengths[edge];
                if candidate < workspace.dist[next]
                    && !approx_eq(candidate, workspace.dist[next], tol)
                {
                    workspace.dist[next] = candidate;
                    workspace.sigma[next] = sigma_vertex;
                    workspace.preds[next].clear();
                    workspace.preds[next].push((vertex, edge));
                    workspace.heap.push(HeapEntry { distance: candidate, vertex: next });
                } else if approx_eq(candidate, workspace.dist[next], tol) {
                    workspace.sigma[next] += sigma_vertex;
                    workspace.preds[next].push((vertex, edge));
                }
            }
        }

        for index in (0..workspace.order.len()).rev() {
            let vertex = workspace.order[index];
            if vertex == source {
                continue;
            }
            let credit = (T::one() + workspace.delta[vertex]) / workspace.sigma[vertex];
            for pred_index in 0..workspace.preds[vertex].len() {
                let (pred, edge) = workspace.preds[vertex][pred_index];
                let contribution = workspace.sigma[pred] * credit;
                scores[edge] += contribution;
                workspace.delta[pred] += contribution;
            }
        }
    }
}

/// Betweenness score per directed edge, keyed by (source, target) vertex
/// indices.
pub fn edge_betweenness<T: Scalar>(
    graph: &WeightedDigraph<T>,
    mode: PathMode,
) -> BTreeMap<(usize, usize), T> {
    let n = graph.vertex_count();
    let edges = EdgeList::new(graph, mode);
    let mut workspace = Workspace::new(n);
    let mut scores = vec![T::zero(); edges.keys.len()];
    accumulate_scores(&edges, n, &mut workspace, &mut scores);
    edges.keys.iter().copied().zip(scores).collect()
}

/// One betweenness clustering step.
///
/// A disconnected input immediately yields its weak components. Otherwise
/// edges are removed one at a time, highest betweenness first (ties broken
/// by lexicographic (source id, target id) order), until the weak component
/// count first exceeds the input's. The resulting vertex sets come back as
/// induced subgraphs of the input, so removed intra-cluster edges are
/// restored.
pub fn edge_betweenness_step<T: Scalar>(
    graph: &WeightedDigraph<T>,
    mode: PathMode,
) -> Clustering<T> {
    let components = graph.weakly_connected_components();
    if components.len() != 1 || graph.edge_count() == 0 {
        return components;
    }

    let n = graph.vertex_count();
    let tol = T::weight_tolerance();
    let mut work = graph.clone();
    let mut workspace = Workspace::new(n);
    let mut scores = Vec::new();
    loop {
        let edges = EdgeList::new(&work, mode);
        scores.resize(edges.keys.len(), T::zero());
        accumulate_scores(&edges, n, &mut workspace, &mut scores);

        let max = scores.iter().copied().fold(T::zero(), T::max);
        let (u, v) = edges
            .keys
            .iter()
            .zip(&scores)
            .filter(|(_, &score)| approx_eq(score, max, tol))
            .map(|(&key, _)| key)
            .min_by_key(|&(u, v)| (work.id(u), work.id(v)))
            .expect("connected graph with edges has a maximum");
        work.remove_edge(u, v);

        let split = work.weakly_connected_components();
        if split.len() > 1 {
            return Clustering {
                clusters: split
                    .clusters
                    .iter()
                    .map(|component| {
                        graph
                            .induced_subgraph(component.ids().iter().map(String::as_str))
                            .expect("component vertices belong to the input")
                    })
                    .collect(),
            };
        }
    }
}

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
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for HeapEntry<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .distance
            .partial_cmp(&self.distance)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

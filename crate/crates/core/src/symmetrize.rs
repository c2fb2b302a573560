//! The two symmetrizations that turn a directed graph into an undirected
//! one (represented as a digraph with matching opposing edges).

use crate::graph::WeightedDigraph;
use crate::matrix::AdjacencyMatrix;
use crate::scalar::Scalar;

/// Naive symmetrization: `w'(v, v') = w0(v, v') + w0(v', v)` wherever either
/// direction carries an edge. Drops direction information.
pub fn naive_symmetrize<T: Scalar>(graph: &WeightedDigraph<T>) -> WeightedDigraph<T> {
    let mut out = WeightedDigraph::with_vertices(graph.ids().iter().cloned())
        .expect("vertex ids are unique");
    for (u, v, _) in graph.edges() {
        if u < v || !graph.has_edge(v, u) {
            let w = graph.pair_weight(u, v);
            out.set_edge_indexed(u, v, w).expect("positive pair weight");
            out.set_edge_indexed(v, u, w).expect("positive pair weight");
        }
    }
    out
}

/// Bibliometric symmetrization: the graph of
/// `M = (A + I)(A + I)^T + (A + I)^T(A + I)` with the diagonal discarded.
///
/// Entry (i, j) of M combines the weighted overlap of the out-neighborhoods
/// and of the in-neighborhoods of v_i and v_j, so vertices sharing many
/// neighbors end up strongly linked even without a direct edge.
pub fn bibliometric_symmetrize<T: Scalar>(graph: &WeightedDigraph<T>) -> WeightedDigraph<T> {
    let a_prime = AdjacencyMatrix::from_graph(graph).add_identity();
    let transposed = a_prime.transpose();
    let m = a_prime.matmul(&transposed).add(&transposed.matmul(&a_prime));

    let mut out = WeightedDigraph::with_vertices(graph.ids().iter().cloned())
        .expect("vertex ids are unique");
    let n = m.size();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = m.get(i, j);
            if w > T::zero() {
                out.set_edge_indexed(i, j, w).expect("positive weight");
                out.set_edge_indexed(j, i, m.get(j, i)).expect("positive weight");
            }
        }
    }
    out
}

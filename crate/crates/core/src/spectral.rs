//! Spectral bisection: split a connected undirected graph along the sign
//! pattern of the Fiedler vector of its weighted Laplacian.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::eigen::symmetric_eigen;
use crate::graph::{Clustering, WeightedDigraph};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("spectral bisection requires at least two vertices, got {0}")]
    DegenerateInput(usize),
}

// Relative off-diagonal target for the Jacobi sweep; comfortably tighter
// than the 1e-8 accuracy the bisection relies on.
const EIGEN_TOLERANCE: f64 = 1e-12;

/// Second-smallest eigenvalue and its eigenvector for the graph's weighted
/// Laplacian `L = D - W` on the undirected view. The vector's sign is fixed
/// by making its first non-negligible entry (in vertex order) positive.
pub fn fiedler<T: Scalar>(graph: &WeightedDigraph<T>) -> Option<(T, Vec<T>)> {
    let n = graph.vertex_count();
    if n < 2 {
        return None;
    }
    let mut laplacian = vec![T::zero(); n * n];
    for (row, partners) in graph.undirected_adjacency().iter().enumerate() {
        let mut degree = T::zero();
        for &(col, w) in partners {
            laplacian[row * n + col] = -w;
            degree += w;
        }
        laplacian[row * n + row] = degree;
    }

    let eig = symmetric_eigen(&laplacian, n, T::from_f64(EIGEN_TOLERANCE).unwrap());
    let value = eig.values[1];
    let mut vector = eig.vectors[1].clone();

    let sign_threshold = T::from_f64(1e-12).unwrap();
    if let Some(&first) = vector.iter().find(|entry| entry.abs() > sign_threshold) {
        if first < T::zero() {
            for entry in &mut vector {
                *entry = -*entry;
            }
        }
    }
    Some((value, vector))
}

/// One spectral bisection step.
///
/// Disconnected inputs fall back to their weak components. Otherwise the
/// graph splits into the vertices with positive Fiedler entries and the
/// rest; if either side comes out empty the split falls back to the median
/// of the entry order, which always yields two non-empty sides.
pub fn spectral_bisection_step<T: Scalar>(
    graph: &WeightedDigraph<T>,
) -> Result<Clustering<T>, SpectralError> {
    let n = graph.vertex_count();
    if n < 2 {
        return Err(SpectralError::DegenerateInput(n));
    }
    let components = graph.weakly_connected_components();
    if components.len() > 1 {
        return Ok(components);
    }

    let (_, vector) = fiedler(graph).expect("n >= 2");
    let mut positive: BTreeSet<usize> =
        (0..n).filter(|&v| vector[v] > T::zero()).collect();
    let mut rest: BTreeSet<usize> = (0..n).filter(|v| !positive.contains(v)).collect();

    if positive.is_empty() || rest.is_empty() {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            vector[i]
                .partial_cmp(&vector[j])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| i.cmp(&j))
        });
        rest = order[..n / 2].iter().copied().collect();
        positive = order[n / 2..].iter().copied().collect();
    }

    Ok(Clustering {
        clusters: vec![graph.induced_by_indices(&positive), graph.induced_by_indices(&rest)],
    })
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

    #[test]
    fn unit_path_splits_at_the_midpoint() {
        let g = undirected(
            &["a", "b", "c", "d"],
            &[("a", "b", 1.0), ("b", "c", 1.0), ("c", "d", 1.0)],
        );
        let clustering = spectral_bisection_step(&g).unwrap();
        assert_eq!(clustering.len(), 2);
        let mut sets: Vec<Vec<&str>> = clustering
            .iter()
            .map(|c| c.ids().iter().map(String::as_str).collect())
            .collect();
        sets.sort();
        assert_eq!(sets, vec![vec!["a", "b"], vec!["c", "d"]]);
    }

    #[test]
    fn two_disjoint_edges_fall_back_to_components() {
        let g = undirected(&["a", "b", "c", "d"], &[("a", "b", 1.0), ("c", "d", 1.0)]);
        let clustering = spectral_bisection_step(&g).unwrap();
        assert_eq!(clustering.len(), 2);
        assert!(clustering.iter().all(|c| c.vertex_count() == 2));
    }

    #[test]
    fn k2_splits_into_singletons() {
        let g = undirected(&["a", "b"], &[("a", "b", 1.0)]);
        let clustering = spectral_bisection_step(&g).unwrap();
        assert_eq!(clustering.len(), 2);
        assert!(clustering.iter().all(|c| c.vertex_count() == 1));
    }

    #[test]
    fn degenerate_input_is_an_error() {
        let g = WeightedDigraph::<f64>::with_vertices(["a"]).unwrap();
        assert!(matches!(
            spectral_bisection_step(&g),
            Err(SpectralError::DegenerateInput(1))
        ));
    }

    #[test]
    fn fiedler_value_positive_iff_connected() {
        let connected = undirected(
            &["a", "b", "c"],
            &[("a", "b", 1.0), ("b", "c", 1.0)],
        );
        let (lambda, _) = fiedler(&connected).unwrap();
        assert!(lambda > 1e-8);

        let disconnected = undirected(&["a", "b", "c", "d"], &[("a", "b", 1.0), ("c", "d", 1.0)]);
        let (lambda, _) = fiedler(&disconnected).unwrap();
        assert!(lambda.abs() < 1e-8);
    }
}

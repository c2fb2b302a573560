//! Dense adjacency-matrix view of a graph, with just enough matrix algebra
//! for the bibliometric symmetrization.

use crate::graph::WeightedDigraph;
use crate::scalar::Scalar;

/// n×n matrix of non-negative weights indexed by the graph's vertex order;
/// entry (i, j) is the weight of edge `(v_i, v_j)` or zero.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> AdjacencyMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        AdjacencyMatrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn from_graph(graph: &WeightedDigraph<T>) -> Self {
        let mut matrix = Self::zeros(graph.vertex_count());
        for (u, v, w) in graph.edges() {
            matrix.set(u, v, w);
        }
        matrix
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.n + j] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add_identity(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.set(i, i, out.get(i, i) + T::one());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zeros(self.n);
        for (index, value) in out.data.iter_mut().enumerate() {
            *value = self.data[index] + other.data[index];
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut sum = T::zero();
                for k in 0..n {
                    sum += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, sum);
            }
        }
        out
    }
}

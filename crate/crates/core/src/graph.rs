//! Weighted directed graph value type and structural operations.
//!
//! Vertices are string ids kept in insertion order; that order is the
//! instance-declaration order when the graph comes from a workflow, and all
//! iteration and tie-breaking downstream relies on it. Edges are keyed by
//! (source index, target index) and carry strictly positive weights. No
//! self-loops.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::scalar::{approx_eq, Scalar};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("non-positive weight {weight} on edge `{source_id}` -> `{target_id}`")]
    NonPositiveWeight { source_id: String, target_id: String, weight: String },
}

/// Directed graph with strictly positive edge weights.
#[derive(Debug, Clone)]
pub struct WeightedDigraph<T> {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> Default for WeightedDigraph<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: PartialEq> PartialEq for WeightedDigraph<T> {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.edges == other.edges
    }
}

impl<T: Scalar> WeightedDigraph<T> {
    pub fn new() -> Self {
        WeightedDigraph { ids: Vec::new(), index: HashMap::new(), edges: BTreeMap::new() }
    }

    pub fn with_vertices<I, S>(vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut graph = Self::new();
        for id in vertices {
            graph.add_vertex(id.into())?;
        }
        Ok(graph)
    }

    pub fn add_vertex(&mut self, id: String) -> Result<usize, GraphError> {
        if self.index.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id));
        }
        let position = self.ids.len();
        self.index.insert(id.clone(), position);
        self.ids.push(id);
        Ok(position)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex ids in declaration order.
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, vertex: usize) -> &str {
        &self.ids[vertex]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Insert or overwrite the edge `(source, target)`.
    pub fn set_edge(&mut self, source: &str, target: &str, weight: T) -> Result<(), GraphError> {
        let u = self
            .index_of(source)
            .ok_or_else(|| GraphError::UnknownVertex(source.to_string()))?;
        let v = self
            .index_of(target)
            .ok_or_else(|| GraphError::UnknownVertex(target.to_string()))?;
        self.set_edge_indexed(u, v, weight)
    }

    /// Indexed variant of [`Self::set_edge`]; indices must be in range.
    pub fn set_edge_indexed(&mut self, u: usize, v: usize, weight: T) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(self.ids[u].clone()));
        }
        if weight <= T::zero() {
            return Err(GraphError::NonPositiveWeight {
                source_id: self.ids[u].clone(),
                target_id: self.ids[v].clone(),
                weight: format!("{weight}"),
            });
        }
        self.edges.insert((u, v), weight);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Option<T> {
        self.edges.remove(&(u, v))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<T> {
        self.edges.get(&(u, v)).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&(u, v))
    }

    /// Edges as `(source, target, weight)` in (source, target) index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    /// Out-adjacency lists indexed by vertex, targets in index order.
    pub fn out_adjacency(&self) -> Vec<Vec<(usize, T)>> {
        let mut adjacency = vec![Vec::new(); self.ids.len()];
        for (u, v, w) in self.edges() {
            adjacency[u].push((v, w));
        }
        adjacency
    }

    /// Combined weight of the unordered pair `{u, v}`:
    /// `w0(u, v) + w0(v, u)`, zero when neither direction exists.
    pub fn pair_weight(&self, u: usize, v: usize) -> T {
        let forward = self.weight(u, v).unwrap_or_else(T::zero);
        let backward = self.weight(v, u).unwrap_or_else(T::zero);
        forward + backward
    }

    /// True when an edge exists in either direction.
    pub fn linked(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    /// Undirected neighbor sets (simple view), indexed by vertex.
    pub fn undirected_neighbors(&self) -> Vec<BTreeSet<usize>> {
        let mut neighbors = vec![BTreeSet::new(); self.ids.len()];
        for (u, v, _) in self.edges() {
            neighbors[u].insert(v);
            neighbors[v].insert(u);
        }
        neighbors
    }

    /// Undirected weighted adjacency lists: for each vertex the partners it
    /// is linked to, with pair weights.
    pub fn undirected_adjacency(&self) -> Vec<Vec<(usize, T)>> {
        let mut pair: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for (u, v, w) in self.edges() {
            let key = if u < v { (u, v) } else { (v, u) };
            *pair.entry(key).or_insert_with(T::zero) += w;
        }
        let mut adjacency = vec![Vec::new(); self.ids.len()];
        for (&(u, v), &w) in &pair {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        adjacency
    }

    /// Same graph with every weight replaced by its reciprocal.
    pub fn reciprocal(&self) -> Self {
        let mut out = self.clone();
        for weight in out.edges.values_mut() {
            *weight = T::one() / *weight;
        }
        out
    }

    /// Vertex-induced subgraph on `vertex_ids`. Vertices keep their relative
    /// order; every edge with both endpoints inside is retained with its
    /// weight.
    pub fn induced_subgraph<'a, I>(&self, vertex_ids: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut indices = BTreeSet::new();
        for id in vertex_ids {
            let index =
                self.index_of(id).ok_or_else(|| GraphError::UnknownVertex(id.to_string()))?;
            indices.insert(index);
        }
        Ok(self.induced_by_indices(&indices))
    }

    /// Induced subgraph on a set of in-range vertex indices.
    pub fn induced_by_indices(&self, indices: &BTreeSet<usize>) -> Self {
        let mut sub = WeightedDigraph::new();
        let mut remap: HashMap<usize, usize> = HashMap::with_capacity(indices.len());
        for &index in indices {
            let new_index = sub.add_vertex(self.ids[index].clone()).expect("unique parent ids");
            remap.insert(index, new_index);
        }
        for (u, v, w) in self.edges() {
            if let (Some(&nu), Some(&nv)) = (remap.get(&u), remap.get(&v)) {
                sub.edges.insert((nu, nv), w);
            }
        }
        sub
    }

    /// Maximal sets of vertices mutually reachable when edge direction is
    /// ignored, each returned as an induced subgraph. Components are ordered
    /// by their smallest vertex index.
    pub fn weakly_connected_components(&self) -> Clustering<T> {
        let n = self.ids.len();
        let mut parent: Vec<usize> = (0..n).collect();

        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cursor = x;
            while parent[cursor] != root {
                let next = parent[cursor];
                parent[cursor] = root;
                cursor = next;
            }
            root
        }

        for (u, v, _) in self.edges() {
            let ru = find(&mut parent, u);
            let rv = find(&mut parent, v);
            if ru != rv {
                let (low, high) = if ru < rv { (ru, rv) } else { (rv, ru) };
                parent[high] = low;
            }
        }

        let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for vertex in 0..n {
            let root = find(&mut parent, vertex);
            groups.entry(root).or_default().insert(vertex);
        }

        Clustering {
            clusters: groups.values().map(|set| self.induced_by_indices(set)).collect(),
        }
    }

    /// Entry-wise approximate equality at the given tolerance; requires the
    /// same vertex order and edge support.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.ids == other.ids
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .all(|(k, &w)| other.edges.get(k).is_some_and(|&o| approx_eq(w, o, tol)))
    }
}

/// A partition of a graph's vertices into vertex-induced subgraphs.
#[derive(Debug, Clone)]
pub struct Clustering<T> {
    pub clusters: Vec<WeightedDigraph<T>>,
}

impl<T: Scalar> Clustering<T> {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeightedDigraph<T>> {
        self.clusters.iter()
    }

    /// Check the partition conditions against `parent`: disjoint vertex
    /// sets covering the parent, edges a subset of the parent's with
    /// preserved weights.
    pub fn check_partition_of(&self, parent: &WeightedDigraph<T>) -> Result<(), String> {
        let mut seen: HashMap<&str, ()> = HashMap::new();
        for cluster in &self.clusters {
            for id in cluster.ids() {
                if parent.index_of(id).is_none() {
                    return Err(format!("cluster vertex `{id}` is not in the parent"));
                }
                if seen.insert(id, ()).is_some() {
                    return Err(format!("vertex `{id}` appears in two clusters"));
                }
            }
            for (u, v, w) in cluster.edges() {
                let pu = parent.index_of(cluster.id(u)).unwrap();
                let pv = parent.index_of(cluster.id(v)).unwrap();
                match parent.weight(pu, pv) {
                    Some(pw) if approx_eq(w, pw, T::weight_tolerance()) => {}
                    Some(_) => {
                        return Err(format!(
                            "edge `{}` -> `{}` does not keep its parent weight",
                            cluster.id(u),
                            cluster.id(v)
                        ));
                    }
                    None => {
                        return Err(format!(
                            "edge `{}` -> `{}` is not a parent edge",
                            cluster.id(u),
                            cluster.id(v)
                        ));
                    }
                }
            }
        }
        if seen.len() != parent.vertex_count() {
            return Err(format!(
                "clusters cover {} of {} parent vertices",
                seen.len(),
                parent.vertex_count()
            ));
        }
        Ok(())
    }
}

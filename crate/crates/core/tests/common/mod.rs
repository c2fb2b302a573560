//! Shared oracles and generators for the integration and acceptance suites.
//!
//! Every oracle here is an independent route to the quantity it checks:
//! betweenness by exhaustive path enumeration, modularity by the pairwise
//! null-model sum, bibliometric symmetrization by plain nested-loop matrix
//! products over `Vec<Vec<f64>>`.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use flowgroup::graph::WeightedDigraph;
use flowgroup::paths::PathMode;
use flowgroup::workflow::{
    parse_workflow, Connection, DataType, InputConstraint, InputHandling, ToolInstance, Workflow,
};
use flowgroup::Digraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_workflow1() -> Workflow {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/workflow1.json");
    let bytes = std::fs::read(path).expect("fixture workflow1.json is shipped with the repo");
    parse_workflow(&bytes).expect("fixture parses")
}

/// Weight pool whose reciprocals all have denominator 100, so distinct path
/// lengths differ by at least 0.01 and float ties are unambiguous.
const TIE_SAFE_WEIGHTS: [f64; 8] = [1.0, 2.0, 4.0, 5.0, 10.0, 20.0, 25.0, 50.0];

/// Seeded random digraph with `n` vertices and edge probability `p`.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64, tie_safe: bool) -> Digraph {
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut g = WeightedDigraph::with_vertices(ids).unwrap();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                let w = if tie_safe {
                    TIE_SAFE_WEIGHTS[rng.random_range(0..TIE_SAFE_WEIGHTS.len())]
                } else {
                    rng.random_range(0.1..100.0)
                };
                g.set_edge_indexed(u, v, w).unwrap();
            }
        }
    }
    g
}

/// Seeded random workflow with up to `max_instances` instances; may contain
/// self-loop connections and duplicate connections on purpose.
pub fn random_workflow(rng: &mut ChaCha8Rng, max_instances: usize) -> Workflow {
    let n = rng.random_range(1..=max_instances);
    let instances: Vec<ToolInstance> = (0..n)
        .map(|i| ToolInstance { id: format!("v{i}"), tool: format!("tool{}", i % 3), label: None })
        .collect();
    let m = rng.random_range(0..=3 * n);
    let connections = (0..m)
        .map(|_| Connection {
            source: format!("v{}", rng.random_range(0..n)),
            target: format!("v{}", rng.random_range(0..n)),
            data_type: DataType::ALL[rng.random_range(0..DataType::ALL.len())],
            constraint: InputConstraint::ALL[rng.random_range(0..InputConstraint::ALL.len())],
            handling: InputHandling::ALL[rng.random_range(0..InputHandling::ALL.len())],
        })
        .collect();
    Workflow { name: "random".into(), instances, connections }
}

fn edge_lengths(g: &Digraph, mode: PathMode) -> Vec<Vec<(usize, f64)>> {
    let mut adjacency = vec![Vec::new(); g.vertex_count()];
    for (u, v, w) in g.edges() {
        adjacency[u].push((v, mode.edge_length(w)));
    }
    adjacency
}

/// Brute-force edge betweenness: enumerate every simple path per ordered
/// pair, keep the shortest ones (1e-9 relative tie window), split each
/// pair's unit contribution evenly across them.
pub fn brute_force_edge_betweenness(
    g: &Digraph,
    mode: PathMode,
) -> BTreeMap<(usize, usize), f64> {
    let n = g.vertex_count();
    let adjacency = edge_lengths(g, mode);
    let mut scores: BTreeMap<(usize, usize), f64> =
        g.edges().map(|(u, v, _)| ((u, v), 0.0)).collect();

    fn enumerate(
        adjacency: &[Vec<(usize, f64)>],
        current: usize,
        goal: usize,
        visited: &mut Vec<bool>,
        edges: &mut Vec<(usize, usize)>,
        length: f64,
        out: &mut Vec<(Vec<(usize, usize)>, f64)>,
    ) {
        if current == goal {
            out.push((edges.clone(), length));
            return;
        }
        for &(next, step) in &adjacency[current] {
            if visited[next] {
                continue;
            }
            visited[next] = true;
            edges.push((current, next));
            enumerate(adjacency, next, goal, visited, edges, length + step, out);
            edges.pop();
            visited[next] = false;
        }
    }

    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let mut paths = Vec::new();
            let mut visited = vec![false; n];
            visited[s] = true;
            enumerate(&adjacency, s, t, &mut visited, &mut Vec::new(), 0.0, &mut paths);
            if paths.is_empty() {
                continue;
            }
            let min = paths.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            let shortest: Vec<&(Vec<(usize, usize)>, f64)> =
                paths.iter().filter(|p| flowgroup::approx_eq(p.1, min, 1e-9)).collect();
            let share = 1.0 / shortest.len() as f64;
            for (edges, _) in shortest {
                for edge in edges {
                    *scores.get_mut(edge).unwrap() += share;
                }
            }
        }
    }
    scores
}

/// Brute-force weighted modularity via the pairwise null-model formula:
/// `Q = (1/2W) * sum_ij [A_ij - k_i k_j / 2W] delta(c_i, c_j)` over ordered
/// pairs, with A the undirected pair-weight matrix (zero diagonal).
pub fn brute_force_modularity(g: &Digraph, labels: &[usize]) -> f64 {
    let n = g.vertex_count();
    let mut a = vec![vec![0.0; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                a[u][v] = g.pair_weight(u, v);
            }
        }
    }
    let k: Vec<f64> = (0..n).map(|u| a[u].iter().sum()).collect();
    let two_w: f64 = k.iter().sum();
    if two_w <= 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / two_w;
            }
        }
    }
    q / two_w
}

/// Off-diagonal of `(A+I)(A+I)^T + (A+I)^T(A+I)` computed with plain nested
/// loops over `Vec<Vec<f64>>`, independent of the production matrix type.
pub fn brute_force_bibliometric(g: &Digraph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut b = vec![vec![0.0; n]; n];
    for (u, v, w) in g.edges() {
        b[u][v] = w;
    }
    for (i, row) in b.iter_mut().enumerate() {
        row[i] += 1.0;
    }
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut sum = 0.0;
            for (k, b_k) in b.iter().enumerate() {
                sum += b[i][k] * b[j][k] + b_k[i] * b_k[j];
            }
            m[i][j] = if i == j { 0.0 } else { sum };
        }
    }
    m
}

/// Shared-neighbor route to the bibliometric weight of a pair: weighted
/// overlap of out-neighborhoods plus overlap of in-neighborhoods, counting
/// each vertex as its own neighbor with weight 1.
pub fn shared_neighbor_bibliometric(g: &Digraph, i: usize, j: usize) -> f64 {
    let n = g.vertex_count();
    let w0 = |u: usize, v: usize| -> f64 {
        if u == v {
            1.0
        } else {
            g.weight(u, v).unwrap_or(0.0)
        }
    };
    let mut sum = 0.0;
    for k in 0..n {
        sum += w0(i, k) * w0(j, k) + w0(k, i) * w0(k, j);
    }
    sum
}

/// All set partitions of n elements as restricted growth strings
/// (`labels[i]` = block of element i).
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn recurse(labels: &mut Vec<usize>, position: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        if position == labels.len() {
            out.push(labels.clone());
            return;
        }
        for block in 0..=(max_used + 1).min(position) {
            labels[position] = block;
            recurse(labels, position + 1, max_used.max(block), out);
        }
    }
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    recurse(&mut labels, 1, 0, &mut out);
    out
}

/// Minimum number of vertex reassignments between a reported clustering and
/// a ground-truth grouping: n minus the best injective truth-group-to-
/// cluster assignment overlap.
pub fn misplaced_vertices(truth: &[BTreeSet<String>], clusters: &[Vec<String>]) -> usize {
    let total: usize = truth.iter().map(BTreeSet::len).sum();
    let overlap: Vec<Vec<usize>> = truth
        .iter()
        .map(|group| {
            clusters
                .iter()
                .map(|cluster| cluster.iter().filter(|id| group.contains(*id)).count())
                .collect()
        })
        .collect();

    fn best(
        overlap: &[Vec<usize>],
        group: usize,
        used: &mut Vec<bool>,
    ) -> usize {
        if group == overlap.len() {
            return 0;
        }
        // A truth group may also go unmatched.
        let mut best_here = best(overlap, group + 1, used);
        for cluster in 0..used.len() {
            if used[cluster] {
                continue;
            }
            used[cluster] = true;
            let candidate = overlap[group][cluster] + best(overlap, group + 1, used);
            used[cluster] = false;
            best_here = best_here.max(candidate);
        }
        best_here
    }

    let mut used = vec![false; clusters.len()];
    total - best(&overlap, 0, &mut used)
}

/// Ground-truth groups of a workflow from its instance labels.
pub fn labeled_groups(workflow: &Workflow) -> Vec<BTreeSet<String>> {
    let mut groups: BTreeMap<&str, BTreeSet<String>> = BTreeMap::new();
    for instance in &workflow.instances {
        if let Some(label) = &instance.label {
            groups.entry(label).or_default().insert(instance.id.clone());
        }
    }
    groups.into_values().collect()
}

#[test]
fn bell_numbers_are_right() {
    assert_eq!(all_partitions(1).len(), 1);
    assert_eq!(all_partitions(3).len(), 5);
    assert_eq!(all_partitions(8).len(), 4140);
}

#[test]
fn misplacement_of_exact_match_is_zero() {
    let truth = vec![
        BTreeSet::from(["a".to_string(), "b".to_string()]),
        BTreeSet::from(["c".to_string()]),
    ];
    let clusters = vec![vec!["a".to_string(), "b".to_string()], vec!["c".to_string()]];
    assert_eq!(misplaced_vertices(&truth, &clusters), 0);
    let off_by_one = vec![vec!["a".to_string()], vec!["c".to_string(), "b".to_string()]];
    assert_eq!(misplaced_vertices(&truth, &off_by_one), 1);
}

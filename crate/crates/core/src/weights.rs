//! Weighting functions and construction of a workflow's associated graph.
//!
//! Edge weights encode semantic closeness with the convention "higher =
//! closer". The data-driven function sums, per connected instance pair, a
//! weight for the transferred data type plus an offset for the input
//! constraint; data handling is deliberately ignored.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::WeightedDigraph;
use crate::scalar::Scalar;
use crate::workflow::{Connection, DataType, InputConstraint, Workflow};

/// Choice of edge weighting for the associated graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightingKind {
    /// Sum of per-connection weights (type + constraint).
    #[serde(rename = "data")]
    DataDriven,
    /// Reciprocal of the data-driven weight, to probe the opposite ordering.
    #[serde(rename = "reciprocal")]
    ReciprocalDataDriven,
    /// Constant 1 per connected pair, regardless of connection count.
    #[serde(rename = "unit")]
    Unit,
}

impl WeightingKind {
    pub const ALL: [WeightingKind; 3] =
        [WeightingKind::DataDriven, WeightingKind::ReciprocalDataDriven, WeightingKind::Unit];

    pub fn as_str(self) -> &'static str {
        match self {
            WeightingKind::DataDriven => "data",
            WeightingKind::ReciprocalDataDriven => "reciprocal",
            WeightingKind::Unit => "unit",
        }
    }
}

/// Weight of a transferred data type, ordered by how much information the
/// type can carry.
pub fn type_weight(data_type: DataType) -> u32 {
    match data_type {
        DataType::Bool => 12,
        DataType::Int => 13,
        DataType::Float => 14,
        DataType::Vector => 15,
        DataType::Dir => 16,
        DataType::String => 17,
        DataType::Smalltable => 18,
        DataType::Matrix => 19,
        DataType::File => 20,
    }
}

/// Weight offset for the input constraint of the receiving endpoint.
pub fn constraint_weight(constraint: InputConstraint) -> u32 {
    match constraint {
        InputConstraint::None => 0,
        InputConstraint::NotRequired => 3,
        InputConstraint::RequiredIfConnected => 4,
        InputConstraint::Required => 5,
    }
}

/// Weight of one connection: type weight plus constraint weight. Handling
/// is ignored.
pub fn connection_weight(connection: &Connection) -> u32 {
    type_weight(connection.data_type) + constraint_weight(connection.constraint)
}

/// Build the associated graph of a workflow: one vertex per instance in
/// declaration order, one edge per connected ordered pair. Self-loop
/// connections are dropped. Parallel connections collapse into a single
/// edge; under data-driven weighting their weights sum, under unit
/// weighting the multiplicity is erased.
pub fn build_graph<T: Scalar>(workflow: &Workflow, kind: WeightingKind) -> WeightedDigraph<T> {
    let mut graph = WeightedDigraph::with_vertices(
        workflow.instances.iter().map(|instance| instance.id.clone()),
    )
    .expect("validated workflow has unique instance ids");

    let mut sums: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for connection in &workflow.connections {
        let source = graph.index_of(&connection.source).expect("validated endpoint");
        let target = graph.index_of(&connection.target).expect("validated endpoint");
        if source == target {
            continue;
        }
        *sums.entry((source, target)).or_insert(0) += u64::from(connection_weight(connection));
    }

    for (&(source, target), &sum) in &sums {
        let weight = match kind {
            WeightingKind::DataDriven => T::from_u64(sum).unwrap(),
            WeightingKind::ReciprocalDataDriven => T::one() / T::from_u64(sum).unwrap(),
            WeightingKind::Unit => T::one(),
        };
        graph.set_edge_indexed(source, target, weight).expect("positive weight");
    }

    graph
}

//! Workflow document model: tool instances and the typed connections
//! between them, plus JSON parsing and validation.
//!
//! A workflow is a flat list of tool instances and directed connections.
//! Connections carry the data type, input constraint, and input handling of
//! the endpoint they feed; those attributes drive the edge weighting later.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Data type carried by a connection. Exactly these nine values exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataType {
    Bool,
    Int,
    Float,
    Vector,
    Dir,
    String,
    Smalltable,
    Matrix,
    File,
}

impl DataType {
    pub const ALL: [DataType; 9] = [
        DataType::Bool,
        DataType::Int,
        DataType::Float,
        DataType::Vector,
        DataType::Dir,
        DataType::String,
        DataType::Smalltable,
        DataType::Matrix,
        DataType::File,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DataType::Bool => "bool",
            DataType::Int => "int",
            DataType::Float => "float",
            DataType::Vector => "vector",
            DataType::Dir => "dir",
            DataType::String => "string",
            DataType::Smalltable => "smalltable",
            DataType::Matrix => "matrix",
            DataType::File => "file",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|dt| dt.as_str() == token)
    }
}

/// How strongly the receiving input requires the connected data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InputConstraint {
    #[serde(rename = "none")]
    None,
    #[serde(rename = "notRequired")]
    NotRequired,
    #[serde(rename = "requiredIfConnected")]
    RequiredIfConnected,
    #[serde(rename = "required")]
    Required,
}

impl InputConstraint {
    pub const ALL: [InputConstraint; 4] = [
        InputConstraint::None,
        InputConstraint::NotRequired,
        InputConstraint::RequiredIfConnected,
        InputConstraint::Required,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InputConstraint::None => "none",
            InputConstraint::NotRequired => "notRequired",
            InputConstraint::RequiredIfConnected => "requiredIfConnected",
            InputConstraint::Required => "required",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|c| c.as_str() == token)
    }
}

/// Whether the input consumes each arriving value or keeps it as a constant
/// parameter. Parsed and retained, but never enters any weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputHandling {
    Consumed,
    Constant,
}

impl InputHandling {
    pub const ALL: [InputHandling; 2] = [InputHandling::Consumed, InputHandling::Constant];

    pub fn as_str(self) -> &'static str {
        match self {
            InputHandling::Consumed => "consumed",
            InputHandling::Constant => "constant",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|h| h.as_str() == token)
    }
}

/// One placed occurrence of a tool in the workflow.
///
/// `label` is an optional user group annotation kept purely as evaluation
/// metadata; nothing downstream reads it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInstance {
    pub id: String,
    pub tool: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A directed connection from an output of `source` to an input of `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connection {
    pub source: String,
    pub target: String,
    #[serde(rename = "dataType")]
    pub data_type: DataType,
    pub constraint: InputConstraint,
    pub handling: InputHandling,
}

/// A named workflow: instances plus connections, in document order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Workflow {
    pub name: String,
    pub instances: Vec<ToolInstance>,
    pub connections: Vec<Connection>,
}

/// A single validation finding. Violations are reported, not thrown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateInstanceId { id: String },
    DanglingEndpoint { connection: usize, endpoint: &'static str, id: String },
    EmptyInstanceId { position: usize },
    EmptyToolName { id: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateInstanceId { id } => {
                write!(f, "duplicate instance id `{id}`")
            }
            Violation::DanglingEndpoint { connection, endpoint, id } => {
                write!(f, "connection {connection}: {endpoint} references unknown instance `{id}`")
            }
            Violation::EmptyInstanceId { position } => {
                write!(f, "instance {position} has an empty id")
            }
            Violation::EmptyToolName { id } => {
                write!(f, "instance `{id}` has an empty tool name")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum WorkflowError {
    #[error("malformed workflow document: {0}")]
    MalformedDocument(String),
    #[error("unknown {field} value `{value}`")]
    UnknownEnumValue { field: &'static str, value: String },
    #[error("{0}")]
    Invalid(Violation),
}

// Raw mirror of the JSON schema with enum fields kept as strings, so that a
// bad token surfaces as UnknownEnumValue rather than a generic serde error.
#[derive(Deserialize)]
struct RawWorkflow {
    name: String,
    instances: Vec<RawInstance>,
    connections: Vec<RawConnection>,
}

#[derive(Deserialize)]
struct RawInstance {
    id: String,
    tool: String,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Deserialize)]
struct RawConnection {
    source: String,
    target: String,
    #[serde(rename = "dataType")]
    data_type: String,
    constraint: String,
    handling: String,
}

/// Parse and validate a workflow document.
///
/// The document must be UTF-8 JSON matching the workflow schema. Instance
/// and connection order is preserved.
pub fn parse_workflow(document: &[u8]) -> Result<Workflow, WorkflowError> {
    let raw: RawWorkflow = serde_json::from_slice(document)
        .map_err(|e| WorkflowError::MalformedDocument(e.to_string()))?;

    let instances = raw
        .instances
        .into_iter()
        .map(|i| ToolInstance { id: i.id, tool: i.tool, label: i.label })
        .collect();

    let mut connections = Vec::with_capacity(raw.connections.len());
    for c in raw.connections {
        let data_type = DataType::parse(&c.data_type).ok_or_else(|| {
            WorkflowError::UnknownEnumValue { field: "dataType", value: c.data_type.clone() }
        })?;
        let constraint = InputConstraint::parse(&c.constraint).ok_or_else(|| {
            WorkflowError::UnknownEnumValue { field: "constraint", value: c.constraint.clone() }
        })?;
        let handling = InputHandling::parse(&c.handling).ok_or_else(|| {
            WorkflowError::UnknownEnumValue { field: "handling", value: c.handling.clone() }
        })?;
        connections.push(Connection {
            source: c.source,
            target: c.target,
            data_type,
            constraint,
            handling,
        });
    }

    let workflow = Workflow { name: raw.name, instances, connections };
    match validate_workflow(&workflow).into_iter().next() {
        Some(violation) => Err(WorkflowError::Invalid(violation)),
        None => Ok(workflow),
    }
}

/// Check all workflow invariants and return every violation found.
///
/// Self-loop connections are legal input; they are dropped later during
/// graph construction.
pub fn validate_workflow(workflow: &Workflow) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut seen: HashSet<&str> = HashSet::new();

    for (position, instance) in workflow.instances.iter().enumerate() {
        if instance.id.is_empty() {
            violations.push(Violation::EmptyInstanceId { position });
            continue;
        }
        if !seen.insert(&instance.id) {
            violations.push(Violation::DuplicateInstanceId { id: instance.id.clone() });
        }
        if instance.tool.is_empty() {
            violations.push(Violation::EmptyToolName { id: instance.id.clone() });
        }
    }

    for (index, connection) in workflow.connections.iter().enumerate() {
        if !seen.contains(connection.source.as_str()) {
            violations.push(Violation::DanglingEndpoint {
                connection: index,
                endpoint: "source",
                id: connection.source.clone(),
            });
        }
        if !seen.contains(connection.target.as_str()) {
            violations.push(Violation::DanglingEndpoint {
                connection: index,
                endpoint: "target",
                id: connection.target.clone(),
            });
        }
    }

    violations
}

/// Serialize a workflow back to its JSON document form.
pub fn serialize_workflow(workflow: &Workflow) -> String {
    let mut out = serde_json::to_string_pretty(workflow).expect("workflow serialization");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_doc() -> &'static str {
        r#"{
            "name": "two-step",
            "instances": [
                {"id": "a", "tool": "producer"},
                {"id": "b", "tool": "consumer"}
            ],
            "connections": [
                {"source": "a", "target": "b", "dataType": "float",
                 "constraint": "required", "handling": "consumed"}
            ]
        }"#
    }

    #[test]
    fn parses_minimal_workflow() {
        let wf = parse_workflow(minimal_doc().as_bytes()).unwrap();
        assert_eq!(wf.instances.len(), 2);
        assert_eq!(wf.connections.len(), 1);
        assert_eq!(wf.connections[0].data_type, DataType::Float);
        assert_eq!(wf.connections[0].constraint, InputConstraint::Required);
    }

    #[test]
    fn dangling_target_is_rejected() {
        let doc = r#"{
            "name": "broken",
            "instances": [{"id": "a", "tool": "t"}],
            "connections": [
                {"source": "a", "target": "z", "dataType": "float",
                 "constraint": "required", "handling": "consumed"}
            ]
        }"#;
        match parse_workflow(doc.as_bytes()) {
            Err(WorkflowError::Invalid(Violation::DanglingEndpoint { id, .. })) => {
                assert_eq!(id, "z");
            }
            other => panic!("expected dangling endpoint, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_instance_id_is_reported() {
        let wf = Workflow {
            name: "dup".into(),
            instances: vec![
                ToolInstance { id: "x".into(), tool: "t".into(), label: None },
                ToolInstance { id: "x".into(), tool: "t".into(), label: None },
            ],
            connections: vec![],
        };
        let violations = validate_workflow(&wf);
        assert_eq!(violations, vec![Violation::DuplicateInstanceId { id: "x".into() }]);
    }

    #[test]
    fn self_loop_connection_is_legal_input() {
        let wf = Workflow {
            name: "loop".into(),
            instances: vec![ToolInstance { id: "a".into(), tool: "t".into(), label: None }],
            connections: vec![Connection {
                source: "a".into(),
                target: "a".into(),
                data_type: DataType::File,
                constraint: InputConstraint::None,
                handling: InputHandling::Constant,
            }],
        };
        assert!(validate_workflow(&wf).is_empty());
    }

    #[test]
    fn unknown_data_type_token() {
        let doc = r#"{
            "name": "bad",
            "instances": [{"id": "a", "tool": "t"}, {"id": "b", "tool": "t"}],
            "connections": [
                {"source": "a", "target": "b", "dataType": "blob",
                 "constraint": "required", "handling": "consumed"}
            ]
        }"#;
        match parse_workflow(doc.as_bytes()) {
            Err(WorkflowError::UnknownEnumValue { field, value }) => {
                assert_eq!(field, "dataType");
                assert_eq!(value, "blob");
            }
            other => panic!("expected unknown enum value, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_distinguished() {
        assert!(matches!(
            parse_workflow(b"{not json"),
            Err(WorkflowError::MalformedDocument(_))
        ));
    }

    #[test]
    fn round_trip_preserves_structure() {
        let wf = parse_workflow(minimal_doc().as_bytes()).unwrap();
        let reparsed = parse_workflow(serialize_workflow(&wf).as_bytes()).unwrap();
        assert_eq!(wf, reparsed);
    }
}

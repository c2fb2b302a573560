//! Seeded synthetic workflow generator with planted ground-truth groups.
//!
//! Models the "major tool plus helper tools" structure: instances fall into
//! groups, connect densely within a group and sparsely across groups. The
//! planted group of each instance is recorded in its `label`, so generated
//! workflows double as evaluation fixtures at arbitrary scale.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::workflow::{
    Connection, DataType, InputConstraint, InputHandling, ToolInstance, Workflow,
};

/// Parameters of one synthetic workflow.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub groups: usize,
    /// Inclusive range of instances per group; each group's size is drawn
    /// uniformly from it.
    pub instances_per_group: (usize, usize),
    pub intra_group_connection_probability: f64,
    pub inter_group_connection_probability: f64,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid synthetic spec: {0}")]
    InvalidSpec(String),
}

impl SyntheticSpec {
    fn validate(&self) -> Result<(), SynthError> {
        if self.groups < 1 {
            return Err(SynthError::InvalidSpec("groups must be >= 1".into()));
        }
        let (min, max) = self.instances_per_group;
        if min < 1 || min > max {
            return Err(SynthError::InvalidSpec(format!(
                "instances-per-group range {min}..={max} is not a valid non-empty range"
            )));
        }
        for (name, p) in [
            ("intra-group probability", self.intra_group_connection_probability),
            ("inter-group probability", self.inter_group_connection_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(SynthError::InvalidSpec(format!("{name} {p} is outside [0, 1]")));
            }
        }
        Ok(())
    }
}

const TOOL_POOL: [&str; 6] =
    ["solver", "converter", "preproc", "postproc", "merger", "reporter"];

/// Generate a workflow from the spec. Deterministic: the same spec always
/// produces the same workflow.
pub fn generate_workflow(spec: &SyntheticSpec) -> Result<Workflow, SynthError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (min, max) = spec.instances_per_group;

    let mut instances = Vec::new();
    let mut group_of = Vec::new();
    for group in 0..spec.groups {
        let size = rng.random_range(min..=max);
        for member in 0..size {
            let tool = if member == 0 { "solver" } else { TOOL_POOL[rng.random_range(1..TOOL_POOL.len())] };
            instances.push(ToolInstance {
                id: format!("g{group}_i{member}"),
                tool: tool.to_string(),
                label: Some(format!("group-{group}")),
            });
            group_of.push(group);
        }
    }

    let total = instances.len();
    let mut connections = Vec::new();
    for source in 0..total {
        for target in 0..total {
            if source == target {
                continue;
            }
            let probability = if group_of[source] == group_of[target] {
                spec.intra_group_connection_probability
            } else {
                spec.inter_group_connection_probability
            };
            if rng.random_bool(probability) {
                // Connected instance pairs usually exchange several values in
                // practice, so each connected pair gets one to three parallel
                // connections; they collapse to a single graph edge later.
                for _ in 0..rng.random_range(1..=3) {
                    connections.push(Connection {
                        source: instances[source].id.clone(),
                        target: instances[target].id.clone(),
                        data_type: DataType::ALL[rng.random_range(0..DataType::ALL.len())],
                        constraint: InputConstraint::ALL
                            [rng.random_range(0..InputConstraint::ALL.len())],
                        handling: InputHandling::ALL
                            [rng.random_range(0..InputHandling::ALL.len())],
                    });
                }
            }
        }
    }

    Ok(Workflow { name: format!("synthetic-{}", spec.seed), instances, connections })
}

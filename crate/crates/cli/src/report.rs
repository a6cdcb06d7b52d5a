use serde::Serialize;

use popmatch::gadgets::{ImproveRule, SizeReport};
use popmatch::popularity::Witness;
use popmatch::pvc::PvcInstance;
use popmatch::roommates::{Edge, PreferenceInstance, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InstanceStats {
    pub vertices: usize,
    pub edges: usize,
}

impl From<&PreferenceInstance> for InstanceStats {
    fn from(inst: &PreferenceInstance) -> Self {
        InstanceStats { vertices: inst.num_vertices(), edges: inst.num_edges() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PvcStats {
    pub vertices: usize,
    pub edges: usize,
    pub pairs: usize,
    pub triples: usize,
}

impl From<&PvcInstance> for PvcStats {
    fn from(pvc: &PvcInstance) -> Self {
        PvcStats {
            vertices: pvc.num_vertices(),
            edges: pvc.num_edges(),
            pairs: pvc.pairs().len(),
            triples: pvc.triples().len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Popularity {
    Popular,
    NotPopular,
}

/// Outcome of the characterization check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterizationResult {
    pub verdict: Popularity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// The matching obtained by applying the witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub improved: Option<Vec<Edge>>,
    pub search_nodes: u64,
}

/// Outcome of the brute-force check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForceResult {
    pub verdict: Popularity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub better: Option<Vec<Edge>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<i64>,
    pub matchings_enumerated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImprovementReport {
    pub rule: String,
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
    pub delta: i64,
    pub matching: Vec<Edge>,
}

impl ImprovementReport {
    pub fn new(rule: &ImproveRule, delta: i64, matching: Vec<Edge>) -> Self {
        ImprovementReport {
            rule: rule.tag.to_string(),
            removed: rule.removed.clone(),
            added: rule.added.clone(),
            delta,
            matching,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: usize,
    pub max_n: usize,
    pub instances_checked: usize,
    pub matchings_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divergence: Option<DivergenceReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivergenceReport {
    pub instance_index: usize,
    pub vertices: usize,
    pub edges: usize,
    pub matching: Vec<Edge>,
    pub characterization_popular: bool,
    pub bruteforce_popular: bool,
    pub instance_file: String,
    pub matching_file: String,
}

/// Everything a command reports, serialized as one JSON object. Absent
/// fields are omitted; field order is fixed so output is byte-stable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pvc: Option<PvcStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sizes: Option<SizeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characterization: Option<CharacterizationResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<BruteForceResult>,
    /// `Some(None)` serializes as `null`: asked for, none exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<Option<Vec<Edge>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<Option<Vec<Vertex>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_solution: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub improvement: Option<Option<ImprovementReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fuzz: Option<FuzzSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub written: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exit_code: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport { command, ..RunReport::default() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report types serialize infallibly")
    }
}

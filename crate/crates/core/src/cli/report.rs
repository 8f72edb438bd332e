//! Machine-readable check reports.

use serde::Serialize;
use serde_json::{json, Value};

use crate::decomposition::SignatureVector;
use crate::limits::Limits;
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub max_t: usize,
    pub max_support: usize,
    pub max_edges: usize,
    pub max_k: usize,
    pub max_subset_t: usize,
}

impl From<&Limits> for Caps {
    fn from(l: &Limits) -> Self {
        Caps {
            max_t: l.max_t,
            max_support: l.max_support,
            max_edges: l.max_edges,
            max_k: l.max_k,
            max_subset_t: l.max_subset_t,
        }
    }
}

/// One report per invocation. Key order is fixed, so identical inputs give
/// byte-identical output unless timing is requested.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: &'static str,
    pub version: &'static str,
    pub parameters: Value,
    pub verdict: bool,
    pub witnesses: Value,
    pub caps: Caps,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(check: &'static str, limits: &Limits, parameters: Value, verdict: bool, witnesses: Value) -> Self {
        Report {
            check,
            version: env!("CARGO_PKG_VERSION"),
            parameters,
            verdict,
            witnesses,
            caps: Caps::from(limits),
            notes: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// A partition as named blocks plus its restricted-growth string.
pub fn partition_json(p: &Partition, names: &[String]) -> Value {
    json!({ "blocks": p.named_blocks(names), "rgs": p.to_string() })
}

pub fn signature_json(s: &SignatureVector) -> Value {
    json!(s.0)
}

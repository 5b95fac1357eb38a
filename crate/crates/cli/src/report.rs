use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::codec::AttemptDoc;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Output of every command. `values` and `evidence` have a per-command shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub command: String,
    pub version: String,
    /// SHA-256 of the compact serialization of the parsed input.
    pub input_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub timing_us: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    pub values: Value,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub evidence: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub criteria_attempted: Vec<AttemptDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Result of replaying a report's evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecheckDocument {
    pub command: String,
    pub version: String,
    pub input_hash: String,
    pub ok: bool,
    /// Checks that were carried out, each with its outcome.
    pub checks: Vec<Check>,
    /// Claims that carry no replayable witness (e.g. "nothing found").
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub not_replayable: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

//! Input documents: a list of point configurations in a common ℤⁿ.

use std::collections::BTreeSet;
use std::fmt;

use latdefect::{Family, Point, PointConfiguration};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub ambient_dim: usize,
    pub configurations: Vec<ConfigurationDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub points: Vec<Point>,
}

/// A rejected input, located by line/column (syntax and type errors) or by
/// field path (everything else).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub message: String,
    pub field: Option<String>,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.field, self.line) {
            (Some(field), Some(line)) => write!(f, "{field} (line {line}, column {}): ", self.column.unwrap_or(0))?,
            (Some(field), None) => write!(f, "{field}: ")?,
            (None, Some(line)) => write!(f, "line {line}, column {}: ", self.column.unwrap_or(0))?,
            (None, None) => {}
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for InputError {}

fn at(field: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError {
        message: message.into(),
        field: Some(field.into()),
        line: None,
        column: None,
    }
}

/// Parses and validates a document. Duplicate points are dropped (first
/// occurrence kept) and reported in `warnings`.
pub fn parse_input(bytes: &[u8]) -> Result<InputDocument, InputError> {
    let text = std::str::from_utf8(bytes).map_err(|e| InputError {
        message: format!("input is not UTF-8: {e}"),
        field: None,
        line: None,
        column: None,
    })?;
    let de = &mut serde_json::Deserializer::from_str(text);
    let mut doc: InputDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        InputError {
            message: inner.to_string(),
            field: (path != ".").then_some(path),
            line: Some(inner.line()),
            column: Some(inner.column()),
        }
    })?;
    validate(&mut doc)?;
    Ok(doc)
}

fn validate(doc: &mut InputDocument) -> Result<(), InputError> {
    let n = doc.ambient_dim;
    if doc.configurations.is_empty() {
        return Err(at("configurations", "at least one configuration is required"));
    }
    for (i, c) in doc.configurations.iter_mut().enumerate() {
        if c.points.is_empty() {
            return Err(at(format!("configurations[{i}].points"), "configuration is empty"));
        }
        let mut seen = BTreeSet::new();
        let mut kept = Vec::with_capacity(c.points.len());
        for (j, p) in c.points.iter().enumerate() {
            if p.len() != n {
                return Err(at(
                    format!("configurations[{i}].points[{j}]"),
                    format!("point has {} coordinates, ambient_dim is {n}", p.len()),
                ));
            }
            if seen.insert(p.clone()) {
                kept.push(p.clone());
            } else {
                doc.warnings.push(format!("configurations[{i}].points[{j}]: duplicate point {p:?} removed"));
            }
        }
        c.points = kept;
    }
    Ok(())
}

impl InputDocument {
    pub fn from_family(f: &Family) -> Self {
        InputDocument {
            ambient_dim: f.ambient_dim(),
            configurations: f
                .members()
                .iter()
                .map(|a| ConfigurationDoc {
                    label: None,
                    points: a.points().to_vec(),
                })
                .collect(),
            warnings: Vec::new(),
        }
    }

    pub fn family(&self) -> latdefect::Result<Family> {
        let members = self
            .configurations
            .iter()
            .map(|c| PointConfiguration::new(self.ambient_dim, c.points.clone()))
            .collect::<latdefect::Result<_>>()?;
        Family::new(members)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("input documents always serialize")
    }

    /// SHA-256 of the compact serialization, so formatting does not matter.
    pub fn hash(&self) -> String {
        Sha256::digest(self.to_json().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

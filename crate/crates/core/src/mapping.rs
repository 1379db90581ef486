//! The per-table output record: canonical JSON serialization, validating
//! deserialization, and VALID / MISSING / EMPTY / ERROR classification of
//! mapping files on disk.
//!
//! Files live at `{output_folder}/{db_name}/{table_name}.json` with the
//! exact table spelling; [`mapping_file_path`] is the single source of that
//! layout.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::frames::is_valid_role_label;

/// One roleset mapped onto a table: role labels point at column names where
/// groundable, otherwise at free-text role descriptions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RolesetMapping {
    pub sense_id: String,
    pub lemma: String,
    pub definition: String,
    pub roles: BTreeMap<String, String>,
    /// Semantic-fit confidence in `[0, 1]`.
    pub confidence: f64,
}

/// The per-table result record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMappingOutput {
    pub table_name: String,
    pub mappings: Vec<RolesetMapping>,
}

/// Classification of one `(output folder, db, table)` triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum StatusKind {
    Valid,
    Missing,
    Empty,
    Error,
}

impl StatusKind {
    /// Tables in these states appear on the coordinator's todo list.
    pub fn needs_mapping(self) -> bool {
        !matches!(self, StatusKind::Valid)
    }
}

impl std::fmt::Display for StatusKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StatusKind::Valid => "VALID",
            StatusKind::Missing => "MISSING",
            StatusKind::Empty => "EMPTY",
            StatusKind::Error => "ERROR",
        };
        f.write_str(s)
    }
}

/// Status plus the first diagnostic that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingStatus {
    pub kind: StatusKind,
    pub detail: String,
}

impl MappingStatus {
    fn new(kind: StatusKind, detail: impl Into<String>) -> Self {
        MappingStatus { kind, detail: detail.into() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MappingError {
    #[error("malformed JSON: {0}")]
    Parse(String),
    #[error("schema validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("serialization refused: {}", .0.join("; "))]
    InvalidOutput(Vec<String>),
}

/// `{output_dir}/{db_name}/{table_name}.json`, exact table spelling.
pub fn mapping_file_path(output_dir: &Path, db_name: &str, table_name: &str) -> PathBuf {
    output_dir.join(db_name).join(format!("{table_name}.json"))
}

fn validate_mapping(index: usize, m: &RolesetMapping, violations: &mut Vec<String>) {
    let who = if m.sense_id.is_empty() {
        format!("mappings[{index}]")
    } else {
        format!("mapping {}", m.sense_id)
    };
    if m.sense_id.is_empty() {
        violations.push(format!("{who}: sense_id must be non-empty"));
    }
    if m.lemma.is_empty() {
        violations.push(format!("{who}: lemma must be non-empty"));
    }
    if !m.sense_id.is_empty()
        && !m.lemma.is_empty()
        && !m.sense_id.starts_with(&format!("{}.", m.lemma))
    {
        violations.push(format!(
            "{who}: sense_id \"{}\" must begin with lemma \"{}\" plus '.'",
            m.sense_id, m.lemma
        ));
    }
    for required in ["ARG0", "ARG1"] {
        if !m.roles.contains_key(required) {
            violations.push(format!("{who}: roles must contain {required}"));
        }
    }
    for label in m.roles.keys() {
        if !is_valid_role_label(label) {
            violations.push(format!("{who}: invalid role label \"{label}\""));
        }
    }
    if !(m.confidence >= 0.0 && m.confidence <= 1.0) {
        violations.push(format!(
            "{who}: confidence {} outside the [0, 1] range",
            m.confidence
        ));
    }
}

/// All invariant violations of `out` (empty means valid).
pub fn validate_output(out: &TableMappingOutput) -> Vec<String> {
    let mut violations = Vec::new();
    if out.table_name.is_empty() {
        violations.push("table_name must be non-empty".to_string());
    }
    for (i, m) in out.mappings.iter().enumerate() {
        validate_mapping(i, m, &mut violations);
        if !m.sense_id.is_empty()
            && out.mappings[i + 1..].iter().any(|o| o.sense_id == m.sense_id)
        {
            violations.push(format!("duplicate sense_id \"{}\" in mappings", m.sense_id));
        }
    }
    violations
}

/// Serializes to the canonical JSON document: keys in schema order, mappings
/// sorted by confidence descending then sense_id ascending, two-space
/// indentation, trailing newline. Refuses records that violate an invariant.
pub fn serialize_mapping(out: &TableMappingOutput) -> Result<Vec<u8>, MappingError> {
    let violations = validate_output(out);
    if !violations.is_empty() {
        return Err(MappingError::InvalidOutput(violations));
    }
    let mut sorted = out.clone();
    sorted.mappings.sort_by(|a, b| {
        b.confidence
            .partial_cmp(&a.confidence)
            .expect("confidence validated finite")
            .then_with(|| a.sense_id.cmp(&b.sense_id))
    });
    let mut bytes = serde_json::to_vec_pretty(&sorted)
        .map_err(|e| MappingError::Parse(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn expect_str(obj: &serde_json::Map<String, Value>, key: &str, violations: &mut Vec<String>) -> String {
    match obj.get(key) {
        Some(Value::String(s)) => s.clone(),
        Some(_) => {
            violations.push(format!("field \"{key}\" must be a string"));
            String::new()
        }
        None => {
            violations.push(format!("missing required field \"{key}\""));
            String::new()
        }
    }
}

/// Parses and validates a mapping document. Reports *every* violation, not
/// just the first; unknown extra keys are ignored.
pub fn deserialize_mapping(bytes: &[u8]) -> Result<TableMappingOutput, MappingError> {
    let value: Value =
        serde_json::from_slice(bytes).map_err(|e| MappingError::Parse(e.to_string()))?;

    let mut violations = Vec::new();
    let Some(root) = value.as_object() else {
        return Err(MappingError::Validation(vec![
            "document root must be a JSON object".to_string(),
        ]));
    };

    let table_name = expect_str(root, "table_name", &mut violations);
    let mut mappings = Vec::new();
    match root.get("mappings") {
        Some(Value::Array(items)) => {
            for (i, item) in items.iter().enumerate() {
                let Some(obj) = item.as_object() else {
                    violations.push(format!("mappings[{i}] must be an object"));
                    continue;
                };
                let mut roles = BTreeMap::new();
                match obj.get("roles") {
                    Some(Value::Object(map)) => {
                        for (label, v) in map {
                            match v.as_str() {
                                Some(s) => {
                                    roles.insert(label.clone(), s.to_string());
                                }
                                None => violations.push(format!(
                                    "mappings[{i}]: role \"{label}\" value must be a string"
                                )),
                            }
                        }
                    }
                    Some(_) => violations.push(format!("mappings[{i}]: \"roles\" must be an object")),
                    None => violations.push(format!("mappings[{i}]: missing required field \"roles\"")),
                }
                let confidence = match obj.get("confidence") {
                    Some(v) => match v.as_f64() {
                        Some(c) => c,
                        None => {
                            violations.push(format!("mappings[{i}]: \"confidence\" must be a number"));
                            f64::NAN
                        }
                    },
                    None => {
                        violations.push(format!("mappings[{i}]: missing required field \"confidence\""));
                        f64::NAN
                    }
                };
                let mut field_violations = Vec::new();
                let mapping = RolesetMapping {
                    sense_id: expect_str(obj, "sense_id", &mut field_violations),
                    lemma: expect_str(obj, "lemma", &mut field_violations),
                    definition: expect_str(obj, "definition", &mut field_violations),
                    roles,
                    confidence,
                };
                violations.extend(field_violations.iter().map(|v| format!("mappings[{i}]: {v}")));
                if field_violations.is_empty() && confidence.is_finite() {
                    validate_mapping(i, &mapping, &mut violations);
                }
                mappings.push(mapping);
            }
        }
        Some(_) => violations.push("field \"mappings\" must be an array".to_string()),
        None => violations.push("missing required field \"mappings\"".to_string()),
    }

    let out = TableMappingOutput { table_name, mappings };
    for (i, m) in out.mappings.iter().enumerate() {
        if !m.sense_id.is_empty() && out.mappings[i + 1..].iter().any(|o| o.sense_id == m.sense_id) {
            violations.push(format!("duplicate sense_id \"{}\" in mappings", m.sense_id));
        }
    }

    if violations.is_empty() {
        Ok(out)
    } else {
        Err(MappingError::Validation(violations))
    }
}

/// Classifies the mapping file for one table. Read-only; every failure maps
/// to a status rather than an error.
pub fn classify_mapping_file(output_dir: &Path, db_name: &str, table_name: &str) -> MappingStatus {
    let path = mapping_file_path(output_dir, db_name, table_name);
    let bytes = match fs::read(&path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            return MappingStatus::new(StatusKind::Missing, format!("no mapping file at {}", path.display()));
        }
        Err(e) => {
            return MappingStatus::new(StatusKind::Error, format!("unreadable {}: {e}", path.display()));
        }
    };
    let out = match deserialize_mapping(&bytes) {
        Ok(out) => out,
        Err(MappingError::Parse(msg)) => {
            return MappingStatus::new(StatusKind::Error, format!("malformed JSON: {msg}"));
        }
        Err(MappingError::Validation(violations)) => {
            let first = violations.first().cloned().unwrap_or_default();
            return MappingStatus::new(StatusKind::Error, format!("schema-invalid: {first}"));
        }
        Err(other) => return MappingStatus::new(StatusKind::Error, other.to_string()),
    };
    if out.table_name != table_name {
        return MappingStatus::new(
            StatusKind::Error,
            format!(
                "internal table_name \"{}\" does not match file for table \"{table_name}\"",
                out.table_name
            ),
        );
    }
    if out.mappings.is_empty() {
        return MappingStatus::new(StatusKind::Empty, "mappings array is empty");
    }
    MappingStatus::new(StatusKind::Valid, format!("{} mappings", out.mappings.len()))
}

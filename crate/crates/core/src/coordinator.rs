//! Read-only scan of an output folder: which tables have valid mappings and
//! which still need work.

use std::path::Path;

use indexmap::IndexMap;
use serde::Serialize;

use crate::ddl::Schema;
use crate::mapping::{classify_mapping_file, MappingStatus};

/// Per-table status plus the pending-work list, in schema order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinatorReport {
    pub db_name: String,
    /// Covers exactly the tables of the schema, in declaration order.
    pub statuses: IndexMap<String, MappingStatus>,
    /// Tables whose status is MISSING, EMPTY, or ERROR, in schema order.
    pub todo: Vec<String>,
}

/// Classifies every table of `schema` against `output_dir/db_name/`.
///
/// Pure with respect to the filesystem: nothing is created or modified, and
/// an absent or unreadable output directory simply shows up in the statuses
/// (all-MISSING or per-table ERROR).
pub fn coordinate(schema: &Schema, output_dir: &Path, db_name: &str) -> CoordinatorReport {
    let mut statuses = IndexMap::with_capacity(schema.tables.len());
    let mut todo = Vec::new();
    for table in &schema.tables {
        let status = classify_mapping_file(output_dir, db_name, &table.name);
        if status.kind.needs_mapping() {
            todo.push(table.name.clone());
        }
        statuses.insert(table.name.clone(), status);
    }
    CoordinatorReport { db_name: db_name.to_string(), statuses, todo }
}

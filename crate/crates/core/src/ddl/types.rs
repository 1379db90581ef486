//! Parsed schema structure and per-table context derivation.

use serde::Serialize;

use super::DdlError;

/// A parsed DDL schema: the ordered list of tables from one source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Schema {
    pub source_name: String,
    pub tables: Vec<Table>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<Column>,
    /// Column names of the primary key, in declaration order.
    pub primary_key: Vec<String>,
    pub foreign_keys: Vec<ForeignKey>,
    /// Body elements we do not model (CHECK, UNIQUE, COLLATE, ...), kept
    /// verbatim in canonical token form so round-trips preserve them.
    pub opaque_constraints: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Column {
    pub name: String,
    /// Type text as written in the DDL (canonical token spacing).
    pub declared_type: String,
    pub nullable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub default_expr: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForeignKey {
    pub local_columns: Vec<String>,
    pub referenced_table: String,
    /// Empty when the DDL omitted the column list; resolved to the
    /// referenced table's primary key at context-derivation time.
    pub referenced_columns: Vec<String>,
}

/// A table plus the foreign-key relations that touch it, the unit of work
/// the mapper consumes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableContext {
    pub table: Table,
    /// This table's own FKs, referenced columns resolved.
    pub outbound_refs: Vec<ForeignKey>,
    /// `(referencing table, fk)` for every FK in the schema that points at
    /// this table, sorted for statement-order independence.
    pub inbound_refs: Vec<(String, ForeignKey)>,
}

pub(crate) fn ci_eq(a: &str, b: &str) -> bool {
    a.eq_ignore_ascii_case(b)
}

impl Schema {
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| ci_eq(&t.name, name))
    }

    pub fn table_names(&self) -> impl Iterator<Item = &str> {
        self.tables.iter().map(|t| t.name.as_str())
    }
}

impl Table {
    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| ci_eq(&c.name, name))
    }

    pub fn is_primary_key_column(&self, name: &str) -> bool {
        self.primary_key.iter().any(|pk| ci_eq(pk, name))
    }

    pub fn is_foreign_key_column(&self, name: &str) -> bool {
        self.foreign_keys
            .iter()
            .any(|fk| fk.local_columns.iter().any(|c| ci_eq(c, name)))
    }
}

/// Resolves an FK against the schema: an omitted referenced-column list
/// becomes the referenced table's primary key (when that table is part of
/// the schema; external references stay as written).
fn resolve_fk(schema: &Schema, fk: &ForeignKey) -> ForeignKey {
    let mut fk = fk.clone();
    if fk.referenced_columns.is_empty() {
        if let Some(target) = schema.table(&fk.referenced_table) {
            fk.referenced_columns = target.primary_key.clone();
        }
    }
    fk
}

/// Derives the [`TableContext`] for `table_name` (case-insensitive match).
pub fn table_context(schema: &Schema, table_name: &str) -> Result<TableContext, DdlError> {
    let table = schema
        .table(table_name)
        .ok_or_else(|| DdlError::TableNotFound(table_name.to_string(), schema.source_name.clone()))?
        .clone();

    let outbound_refs = table.foreign_keys.iter().map(|fk| resolve_fk(schema, fk)).collect();

    let mut inbound_refs: Vec<(String, ForeignKey)> = Vec::new();
    for other in &schema.tables {
        for fk in &other.foreign_keys {
            if ci_eq(&fk.referenced_table, &table.name) {
                inbound_refs.push((other.name.clone(), resolve_fk(schema, fk)));
            }
        }
    }
    // Canonical order keeps contexts equal under statement permutation.
    inbound_refs.sort_by(|a, b| {
        (a.0.to_ascii_lowercase(), &a.1.local_columns).cmp(&(b.0.to_ascii_lowercase(), &b.1.local_columns))
    });

    Ok(TableContext { table, outbound_refs, inbound_refs })
}

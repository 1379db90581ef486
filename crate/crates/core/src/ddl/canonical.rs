//! Canonical DDL emission.
//!
//! The emitted text re-parses to an identical [`Schema`]: identifiers are
//! double-quoted, one element per line, table-level PK/FK clauses, opaque
//! constraints verbatim. Column-level NOT NULL is omitted for primary-key
//! columns (re-parsing restores it).

use std::fmt::Write;

use super::types::{Schema, Table};

fn quote(ident: &str) -> String {
    format!("\"{}\"", ident.replace('"', "\"\""))
}

fn quote_list(names: &[String]) -> String {
    names.iter().map(|n| quote(n)).collect::<Vec<_>>().join(", ")
}

/// Renders the schema in canonical form.
pub fn emit_schema(schema: &Schema) -> String {
    let mut out = String::new();
    for table in &schema.tables {
        emit_table(&mut out, table);
        out.push('\n');
    }
    out
}

fn emit_table(out: &mut String, table: &Table) {
    let _ = writeln!(out, "CREATE TABLE {} (", quote(&table.name));
    let mut elements: Vec<String> = Vec::new();

    for column in &table.columns {
        let mut line = quote(&column.name);
        if !column.declared_type.is_empty() {
            line.push(' ');
            line.push_str(&column.declared_type);
        }
        if !column.nullable && !table.is_primary_key_column(&column.name) {
            line.push_str(" NOT NULL");
        }
        if let Some(expr) = &column.default_expr {
            let _ = write!(line, " DEFAULT {expr}");
        }
        elements.push(line);
    }

    if !table.primary_key.is_empty() {
        elements.push(format!("PRIMARY KEY ({})", quote_list(&table.primary_key)));
    }
    for fk in &table.foreign_keys {
        let mut line = format!(
            "FOREIGN KEY ({}) REFERENCES {}",
            quote_list(&fk.local_columns),
            quote(&fk.referenced_table)
        );
        if !fk.referenced_columns.is_empty() {
            let _ = write!(line, " ({})", quote_list(&fk.referenced_columns));
        }
        elements.push(line);
    }
    elements.extend(table.opaque_constraints.iter().cloned());

    for (i, element) in elements.iter().enumerate() {
        let sep = if i + 1 == elements.len() { "" } else { "," };
        let _ = writeln!(out, "    {element}{sep}");
    }
    out.push_str(");\n");
}

//! Argument grounding: assigning table columns to roleset roles.

use std::collections::{BTreeMap, BTreeSet};

use crate::ddl::{ForeignKey, TableContext};
use crate::frames::Roleset;

use super::tokens::{name_tokens, singular_tokens, singularize};

/// Referenced-table tokens that mark an FK as agent-like.
const AGENT_TABLE_TOKENS: &[&str] = &["user", "person", "customer", "account"];

/// Tokens that mark a table or column as location-like.
const LOCATION_TOKENS: &[&str] = &["location", "place", "region", "city", "country", "address"];

/// Words ignored when matching role descriptions against column names.
const STOPWORDS: &[&str] = &[
    "of", "or", "for", "the", "a", "an", "to", "in", "on", "at", "by", "with", "from",
];

fn table_matches(table_name: &str, wanted: &[&str]) -> bool {
    singular_tokens(table_name).iter().any(|t| wanted.contains(&t.as_str()))
}

fn column_matches(column_name: &str, wanted: &[&str]) -> bool {
    name_tokens(column_name)
        .iter()
        .map(|t| singularize(t))
        .any(|t| wanted.contains(&t.as_str()))
}

fn first_local(fk: &ForeignKey) -> Option<&str> {
    fk.local_columns.first().map(String::as_str)
}

fn is_temporal_type(declared_type: &str) -> bool {
    let ty = declared_type.to_ascii_uppercase();
    ["TIMESTAMP", "DATETIME", "DATE", "TIME"].iter().any(|t| ty.contains(t))
}

/// Grounds roleset arguments to columns of the context table.
///
/// ARG0 and ARG1 are always present: a column when the agent/theme
/// heuristics find one, otherwise the role's own description (or the
/// generic proto-role name when the roleset does not define the role).
/// Remaining core roles and the ARGM-TMP / ARGM-LOC modifiers appear only
/// when a column matches; each column fills at most one role.
pub fn ground_arguments(roleset: &Roleset, ctx: &TableContext) -> BTreeMap<String, String> {
    let table = &ctx.table;
    let mut grounded = BTreeMap::new();
    let mut used: BTreeSet<String> = BTreeSet::new();

    // ARG0: FK to an agent-like table, else first FK column, else the
    // primary key.
    let arg0_col = ctx
        .outbound_refs
        .iter()
        .find(|fk| table_matches(&fk.referenced_table, AGENT_TABLE_TOKENS))
        .and_then(first_local)
        .or_else(|| ctx.outbound_refs.first().and_then(first_local))
        .or_else(|| table.primary_key.first().map(String::as_str))
        .map(str::to_string);
    match arg0_col {
        Some(col) => {
            used.insert(col.clone());
            grounded.insert("ARG0".to_string(), col);
        }
        None => {
            let fallback = roleset
                .role("ARG0")
                .map(|r| r.description.clone())
                .unwrap_or_else(|| "agent".to_string());
            grounded.insert("ARG0".to_string(), fallback);
        }
    }

    // ARG1: FK to a non-agent table, else first plain data column.
    let arg1_col = ctx
        .outbound_refs
        .iter()
        .filter(|fk| !table_matches(&fk.referenced_table, AGENT_TABLE_TOKENS))
        .filter_map(first_local)
        .find(|col| !used.contains(*col))
        .or_else(|| {
            table
                .columns
                .iter()
                .map(|c| c.name.as_str())
                .find(|name| {
                    !used.contains(*name)
                        && !table.is_primary_key_column(name)
                        && !table.is_foreign_key_column(name)
                })
        })
        .map(str::to_string);
    match arg1_col {
        Some(col) => {
            used.insert(col.clone());
            grounded.insert("ARG1".to_string(), col);
        }
        None => {
            let fallback = roleset
                .role("ARG1")
                .map(|r| r.description.clone())
                .unwrap_or_else(|| "theme".to_string());
            grounded.insert("ARG1".to_string(), fallback);
        }
    }

    // Remaining core roles ground on description/column token overlap.
    let mut remaining: Vec<_> = roleset
        .roles
        .iter()
        .filter(|r| matches!(r.label.as_str(), "ARG2" | "ARG3" | "ARG4"))
        .collect();
    remaining.sort_by(|a, b| a.label.cmp(&b.label));
    for role in remaining {
        let desc_tokens: Vec<String> = role
            .description
            .split(|c: char| !c.is_alphanumeric())
            .filter(|w| !w.is_empty())
            .map(|w| singularize(&w.to_lowercase()))
            .filter(|w| !STOPWORDS.contains(&w.as_str()))
            .collect();
        if desc_tokens.is_empty() {
            continue;
        }
        let hit = table.columns.iter().map(|c| c.name.as_str()).find(|name| {
            !used.contains(*name)
                && name_tokens(name)
                    .iter()
                    .map(|t| singularize(t))
                    .any(|t| desc_tokens.contains(&t))
        });
        if let Some(col) = hit {
            used.insert(col.to_string());
            grounded.insert(role.label.clone(), col.to_string());
        }
    }

    // ARGM-TMP: first unused timestamp-typed column.
    let tmp = table
        .columns
        .iter()
        .find(|c| !used.contains(&c.name) && is_temporal_type(&c.declared_type))
        .map(|c| c.name.clone());
    if let Some(col) = tmp {
        used.insert(col.clone());
        grounded.insert("ARGM-TMP".to_string(), col);
    }

    // ARGM-LOC: FK into a location-like table, else a location-named column.
    let loc = ctx
        .outbound_refs
        .iter()
        .filter(|fk| table_matches(&fk.referenced_table, LOCATION_TOKENS))
        .filter_map(first_local)
        .find(|col| !used.contains(*col))
        .map(str::to_string)
        .or_else(|| {
            table
                .columns
                .iter()
                .map(|c| c.name.as_str())
                .find(|name| !used.contains(*name) && column_matches(name, LOCATION_TOKENS))
                .map(str::to_string)
        });
    if let Some(col) = loc {
        grounded.insert("ARGM-LOC".to_string(), col);
    }

    grounded
}

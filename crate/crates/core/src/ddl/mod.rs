//! DDL schema analysis: a pragmatic `CREATE TABLE` parser, per-table
//! foreign-key context, and a canonical-form emitter.
//!
//! The dialect is the ANSI subset RelBench-style schemas actually use
//! (SQLite/Postgres-flavored `CREATE TABLE` with column- and table-level
//! `PRIMARY KEY` / `FOREIGN KEY` / `REFERENCES`). Everything else inside a
//! table body — `CHECK`, `UNIQUE`, `COLLATE`, and clauses we do not model —
//! is preserved verbatim as opaque constraint strings rather than rejected.
//! Statements other than `CREATE TABLE` are ignored entirely.

mod canonical;
mod lexer;
mod parser;
mod types;

pub use canonical::emit_schema;
pub use parser::parse_ddl;
pub use types::{table_context, Column, ForeignKey, Schema, Table, TableContext};

/// Errors from DDL parsing and table lookup.
#[derive(Debug, thiserror::Error)]
pub enum DdlError {
    #[error("parse error at byte {offset} in statement {statement:?}: {message}")]
    Parse {
        offset: usize,
        statement: String,
        message: String,
    },
    #[error("table \"{0}\" not found in schema \"{1}\"")]
    TableNotFound(String, String),
}

impl DdlError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            DdlError::Parse { offset, .. } => Some(*offset),
            DdlError::TableNotFound(..) => None,
        }
    }
}

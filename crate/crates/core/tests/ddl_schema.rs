//! DDL parsing against the vendored fixture schemas, with the hand-derived
//! foreign-key adjacency of rel-avito as the oracle.

use std::fs;
use std::path::Path;

use rolemap_core::ddl::{emit_schema, parse_ddl, table_context, DdlError};

fn sql_fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/sql").join(name);
    fs::read_to_string(path).unwrap()
}

fn rel_avito() -> rolemap_core::ddl::Schema {
    parse_ddl(&sql_fixture("rel_avito.sql"), "rel-avito").unwrap()
}

#[test]
fn rel_avito_has_exactly_the_eight_tables() {
    let schema = rel_avito();
    let names: Vec<&str> = schema.table_names().collect();
    assert_eq!(
        names,
        vec!["Users", "Categories", "Locations", "Ads", "AdInfo", "ItemInfo", "SearchInfo", "PhoneRequests"]
    );
}

#[test]
fn watch_store_has_two_tables() {
    let schema = parse_ddl(&sql_fixture("watch_store.sql"), "watch_store").unwrap();
    assert_eq!(schema.tables.len(), 2);
    assert_eq!(schema.tables[0].name, "watches");
    assert_eq!(schema.tables[1].name, "orders");
    let orders = schema.table("orders").unwrap();
    assert_eq!(orders.foreign_keys.len(), 1);
    assert_eq!(orders.foreign_keys[0].referenced_table, "watches");
}

#[test]
fn empty_input_parses_to_zero_tables() {
    let schema = parse_ddl("", "empty").unwrap();
    assert!(schema.tables.is_empty());
}

#[test]
fn non_create_table_statements_are_ignored() {
    let text = "-- comment\nCREATE INDEX idx ON t (a);\nINSERT INTO t VALUES (1);\n\
                CREATE TABLE t (a INTEGER PRIMARY KEY);";
    let schema = parse_ddl(text, "mixed").unwrap();
    assert_eq!(schema.tables.len(), 1);
}

#[test]
fn ads_context_matches_hand_derived_adjacency() {
    let schema = rel_avito();
    let ctx = table_context(&schema, "Ads").unwrap();

    let outbound: Vec<(&str, &str, &str)> = ctx
        .outbound_refs
        .iter()
        .map(|fk| {
            (
                fk.local_columns[0].as_str(),
                fk.referenced_table.as_str(),
                fk.referenced_columns[0].as_str(),
            )
        })
        .collect();
    assert_eq!(
        outbound,
        vec![
            ("UserID", "Users", "UserID"),
            ("CategoryID", "Categories", "CategoryID"),
            ("LocationID", "Locations", "LocationID"),
        ]
    );

    let inbound: Vec<(&str, &str)> = ctx
        .inbound_refs
        .iter()
        .map(|(table, fk)| (table.as_str(), fk.local_columns[0].as_str()))
        .collect();
    assert_eq!(
        inbound,
        vec![("AdInfo", "AdID"), ("ItemInfo", "AdID"), ("PhoneRequests", "AdID")]
    );
}

#[test]
fn self_referencing_fk_counts_as_inbound() {
    let schema = rel_avito();
    let ctx = table_context(&schema, "Categories").unwrap();
    let inbound: Vec<&str> = ctx.inbound_refs.iter().map(|(t, _)| t.as_str()).collect();
    assert_eq!(inbound, vec!["Ads", "Categories", "SearchInfo"]);
}

#[test]
fn inbound_totals_equal_in_schema_fk_totals() {
    let schema = rel_avito();
    let total_inbound: usize = schema
        .table_names()
        .map(|name| table_context(&schema, name).unwrap().inbound_refs.len())
        .sum();
    let total_fks: usize = schema
        .tables
        .iter()
        .flat_map(|t| &t.foreign_keys)
        .filter(|fk| schema.table(&fk.referenced_table).is_some())
        .count();
    assert_eq!(total_inbound, total_fks);
    assert_eq!(total_fks, 11, "fixture declares 11 in-schema FKs");
}

#[test]
fn unknown_table_context_is_an_error() {
    let schema = rel_avito();
    assert!(matches!(
        table_context(&schema, "NoSuchTable"),
        Err(DdlError::TableNotFound(name, _)) if name == "NoSuchTable"
    ));
}

#[test]
fn table_lookup_is_case_insensitive() {
    let schema = rel_avito();
    assert!(table_context(&schema, "phonerequests").is_ok());
    assert!(table_context(&schema, "PHONEREQUESTS").is_ok());
}

#[test]
fn isolated_table_has_empty_context_lists() {
    let schema = parse_ddl("CREATE TABLE lonely (id INTEGER PRIMARY KEY);", "solo").unwrap();
    let ctx = table_context(&schema, "lonely").unwrap();
    assert!(ctx.outbound_refs.is_empty());
    assert!(ctx.inbound_refs.is_empty());
}

#[test]
fn unbalanced_parentheses_report_the_byte_offset() {
    let text = "CREATE TABLE t (a INTEGER";
    let err = parse_ddl(text, "broken").unwrap_err();
    match err {
        DdlError::Parse { offset, statement, message } => {
            assert_eq!(offset, text.find('(').unwrap());
            assert!(statement.starts_with("CREATE TABLE t"));
            assert!(message.contains("unbalanced") || message.contains("never closed"));
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn truncated_create_table_is_an_error() {
    let err = parse_ddl("CREATE TABLE t", "broken").unwrap_err();
    assert!(matches!(err, DdlError::Parse { .. }));
}

#[test]
fn duplicate_table_names_are_rejected_case_insensitively() {
    let text = "CREATE TABLE Ads (a INTEGER); CREATE TABLE ads (b INTEGER);";
    let err = parse_ddl(text, "dup").unwrap_err();
    match err {
        DdlError::Parse { message, .. } => assert!(message.contains("duplicate table name")),
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn unsupported_body_clauses_become_opaque_constraints() {
    let text = "CREATE TABLE t (
        a INTEGER PRIMARY KEY,
        b VARCHAR(10) UNIQUE,
        c INTEGER CHECK (c > 0),
        UNIQUE (b, c),
        CHECK (a < 100)
    );";
    let schema = parse_ddl(text, "opaque").unwrap();
    let table = &schema.tables[0];
    assert_eq!(table.columns.len(), 3);
    assert_eq!(table.opaque_constraints.len(), 4);
    assert!(table.opaque_constraints.iter().any(|c| c.contains("UNIQUE") && c.contains("\"b\"")));
    assert!(table.opaque_constraints.iter().any(|c| c.starts_with("CHECK")));
}

#[test]
fn fk_without_column_list_resolves_to_target_pk_in_context() {
    let text = "CREATE TABLE users (user_id INTEGER PRIMARY KEY);
                CREATE TABLE posts (id INTEGER PRIMARY KEY, author INTEGER REFERENCES users);";
    let schema = parse_ddl(text, "implicit").unwrap();
    // stored as written
    assert!(schema.table("posts").unwrap().foreign_keys[0].referenced_columns.is_empty());
    // resolved at context time
    let ctx = table_context(&schema, "posts").unwrap();
    assert_eq!(ctx.outbound_refs[0].referenced_columns, vec!["user_id"]);
    let users_ctx = table_context(&schema, "users").unwrap();
    assert_eq!(users_ctx.inbound_refs[0].1.referenced_columns, vec!["user_id"]);
}

#[test]
fn canonical_round_trip_on_fixture_schemas() {
    for (file, name) in [("rel_avito.sql", "rel-avito"), ("watch_store.sql", "watch_store")] {
        let first = parse_ddl(&sql_fixture(file), name).unwrap();
        let emitted = emit_schema(&first);
        let second = parse_ddl(&emitted, name).unwrap();
        assert_eq!(first, second, "round-trip changed {file}");
        // and the canonical form itself is a fixed point
        assert_eq!(emitted, emit_schema(&second));
    }
}

#[test]
fn statement_permutation_leaves_contexts_equal() {
    let schema = rel_avito();
    // rebuild the DDL with tables in reverse order
    let mut reversed = schema.clone();
    reversed.tables.reverse();
    let permuted = parse_ddl(&emit_schema(&reversed), "rel-avito").unwrap();

    for name in schema.table_names() {
        let original = table_context(&schema, name).unwrap();
        let shuffled = table_context(&permuted, name).unwrap();
        assert_eq!(original, shuffled, "context for {name} changed under permutation");
    }
}

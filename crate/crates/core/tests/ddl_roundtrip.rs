//! Property: parsing arbitrary generated DDL and re-parsing its canonical
//! form yields an identical schema, and the canonical form is a fixed
//! point.

use proptest::prelude::*;

use rolemap_core::ddl::{emit_schema, parse_ddl};

fn ident_strategy() -> impl Strategy<Value = String> {
    prop_oneof![
        "[A-Za-z][A-Za-z0-9_]{0,7}",
        // names that force quoting in canonical form
        "[a-z]{1,4} [a-z]{1,4}",
        Just("we\"ird".to_string()),
        Just("select".to_string()),
    ]
}

fn type_strategy() -> impl Strategy<Value = &'static str> {
    prop_oneof![
        Just("INTEGER"),
        Just("VARCHAR(255)"),
        Just("DECIMAL(10, 2)"),
        Just("TEXT"),
        Just("TIMESTAMP"),
        Just("BOOLEAN"),
        Just("DOUBLE PRECISION"),
    ]
}

fn default_strategy() -> impl Strategy<Value = Option<&'static str>> {
    prop_oneof![
        Just(None),
        Just(Some("0")),
        Just(Some("'it''s'")),
        Just(Some("CURRENT_TIMESTAMP")),
        Just(Some("(1 + 2)")),
    ]
}

#[derive(Debug, Clone)]
struct GenColumn {
    name: String,
    ty: &'static str,
    not_null: bool,
    default: Option<&'static str>,
    unique: bool,
}

#[derive(Debug, Clone)]
struct GenTable {
    name: String,
    columns: Vec<GenColumn>,
    pk: Vec<usize>,
    fks: Vec<(usize, usize)>, // (local column, target table)
    check: bool,
}

fn column_strategy() -> impl Strategy<Value = GenColumn> {
    (ident_strategy(), type_strategy(), any::<bool>(), default_strategy(), any::<bool>()).prop_map(
        |(name, ty, not_null, default, unique)| GenColumn { name, ty, not_null, default, unique },
    )
}

fn table_strategy() -> impl Strategy<Value = GenTable> {
    (
        ident_strategy(),
        prop::collection::vec(column_strategy(), 1..5),
        prop::collection::vec(0usize..16, 0..2),
        prop::collection::vec((0usize..16, 0usize..16), 0..3),
        any::<bool>(),
    )
        .prop_map(|(name, columns, pk, fks, check)| GenTable { name, columns, pk, fks, check })
}

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('"', "\"\""))
}

/// Renders the generated structure as DDL text with deliberately uneven
/// spacing and mixed keyword casing.
fn render(tables: &[GenTable]) -> String {
    let mut out = String::new();
    for (ti, table) in tables.iter().enumerate() {
        let table_name = format!("{}{}", table.name, ti); // suffix forces distinct names
        out.push_str(&format!("create Table {} (\n", quote(&table_name)));
        let mut lines = Vec::new();
        for (ci, col) in table.columns.iter().enumerate() {
            let col_name = format!("{}{}", col.name, ci);
            let mut line = format!("  {} {}", quote(&col_name), col.ty);
            if col.not_null {
                line.push_str(" not NULL");
            }
            if let Some(d) = col.default {
                line.push_str(&format!(" DEFAULT {d}"));
            }
            if col.unique {
                line.push_str(" unique");
            }
            lines.push(line);
        }
        if !table.pk.is_empty() {
            let mut cols: Vec<String> = table
                .pk
                .iter()
                .map(|i| {
                    let ci = i % table.columns.len();
                    format!("{}{}", table.columns[ci].name, ci)
                })
                .collect();
            cols.dedup();
            cols.sort();
            cols.dedup();
            let cols: Vec<String> = cols.iter().map(|c| quote(c)).collect();
            lines.push(format!("  primary key ({})", cols.join(" , ")));
        }
        for (local, target) in &table.fks {
            let ci = local % table.columns.len();
            let local_name = format!("{}{}", table.columns[ci].name, ci);
            let tt = target % tables.len();
            let target_name = format!("{}{}", tables[tt].name, tt);
            // half the FKs omit the referenced column list
            if (local + target) % 2 == 0 {
                let t_ci = target % tables[tt].columns.len();
                let target_col = format!("{}{}", tables[tt].columns[t_ci].name, t_ci);
                lines.push(format!(
                    "  FOREIGN KEY ({}) references {} ({}) on delete cascade",
                    quote(&local_name),
                    quote(&target_name),
                    quote(&target_col)
                ));
            } else {
                lines.push(format!(
                    "  foreign key ({}) REFERENCES {}",
                    quote(&local_name),
                    quote(&target_name)
                ));
            }
        }
        if table.check {
            lines.push("  CHECK (1 > 0)".to_string());
        }
        out.push_str(&lines.join(",\n"));
        out.push_str("\n);\n-- a comment between statements\n");
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_round_trips(tables in prop::collection::vec(table_strategy(), 1..4)) {
        let text = render(&tables);
        let first = match parse_ddl(&text, "generated") {
            Ok(schema) => schema,
            Err(e) => return Err(TestCaseError::fail(format!("generator produced unparseable DDL: {e}\n{text}"))),
        };
        let emitted = emit_schema(&first);
        let second = parse_ddl(&emitted, "generated")
            .map_err(|e| TestCaseError::fail(format!("canonical form failed to parse: {e}\n{emitted}")))?;
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(emitted.clone(), emit_schema(&second));
    }
}

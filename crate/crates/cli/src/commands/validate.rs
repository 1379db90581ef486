//! `rolemap validate`: exit 0 only when every requested table is VALID.

use serde_json::json;

use rolemap_core::mapping::{classify_mapping_file, StatusKind};

use crate::config::{resolve_required, FileConfig};
use crate::output::status_table;
use crate::{ValidateArgs, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

pub fn run(args: ValidateArgs, file: &FileConfig) -> u8 {
    let output_folder = match resolve_required(args.output_folder.clone(), file.output_folder.clone(), "--out folder") {
        Ok(dir) => dir,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let schema = match super::parse_schema_or_exit(&args.ddl) {
        Ok(schema) => schema,
        Err(code) => return code,
    };
    let db = super::db_name(args.db.as_deref(), &args.ddl);

    let tables: Vec<String> = if args.tables.is_empty() {
        schema.table_names().map(String::from).collect()
    } else {
        for requested in &args.tables {
            if schema.table(requested).is_none() {
                eprintln!("error: unknown table \"{requested}\" (not in {})", args.ddl.display());
                return EXIT_DOMAIN;
            }
        }
        args.tables.clone()
    };

    let results: Vec<(String, rolemap_core::mapping::MappingStatus)> = tables
        .iter()
        .map(|t| (t.clone(), classify_mapping_file(&output_folder, &db, t)))
        .collect();
    let all_valid = results.iter().all(|(_, s)| s.kind == StatusKind::Valid);

    if args.json {
        let rows: Vec<_> = results
            .iter()
            .map(|(t, s)| json!({"table": t, "kind": s.kind, "detail": s.detail}))
            .collect();
        let doc = json!({"db_name": db, "results": rows, "all_valid": all_valid});
        println!("{}", serde_json::to_string_pretty(&doc).expect("document serializes"));
    } else {
        print!("{}", status_table(results.iter().map(|(t, s)| (t.as_str(), s))));
        println!("\n{}", if all_valid { "all tables VALID" } else { "validation failed" });
    }

    if all_valid {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    }
}

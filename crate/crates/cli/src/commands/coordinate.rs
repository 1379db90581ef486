//! `rolemap coordinate`: read-only status report.

use rolemap_core::coordinator::coordinate;

use crate::config::{resolve_required, FileConfig};
use crate::output::status_table;
use crate::{CoordinateArgs, EXIT_OK, EXIT_USAGE};

pub fn run(args: CoordinateArgs, file: &FileConfig) -> u8 {
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
    let report = coordinate(&schema, &output_folder, &db);

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", status_table(report.statuses.iter().map(|(t, s)| (t.as_str(), s))));
        if report.todo.is_empty() {
            println!("\nnothing to do: all {} tables VALID", report.statuses.len());
        } else {
            println!("\n{} of {} tables need mapping: {}", report.todo.len(), report.statuses.len(), report.todo.join(", "));
        }
    }
    EXIT_OK
}

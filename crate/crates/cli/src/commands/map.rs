//! `rolemap map`: run the orchestrated pipeline and report the outcome.

use rolemap_core::mapper::{BaselineVerbProvider, Lexicon, MapperConfig};
use rolemap_core::orchestrator;

use crate::config::{resolve, resolve_required, FileConfig};
use crate::output::status_table;
use crate::{MapArgs, EXIT_DOMAIN, EXIT_FATAL, EXIT_OK, EXIT_USAGE};

pub fn run(args: MapArgs, file: &FileConfig) -> u8 {
    let frames_dir = match resolve_required(args.frames_dir.clone(), file.frames_dir.clone(), "--frames directory") {
        Ok(dir) => dir,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let output_folder = match resolve_required(args.output_folder.clone(), file.output_folder.clone(), "--out folder") {
        Ok(dir) => dir,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };

    let cfg = MapperConfig {
        max_rolesets_per_table: resolve(args.max_rolesets_per_table, file.max_rolesets_per_table, 15).max(1),
        num_verbs: resolve(args.num_verbs, file.num_verbs, 5).max(1),
        min_confidence: resolve(args.min_confidence, file.min_confidence, 0.0),
    };
    let concurrency = resolve(args.concurrency, file.concurrency, 4).max(1);

    let index = match super::load_index_or_exit(&frames_dir) {
        Ok(index) => index,
        Err(code) => return code,
    };
    let provider = BaselineVerbProvider::new(index.clone(), Lexicon::shipped());
    let db = super::db_name(args.db.as_deref(), &args.ddl);

    let report = match orchestrator::run(
        &args.ddl,
        &db,
        &output_folder,
        &cfg,
        &provider,
        &index,
        concurrency,
        args.max_iterations,
    ) {
        Ok(report) => report,
        Err(e @ orchestrator::OrchestratorError::Locked { .. }) => {
            eprintln!("error: {e}");
            return EXIT_DOMAIN;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FATAL;
        }
    };

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", status_table(report.final_statuses.iter().map(|(t, s)| (t.as_str(), s))));
        println!(
            "\n{} tables mapped this run{}",
            report.tables_mapped_this_run.len(),
            if report.tables_mapped_this_run.is_empty() {
                String::new()
            } else {
                format!(" ({})", report.tables_mapped_this_run.join(", "))
            }
        );
        println!("iterations: {}, elapsed: {:.2}s", report.iterations, report.elapsed.as_secs_f64());
        for failure in &report.failures {
            println!("FAILED {}: {}", failure.table, failure.error);
        }
    }

    if report.complete() {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    }
}

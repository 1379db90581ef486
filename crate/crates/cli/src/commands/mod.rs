pub mod coordinate;
pub mod frames;
pub mod map;
pub mod serve;
pub mod validate;

use std::path::Path;
use std::sync::Arc;

use rolemap_core::ddl::{parse_ddl, Schema};
use rolemap_core::frames::{load_frame_corpus, FrameIndex};

use crate::EXIT_FATAL;

/// Loads the corpus or reports a fatal error (exit 2).
pub fn load_index_or_exit(frames_dir: &Path) -> Result<Arc<FrameIndex>, u8> {
    match load_frame_corpus(frames_dir) {
        Ok((index, report)) => {
            if !report.failed_files.is_empty() {
                eprintln!(
                    "warning: skipped {} unparseable frame file(s)",
                    report.failed_files.len()
                );
            }
            Ok(Arc::new(index))
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(EXIT_FATAL)
        }
    }
}

/// Reads and parses the DDL file or reports a fatal error (exit 2).
pub fn parse_schema_or_exit(ddl: &Path) -> Result<Schema, u8> {
    let text = match std::fs::read_to_string(ddl) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read DDL file {}: {e}", ddl.display());
            return Err(EXIT_FATAL);
        }
    };
    match parse_ddl(&text, &source_name(ddl)) {
        Ok(schema) => Ok(schema),
        Err(e) => {
            eprintln!("error: {e}");
            Err(EXIT_FATAL)
        }
    }
}

/// Database name defaults to the DDL file stem.
pub fn db_name(explicit: Option<&str>, ddl: &Path) -> String {
    explicit.map(String::from).unwrap_or_else(|| source_name(ddl))
}

fn source_name(ddl: &Path) -> String {
    ddl.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| ddl.display().to_string())
}

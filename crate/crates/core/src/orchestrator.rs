//! The coordinate/map loop: dispatch mappers over the todo list with
//! bounded parallelism until nothing is left or the iteration budget runs
//! out.
//!
//! Progress is the filesystem itself — a run killed halfway resumes where
//! it stopped because the coordinator skips tables that already have valid
//! files, and mappers write atomically so no torn file can poison a resume.

use std::collections::{BTreeMap, VecDeque};
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use indexmap::IndexMap;
use serde::Serialize;

use crate::coordinator::coordinate;
use crate::ddl::{parse_ddl, table_context, DdlError, Schema, TableContext};
use crate::frames::FrameIndex;
use crate::mapper::{map_table, MapperConfig, VerbProvider};
use crate::mapping::MappingStatus;

/// Outcome of one orchestrator run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    /// Coordinate passes performed inside the loop (>= 1).
    pub iterations: u32,
    /// Post-run status for every table of the schema, in schema order.
    pub final_statuses: IndexMap<String, MappingStatus>,
    /// Tables written by this run, in schema order.
    pub tables_mapped_this_run: Vec<String>,
    #[serde(serialize_with = "serialize_secs")]
    pub elapsed: Duration,
    /// Tables that still need mapping, with the last error seen for each.
    pub failures: Vec<TableFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableFailure {
    pub table: String,
    pub error: String,
}

fn serialize_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl RunReport {
    /// True when every table ended VALID.
    pub fn complete(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OrchestratorError {
    #[error("cannot read DDL file {path:?}: {source}")]
    DdlFile {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Ddl(#[from] DdlError),
    #[error("another run holds the lock {path:?} (pid {pid})")]
    Locked { path: PathBuf, pid: u32 },
    #[error("cannot create lock file {path:?}: {source}")]
    Lock {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Runs the full pipeline for one database.
///
/// Each iteration coordinates once and then maps every todo table with at
/// most `concurrency` mappers in flight; tables already VALID are never
/// rewritten. The loop ends when the todo list is empty or after
/// `max_iterations` coordinate passes (a final read-only pass then
/// refreshes the reported statuses).
#[allow(clippy::too_many_arguments)]
pub fn run(
    ddl_file: &Path,
    db_name: &str,
    output_folder: &Path,
    cfg: &MapperConfig,
    provider: &dyn VerbProvider,
    index: &FrameIndex,
    concurrency: usize,
    max_iterations: u32,
) -> Result<RunReport, OrchestratorError> {
    let started = Instant::now();
    let concurrency = concurrency.max(1);
    let max_iterations = max_iterations.max(1);

    let text = fs::read_to_string(ddl_file).map_err(|source| OrchestratorError::DdlFile {
        path: ddl_file.to_path_buf(),
        source,
    })?;
    let source_name = ddl_file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| db_name.to_string());
    let schema = parse_ddl(&text, &source_name)?;

    fs::create_dir_all(output_folder).map_err(|source| OrchestratorError::Lock {
        path: output_folder.to_path_buf(),
        source,
    })?;
    let _lock = LockFile::acquire(&output_folder.join(format!("{db_name}.lock")))?;
    sweep_stray_temp_files(&output_folder.join(db_name));

    let mut iterations = 0u32;
    let mut final_statuses = IndexMap::new();
    let mut mapped: Vec<String> = Vec::new();
    let mut last_errors: BTreeMap<String, String> = BTreeMap::new();
    let mut succeeded = false;

    while iterations < max_iterations {
        let report = coordinate(&schema, output_folder, db_name);
        iterations += 1;
        final_statuses = report.statuses;
        if report.todo.is_empty() {
            succeeded = true;
            break;
        }
        tracing::info!(iteration = iterations, todo = report.todo.len(), "mapping wave");
        let outcomes = run_wave(&schema, &report.todo, index, provider, cfg, output_folder, db_name, concurrency);
        for (table, outcome) in outcomes {
            match outcome {
                Ok(()) => {
                    last_errors.remove(&table);
                    if !mapped.contains(&table) {
                        mapped.push(table);
                    }
                }
                Err(message) => {
                    tracing::warn!(%table, %message, "mapper failed; will retry next iteration");
                    last_errors.insert(table, message);
                }
            }
        }
    }

    if !succeeded {
        // Budget exhausted right after a wave: refresh the report so it
        // reflects what that wave actually wrote.
        let report = coordinate(&schema, output_folder, db_name);
        final_statuses = report.statuses;
    }

    let failures: Vec<TableFailure> = final_statuses
        .iter()
        .filter(|(_, status)| status.kind.needs_mapping())
        .map(|(table, status)| TableFailure {
            table: table.clone(),
            error: last_errors.get(table).cloned().unwrap_or_else(|| status.detail.clone()),
        })
        .collect();

    let schema_order: Vec<&str> = schema.table_names().collect();
    mapped.sort_by_key(|t| schema_order.iter().position(|n| n == t));

    Ok(RunReport {
        iterations,
        final_statuses,
        tables_mapped_this_run: mapped,
        elapsed: started.elapsed(),
        failures,
    })
}

/// Removes half-written `.mapping-*.tmp` siblings a killed run may have
/// left. Only called with the advisory lock held.
fn sweep_stray_temp_files(db_dir: &Path) {
    let Ok(entries) = fs::read_dir(db_dir) else {
        return;
    };
    for entry in entries.flatten() {
        let name = entry.file_name();
        let name = name.to_string_lossy();
        if name.starts_with(".mapping-") && name.ends_with(".tmp") {
            tracing::warn!(file = %entry.path().display(), "removing stray temp file from an interrupted run");
            let _ = fs::remove_file(entry.path());
        }
    }
}

/// Maps the todo tables with at most `concurrency` workers.
#[allow(clippy::too_many_arguments)]
fn run_wave(
    schema: &Schema,
    todo: &[String],
    index: &FrameIndex,
    provider: &dyn VerbProvider,
    cfg: &MapperConfig,
    output_folder: &Path,
    db_name: &str,
    concurrency: usize,
) -> Vec<(String, Result<(), String>)> {
    let contexts: Vec<TableContext> = todo
        .iter()
        .map(|name| table_context(schema, name).expect("todo tables come from the schema"))
        .collect();

    let queue: Mutex<VecDeque<TableContext>> = Mutex::new(contexts.into());
    let results: Mutex<Vec<(String, Result<(), String>)>> = Mutex::new(Vec::new());

    std::thread::scope(|scope| {
        for _ in 0..concurrency.min(todo.len()) {
            scope.spawn(|| loop {
                let Some(ctx) = queue.lock().expect("queue lock").pop_front() else {
                    break;
                };
                let table = ctx.table.name.clone();
                let outcome = map_table(&ctx, index, provider, cfg, output_folder, db_name)
                    .map(|_| ())
                    .map_err(|e| e.to_string());
                results.lock().expect("results lock").push((table, outcome));
            });
        }
    });

    results.into_inner().expect("results lock")
}

/// Advisory lock file carrying the holder's pid. Stale locks (holder no
/// longer alive) are stolen so a killed run does not wedge the next one.
#[derive(Debug)]
struct LockFile {
    path: PathBuf,
}

impl LockFile {
    fn acquire(path: &Path) -> Result<LockFile, OrchestratorError> {
        for _ in 0..2 {
            match fs::OpenOptions::new().write(true).create_new(true).open(path) {
                Ok(mut file) => {
                    let _ = write!(file, "{}", std::process::id());
                    return Ok(LockFile { path: path.to_path_buf() });
                }
                Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                    match read_holder(path) {
                        Some(pid) if process_alive(pid) => {
                            return Err(OrchestratorError::Locked { path: path.to_path_buf(), pid });
                        }
                        _ => {
                            tracing::warn!(lock = %path.display(), "removing stale lock file");
                            let _ = fs::remove_file(path);
                        }
                    }
                }
                Err(source) => {
                    return Err(OrchestratorError::Lock { path: path.to_path_buf(), source })
                }
            }
        }
        Err(OrchestratorError::Lock {
            path: path.to_path_buf(),
            source: io::Error::other("lock contention"),
        })
    }
}

impl Drop for LockFile {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

fn read_holder(path: &Path) -> Option<u32> {
    let mut text = String::new();
    fs::File::open(path).ok()?.read_to_string(&mut text).ok()?;
    text.trim().parse().ok()
}

#[cfg(unix)]
fn process_alive(pid: u32) -> bool {
    // kill(pid, 0) probes existence; EPERM still means the process exists.
    let rc = unsafe { libc::kill(pid as libc::pid_t, 0) };
    rc == 0 || io::Error::last_os_error().raw_os_error() == Some(libc::EPERM)
}

#[cfg(not(unix))]
fn process_alive(_pid: u32) -> bool {
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lock_is_exclusive_while_held_and_released_on_drop() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("db.lock");
        let lock = LockFile::acquire(&path).unwrap();
        let err = LockFile::acquire(&path).unwrap_err();
        assert!(matches!(err, OrchestratorError::Locked { pid, .. } if pid == std::process::id()));
        drop(lock);
        assert!(!path.exists());
        let _relock = LockFile::acquire(&path).unwrap();
    }

    #[test]
    fn stale_lock_is_stolen() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("db.lock");
        fs::write(&path, "999999999").unwrap(); // pid space is far smaller
        let _lock = LockFile::acquire(&path).unwrap();
        let holder = read_holder(&path).unwrap();
        assert_eq!(holder, std::process::id());
    }
}

//! Sandboxed filesystem tools: `list_directory`, `read_text_file` (with
//! `read_file` alias), and `write_file`.
//!
//! Every path is canonicalized — symlinks resolved — before the containment
//! check against the allowed directories, so neither `..` traversal nor
//! symlink indirection can reach outside the sandbox. Escape attempts
//! surface as `access denied` tool errors, never as protocol errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Component, Path, PathBuf};
use std::sync::Arc;

use parking_lot::Mutex;
use serde_json::json;

use crate::server::McpServer;
use crate::tool::{object_schema, Tool, ToolResult};

/// Sandbox configuration: at least one allowed root, all canonicalized.
#[derive(Debug, Clone)]
pub struct FsServerConfig {
    allowed_dirs: Vec<PathBuf>,
    read_only: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum FsConfigError {
    #[error("at least one allowed directory is required")]
    NoAllowedDirs,
    #[error("allowed directory {path:?} cannot be canonicalized: {source}")]
    BadAllowedDir {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl FsServerConfig {
    pub fn new(allowed_dirs: Vec<PathBuf>, read_only: bool) -> Result<Self, FsConfigError> {
        if allowed_dirs.is_empty() {
            return Err(FsConfigError::NoAllowedDirs);
        }
        let mut canonical = Vec::with_capacity(allowed_dirs.len());
        for dir in allowed_dirs {
            let c = fs::canonicalize(&dir)
                .map_err(|source| FsConfigError::BadAllowedDir { path: dir.clone(), source })?;
            canonical.push(c);
        }
        Ok(FsServerConfig { allowed_dirs: canonical, read_only })
    }

    pub fn allowed_dirs(&self) -> &[PathBuf] {
        &self.allowed_dirs
    }

    pub fn read_only(&self) -> bool {
        self.read_only
    }

    fn contains(&self, canonical: &Path) -> bool {
        self.allowed_dirs.iter().any(|dir| canonical.starts_with(dir))
    }
}

enum Resolved {
    Existing(PathBuf),
    /// In-sandbox path that does not exist yet; `parent_exists` reflects the
    /// immediate parent.
    Missing { path: PathBuf, parent_exists: bool },
}

/// Canonicalizes `raw` and checks containment. Relative paths resolve
/// against the first allowed directory.
fn resolve(config: &FsServerConfig, raw: &str) -> Result<Resolved, String> {
    let given = Path::new(raw);
    let absolute = if given.is_absolute() {
        given.to_path_buf()
    } else {
        config.allowed_dirs[0].join(given)
    };

    match fs::canonicalize(&absolute) {
        Ok(canonical) => {
            if config.contains(&canonical) {
                Ok(Resolved::Existing(canonical))
            } else {
                Err(format!("access denied: {raw}"))
            }
        }
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            // Split into the deepest existing ancestor and the missing tail;
            // the tail cannot contain `..` (a missing directory cannot be a
            // symlink, but we refuse to reason through it anyway).
            let mut ancestor = absolute.clone();
            let mut tail = PathBuf::new();
            loop {
                match fs::canonicalize(&ancestor) {
                    Ok(canonical_ancestor) => {
                        for component in tail.components() {
                            match component {
                                Component::Normal(_) => {}
                                Component::CurDir => {}
                                _ => return Err(format!("access denied: {raw}")),
                            }
                        }
                        let resolved = canonical_ancestor.join(&tail);
                        if !config.contains(&resolved) {
                            return Err(format!("access denied: {raw}"));
                        }
                        let parent_exists = resolved
                            .parent()
                            .is_some_and(|p| p.exists());
                        return Ok(Resolved::Missing { path: resolved, parent_exists });
                    }
                    Err(e) if e.kind() == io::ErrorKind::NotFound => {
                        let Some(parent) = ancestor.parent().map(Path::to_path_buf) else {
                            return Err(format!("access denied: {raw}"));
                        };
                        let name = ancestor
                            .file_name()
                            .map(PathBuf::from)
                            .unwrap_or_default();
                        tail = if tail.as_os_str().is_empty() { name } else { name.join(&tail) };
                        ancestor = parent;
                    }
                    Err(e) => return Err(format!("not accessible: {raw} ({e})")),
                }
            }
        }
        Err(e) => Err(format!("not accessible: {raw} ({e})")),
    }
}

/// Builds the filesystem server for the given sandbox.
pub fn fs_server(config: FsServerConfig) -> McpServer {
    let config = Arc::new(config);
    let write_lock = Arc::new(Mutex::new(()));

    let list_config = Arc::clone(&config);
    let list_directory = Tool::new(
        "list_directory",
        "List directory entries (sorted by name, with kind markers) inside the sandbox.",
        object_schema(
            json!({"path": {"type": "string", "description": "Directory to list"}}),
            &["path"],
        ),
        move |args| {
            let raw = args["path"].as_str().unwrap_or_default();
            let path = match resolve(&list_config, raw) {
                Ok(Resolved::Existing(p)) => p,
                Ok(Resolved::Missing { .. }) => return ToolResult::error(format!("not found: {raw}")),
                Err(message) => return ToolResult::error(message),
            };
            let entries = match fs::read_dir(&path) {
                Ok(iter) => iter,
                Err(e) => return ToolResult::error(format!("cannot list {raw}: {e}")),
            };
            let mut listed: Vec<(String, &'static str)> = Vec::new();
            for entry in entries.flatten() {
                let kind = match entry.file_type() {
                    Ok(t) if t.is_dir() => "dir",
                    Ok(t) if t.is_file() => "file",
                    _ => "other",
                };
                listed.push((entry.file_name().to_string_lossy().into_owned(), kind));
            }
            listed.sort();
            let entries: Vec<_> = listed
                .into_iter()
                .map(|(name, kind)| json!({"name": name, "kind": kind}))
                .collect();
            ToolResult::json(&json!({"path": path.display().to_string(), "entries": entries}))
        },
    );

    let read_config = Arc::clone(&config);
    let read_text_file = Tool::new(
        "read_text_file",
        "Read a UTF-8 text file inside the sandbox and return its content.",
        object_schema(
            json!({"path": {"type": "string", "description": "File to read"}}),
            &["path"],
        ),
        move |args| {
            let raw = args["path"].as_str().unwrap_or_default();
            let path = match resolve(&read_config, raw) {
                Ok(Resolved::Existing(p)) => p,
                Ok(Resolved::Missing { .. }) => return ToolResult::error(format!("not found: {raw}")),
                Err(message) => return ToolResult::error(message),
            };
            match fs::read(&path) {
                Ok(bytes) => match String::from_utf8(bytes) {
                    Ok(text) => ToolResult::text(text),
                    Err(_) => ToolResult::error(format!("not valid UTF-8: {raw}")),
                },
                Err(e) if e.kind() == io::ErrorKind::NotFound => {
                    ToolResult::error(format!("not found: {raw}"))
                }
                Err(e) => ToolResult::error(format!("cannot read {raw}: {e}")),
            }
        },
    );
    let read_file = read_text_file.aliased(
        "read_file",
        "Alias of read_text_file: read a UTF-8 text file inside the sandbox.",
    );

    let write_config = Arc::clone(&config);
    let write_file = Tool::new(
        "write_file",
        "Write a UTF-8 text file atomically (temp file + rename) inside the sandbox; rejected on read-only servers.",
        object_schema(
            json!({
                "path": {"type": "string", "description": "Destination file"},
                "content": {"type": "string", "description": "Full file content"},
            }),
            &["path", "content"],
        ),
        move |args| {
            if write_config.read_only() {
                return ToolResult::error("access denied: server is read-only");
            }
            let raw = args["path"].as_str().unwrap_or_default();
            let content = args["content"].as_str().unwrap_or_default();
            let path = match resolve(&write_config, raw) {
                Ok(Resolved::Existing(p)) => {
                    if p.is_dir() {
                        return ToolResult::error(format!("cannot write {raw}: is a directory"));
                    }
                    p
                }
                Ok(Resolved::Missing { path, parent_exists }) => {
                    if !parent_exists {
                        return ToolResult::error(format!("not found: parent directory of {raw}"));
                    }
                    path
                }
                Err(message) => return ToolResult::error(message),
            };
            let _guard = write_lock.lock();
            match atomic_write(&path, content.as_bytes()) {
                Ok(()) => ToolResult::json(&json!({
                    "path": path.display().to_string(),
                    "bytes_written": content.len(),
                })),
                Err(e) => ToolResult::error(format!("cannot write {raw}: {e}")),
            }
        },
    );

    McpServer::new("rolemap-fs", env!("CARGO_PKG_VERSION"))
        .with_tool(list_directory)
        .with_tool(read_text_file)
        .with_tool(read_file)
        .with_tool(write_file)
}

fn atomic_write(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let parent = path
        .parent()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "no parent directory"))?;
    let mut tmp = tempfile::Builder::new().prefix(".fswrite-").tempfile_in(parent)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

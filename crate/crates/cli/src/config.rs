//! Layered configuration: flags beat ROLEMAP_* environment variables
//! (clap handles those two), and both beat the optional TOML config file.

use std::path::{Path, PathBuf};

use serde::Deserialize;

/// Values an optional `rolemap.toml` can provide.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub frames_dir: Option<PathBuf>,
    pub output_folder: Option<PathBuf>,
    pub concurrency: Option<usize>,
    pub max_rolesets_per_table: Option<usize>,
    pub num_verbs: Option<usize>,
    pub min_confidence: Option<f64>,
    pub log_level: Option<String>,
}

impl FileConfig {
    /// Loads the explicit path when given (missing file is then an error);
    /// otherwise `rolemap.toml` in the working directory when present.
    pub fn load(explicit: Option<&Path>) -> Result<Self, String> {
        let path = match explicit {
            Some(path) => path.to_path_buf(),
            None => {
                let default = PathBuf::from("rolemap.toml");
                if !default.exists() {
                    return Ok(FileConfig::default());
                }
                default
            }
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config file {}: {e}", path.display()))
    }
}

/// First present value wins; `fallback` is the built-in default.
pub fn resolve<T: Clone>(flag: Option<T>, file: Option<T>, fallback: T) -> T {
    flag.or(file).unwrap_or(fallback)
}

/// Like [`resolve`] but with no default: absence is a usage error the
/// caller reports.
pub fn resolve_required<T: Clone>(flag: Option<T>, file: Option<T>, what: &str) -> Result<T, String> {
    flag.or(file)
        .ok_or_else(|| format!("missing {what}: pass the flag, set the environment variable, or add it to the config file"))
}

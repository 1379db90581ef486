//! The immutable frame index and corpus loading.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use super::types::{Roleset, RolesetSummary};
use super::xml::parse_frame_file;
use super::FrameError;

/// Immutable corpus of rolesets with a lemma/alias inverted index.
///
/// Safe to share across threads once built; all lookups are read-only.
#[derive(Debug, Default)]
pub struct FrameIndex {
    rolesets: BTreeMap<String, Roleset>,
    lemma_index: BTreeMap<String, BTreeSet<String>>,
}

/// What happened during a corpus load. Emitted as log lines and kept for
/// callers that want to surface skipped files.
#[derive(Debug, Default)]
pub struct LoadReport {
    pub files_scanned: usize,
    pub files_parsed: usize,
    /// `(path, reason)` for every file that failed to parse.
    pub failed_files: Vec<(PathBuf, String)>,
    /// Rolesets dropped because their sense id was already taken.
    pub duplicate_sense_ids: Vec<String>,
}

impl FrameIndex {
    /// Builds an index from already-parsed rolesets (duplicate sense ids
    /// keep the first occurrence).
    pub fn from_rolesets(rolesets: Vec<Roleset>) -> Self {
        let mut index = FrameIndex::default();
        let mut report = LoadReport::default();
        for roleset in rolesets {
            index.insert(roleset, &mut report);
        }
        index
    }

    /// Index-key normalization: trim, lowercase, and map internal
    /// whitespace runs to `_` so multiword aliases keep the keys
    /// whitespace-free. Queries go through the same function.
    pub fn normalize(token: &str) -> String {
        let mut out = String::with_capacity(token.len());
        let mut in_space = false;
        for ch in token.trim().chars() {
            if ch.is_whitespace() {
                in_space = true;
                continue;
            }
            if in_space && !out.is_empty() {
                out.push('_');
            }
            in_space = false;
            for lower in ch.to_lowercase() {
                out.push(lower);
            }
        }
        out
    }

    fn insert(&mut self, roleset: Roleset, report: &mut LoadReport) {
        if self.rolesets.contains_key(&roleset.sense_id) {
            tracing::warn!(sense_id = %roleset.sense_id, "duplicate sense id; keeping first");
            report.duplicate_sense_ids.push(roleset.sense_id);
            return;
        }
        let mut keys: BTreeSet<String> = BTreeSet::new();
        keys.insert(Self::normalize(&roleset.lemma));
        for alias in &roleset.aliases {
            keys.insert(Self::normalize(alias));
        }
        for key in keys {
            if !key.is_empty() {
                self.lemma_index
                    .entry(key)
                    .or_default()
                    .insert(roleset.sense_id.clone());
            }
        }
        self.rolesets.insert(roleset.sense_id.clone(), roleset);
    }

    /// Rolesets whose lemma or any alias equals `normalize(lemma)`,
    /// ordered by sense id, truncated to `max_results`. Unknown lemmas
    /// yield an empty list.
    pub fn search_by_lemma(&self, lemma: &str, max_results: usize) -> Vec<RolesetSummary> {
        let key = Self::normalize(lemma);
        let Some(ids) = self.lemma_index.get(&key) else {
            return Vec::new();
        };
        ids.iter()
            .take(max_results)
            .map(|id| self.rolesets[id].summary())
            .collect()
    }

    /// Full roleset lookup. With `include_examples` off the examples list
    /// comes back empty; roles and lexlinks are always included.
    pub fn search_by_sense_id(
        &self,
        sense_id: &str,
        include_examples: bool,
    ) -> Result<Roleset, FrameError> {
        let roleset = self
            .rolesets
            .get(sense_id.trim())
            .ok_or_else(|| FrameError::SenseNotFound(sense_id.trim().to_string()))?;
        let mut out = roleset.clone();
        if !include_examples {
            out.examples.clear();
        }
        Ok(out)
    }

    pub fn contains_sense(&self, sense_id: &str) -> bool {
        self.rolesets.contains_key(sense_id)
    }

    pub fn roleset_count(&self) -> usize {
        self.rolesets.len()
    }

    pub fn lemma_key_count(&self) -> usize {
        self.lemma_index.len()
    }

    pub fn rolesets(&self) -> impl Iterator<Item = &Roleset> {
        self.rolesets.values()
    }

    pub fn lemma_keys(&self) -> impl Iterator<Item = &str> {
        self.lemma_index.keys().map(String::as_str)
    }

    /// Whether `token` normalizes to a known lemma or alias.
    pub fn knows_token(&self, token: &str) -> bool {
        self.lemma_index.contains_key(&Self::normalize(token))
    }
}

/// Loads every `*.xml` file under `corpus_dir` into a [`FrameIndex`].
///
/// Files that fail to parse are skipped and recorded in the report; a
/// missing directory or a load that parses nothing is fatal.
pub fn load_frame_corpus(corpus_dir: &Path) -> Result<(FrameIndex, LoadReport), FrameError> {
    let entries = fs::read_dir(corpus_dir).map_err(|source| FrameError::CorpusUnreadable {
        path: corpus_dir.to_path_buf(),
        source,
    })?;

    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("xml")))
        .collect();
    paths.sort();

    let mut index = FrameIndex::default();
    let mut report = LoadReport::default();
    for path in paths {
        report.files_scanned += 1;
        let outcome = fs::read_to_string(&path)
            .map_err(|e| e.to_string())
            .and_then(|text| parse_frame_file(&text));
        match outcome {
            Ok(rolesets) => {
                report.files_parsed += 1;
                for roleset in rolesets {
                    index.insert(roleset, &mut report);
                }
            }
            Err(reason) => {
                tracing::warn!(file = %path.display(), %reason, "skipping frame file");
                report.failed_files.push((path, reason));
            }
        }
    }

    if report.files_parsed == 0 {
        return Err(FrameError::EmptyCorpus(corpus_dir.to_path_buf()));
    }

    tracing::info!(
        files_scanned = report.files_scanned,
        files_parsed = report.files_parsed,
        files_failed = report.failed_files.len(),
        rolesets = index.roleset_count(),
        lemma_keys = index.lemma_key_count(),
        "frame corpus loaded"
    );
    Ok((index, report))
}

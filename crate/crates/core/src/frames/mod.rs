//! PropBank frame corpus: roleset types, XML parsing, and the inverted index.
//!
//! The corpus is a directory of XML frame files in the `propbank-frames`
//! release layout (one `<frameset>` document per predicate). Loading builds
//! an immutable [`FrameIndex`] with a lemma/alias inverted index; the two
//! query operations ([`FrameIndex::search_by_lemma`] and
//! [`FrameIndex::search_by_sense_id`]) are what the query server exposes.

mod index;
mod types;
mod xml;

pub use index::{load_frame_corpus, FrameIndex, LoadReport};
pub use types::{
    is_valid_role_label, ArgumentSpan, FrameExample, LexLink, Role, Roleset, RolesetSummary,
};
pub use xml::parse_frame_file;

use std::io;
use std::path::PathBuf;

/// Errors from corpus loading and sense lookup.
#[derive(Debug, thiserror::Error)]
pub enum FrameError {
    #[error("frame corpus directory {path:?} is not readable: {source}")]
    CorpusUnreadable {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("no frame files could be parsed from {0:?}")]
    EmptyCorpus(PathBuf),
    #[error("unknown sense id \"{0}\"")]
    SenseNotFound(String),
}

//! Core library for mapping relational database schemas to PropBank rolesets.
//!
//! The crate is organized around the stages of the mapping pipeline:
//!
//! - **frames**: parse the PropBank frame-file corpus and answer lemma /
//!   sense-id queries over an immutable inverted index.
//! - **ddl**: parse `CREATE TABLE` statements into a [`ddl::Schema`] and
//!   derive per-table foreign-key context.
//! - **mapping**: the per-table output record, its canonical JSON form, and
//!   the VALID / MISSING / EMPTY / ERROR classification of files on disk.
//! - **coordinator**: read-only scan of an output folder producing the list
//!   of tables that still need mapping.
//! - **mapper**: the deterministic per-table pipeline (verbs, roleset
//!   candidates, argument grounding, confidence) behind a pluggable
//!   [`mapper::VerbProvider`] contract.
//! - **orchestrator**: the coordinate/map loop with bounded parallelism and
//!   idempotent resume.

pub mod coordinator;
pub mod ddl;
pub mod frames;
pub mod mapper;
pub mod mapping;
pub mod orchestrator;

pub use coordinator::{coordinate, CoordinatorReport};
pub use frames::{load_frame_corpus, FrameError, FrameIndex, LoadReport, Role, Roleset};
pub use mapper::{BaselineVerbProvider, MapperConfig, VerbProvider};
pub use mapping::{
    classify_mapping_file, deserialize_mapping, serialize_mapping, MappingStatus, RolesetMapping,
    StatusKind, TableMappingOutput,
};
pub use orchestrator::{run, RunReport};

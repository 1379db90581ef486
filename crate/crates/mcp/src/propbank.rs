//! The frame query server: two read-only tools over a shared index.

use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use rolemap_core::frames::{FrameIndex, RolesetSummary};

use crate::server::McpServer;
use crate::tool::{object_schema, Tool, ToolResult};

#[derive(Serialize)]
struct LemmaSearchAnswer {
    lemma: String,
    count: usize,
    matches: Vec<RolesetSummary>,
}

/// Builds the PropBank query server over an immutable index.
pub fn propbank_server(index: Arc<FrameIndex>) -> McpServer {
    let search_index = Arc::clone(&index);
    let search_by_lemma = Tool::new(
        "search_by_lemma",
        "Search rolesets by verb base form or morphological variant; returns sense_id, definition, and roles for each match.",
        object_schema(
            json!({
                "lemma": {"type": "string", "description": "Base verb form or variant to look up"},
                "max_results": {"type": "integer", "default": 10, "minimum": 1, "description": "Maximum number of matches returned"},
            }),
            &["lemma"],
        ),
        move |args| {
            let lemma = args["lemma"].as_str().unwrap_or_default();
            let max_results = args["max_results"].as_u64().unwrap_or(10) as usize;
            let matches = search_index.search_by_lemma(lemma, max_results);
            ToolResult::json(&LemmaSearchAnswer {
                lemma: FrameIndex::normalize(lemma),
                count: matches.len(),
                matches,
            })
        },
    );

    let sense_index = Arc::clone(&index);
    let search_by_sense_id = Tool::new(
        "search_by_sense_id",
        "Retrieve the complete frame for one sense id, including roles, lexlinks, and (optionally) annotated examples.",
        object_schema(
            json!({
                "sense_id": {"type": "string", "description": "Unique roleset identifier, e.g. order.02"},
                "include_examples": {"type": "boolean", "default": true, "description": "Include annotated example sentences"},
            }),
            &["sense_id"],
        ),
        move |args| {
            let sense_id = args["sense_id"].as_str().unwrap_or_default();
            let include_examples = args["include_examples"].as_bool().unwrap_or(true);
            match sense_index.search_by_sense_id(sense_id, include_examples) {
                Ok(roleset) => ToolResult::json(&roleset),
                Err(e) => ToolResult::error(e.to_string()),
            }
        },
    );

    McpServer::new("rolemap-propbank", env!("CARGO_PKG_VERSION"))
        .with_tool(search_by_lemma)
        .with_tool(search_by_sense_id)
}

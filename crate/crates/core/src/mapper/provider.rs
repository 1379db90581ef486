//! The verb-provider contract and its deterministic baseline.
//!
//! The reasoning step that proposes candidate action verbs for a table is
//! pluggable: an LLM-backed implementation can be slotted in without
//! touching the rest of the pipeline. Implementations must be `Send + Sync`
//! (the orchestrator calls them from worker threads) and should return
//! lowercase, non-empty, pairwise-distinct lemmas, at most `num_verbs` of
//! them; the pipeline re-normalizes defensively either way.

use std::sync::Arc;

use crate::ddl::TableContext;
use crate::frames::FrameIndex;

use super::lexicon::Lexicon;
use super::tokens::singular_tokens;

pub trait VerbProvider: Send + Sync {
    /// Ordered candidate verbs for the table described by `ctx`.
    fn verbs(&self, ctx: &TableContext, num_verbs: usize) -> Vec<String>;
}

/// Deterministic verb derivation from the table name:
/// 1. split the name on case boundaries, digits, and underscores;
/// 2. singularize plural tokens;
/// 3. keep tokens that are lemmas or aliases in the frame index;
/// 4. append expansions from the table-domain lexicon;
/// 5. truncate to `num_verbs`.
pub fn baseline_verbs(
    ctx: &TableContext,
    num_verbs: usize,
    index: &FrameIndex,
    lexicon: &Lexicon,
) -> Vec<String> {
    let tokens = singular_tokens(&ctx.table.name);
    let mut verbs: Vec<String> = Vec::new();

    for token in &tokens {
        if index.knows_token(token) && !verbs.contains(token) {
            verbs.push(token.clone());
        }
    }
    for token in &tokens {
        for expansion in lexicon.expansions(token) {
            if !expansion.is_empty() && !verbs.iter().any(|v| v == expansion) {
                verbs.push(expansion.clone());
            }
        }
    }

    verbs.truncate(num_verbs);
    verbs
}

/// [`VerbProvider`] wrapping [`baseline_verbs`] with a shared index and the
/// shipped lexicon.
#[derive(Clone)]
pub struct BaselineVerbProvider {
    index: Arc<FrameIndex>,
    lexicon: Lexicon,
}

impl BaselineVerbProvider {
    pub fn new(index: Arc<FrameIndex>, lexicon: Lexicon) -> Self {
        BaselineVerbProvider { index, lexicon }
    }
}

impl VerbProvider for BaselineVerbProvider {
    fn verbs(&self, ctx: &TableContext, num_verbs: usize) -> Vec<String> {
        baseline_verbs(ctx, num_verbs, &self.index, &self.lexicon)
    }
}

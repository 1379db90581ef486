//! Confidence scoring.
//!
//! kappa = clamp01(w1 * lemma_match + w2 * grounded_core_fraction + w3 * fk_support)
//!
//! with shipped weights w1 = 0.5, w2 = 0.3, w3 = 0.2:
//! - lemma_match: 1.0 when the producing verb is a table-name token, 0.5
//!   for lexicon expansions (recomputed from the context, never trusted
//!   from the provider);
//! - grounded_core_fraction: of the core roles (ARG0-ARG4) the roleset
//!   defines, the fraction grounded to real columns (0 when it defines
//!   none);
//! - fk_support: 1.0 when any grounded role is a foreign-key column.

use std::collections::BTreeMap;

use crate::ddl::TableContext;
use crate::frames::Roleset;

use super::ScoredCandidate;

/// The fixed weights; uniform positive scaling leaves candidate order
/// unchanged (only the clamp saturates differently).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreWeights {
    pub lemma_match: f64,
    pub core_grounding: f64,
    pub fk_support: f64,
}

impl Default for ScoreWeights {
    fn default() -> Self {
        ScoreWeights { lemma_match: 0.5, core_grounding: 0.3, fk_support: 0.2 }
    }
}

impl ScoreWeights {
    pub fn scaled(&self, factor: f64) -> Self {
        ScoreWeights {
            lemma_match: self.lemma_match * factor,
            core_grounding: self.core_grounding * factor,
            fk_support: self.fk_support * factor,
        }
    }
}

/// The three normalized signals the formula combines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreComponents {
    pub lemma_match: f64,
    pub core_fraction: f64,
    pub fk_support: f64,
}

pub fn clamp01(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Pre-clamp weighted sum; ranking compares these.
pub fn raw_score(weights: &ScoreWeights, c: &ScoreComponents) -> f64 {
    weights.lemma_match * c.lemma_match
        + weights.core_grounding * c.core_fraction
        + weights.fk_support * c.fk_support
}

/// Derives the score components for one grounded candidate.
pub fn score_components(
    roleset: &Roleset,
    grounded_roles: &BTreeMap<String, String>,
    from_table_token: bool,
    ctx: &TableContext,
) -> ScoreComponents {
    let lemma_match = if from_table_token { 1.0 } else { 0.5 };

    let core: Vec<&str> = roleset.core_roles().map(|r| r.label.as_str()).collect();
    let core_fraction = if core.is_empty() {
        0.0
    } else {
        let grounded = core
            .iter()
            .filter(|label| {
                grounded_roles
                    .get(**label)
                    .is_some_and(|value| ctx.table.column(value).is_some())
            })
            .count();
        grounded as f64 / core.len() as f64
    };

    let fk_support = if grounded_roles
        .values()
        .any(|value| ctx.table.is_foreign_key_column(value))
    {
        1.0
    } else {
        0.0
    };

    ScoreComponents { lemma_match, core_fraction, fk_support }
}

/// The final confidence for a candidate under the shipped weights.
pub fn estimate_confidence(candidate: &ScoredCandidate, ctx: &TableContext) -> f64 {
    let components = score_components(
        &candidate.roleset,
        &candidate.grounded_roles,
        candidate.provenance.table_token,
        ctx,
    );
    clamp01(raw_score(&ScoreWeights::default(), &components))
}

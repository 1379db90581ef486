//! The per-table mapping pipeline: verbs, roleset candidates, argument
//! grounding, confidence, persistence.

mod ground;
mod lexicon;
mod provider;
mod score;
mod tokens;

pub use ground::ground_arguments;
pub use lexicon::Lexicon;
pub use provider::{baseline_verbs, BaselineVerbProvider, VerbProvider};
pub use score::{
    clamp01, estimate_confidence, raw_score, score_components, ScoreComponents, ScoreWeights,
};
pub use tokens::{name_tokens, singular_tokens, singularize};

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::ddl::TableContext;
use crate::frames::{FrameIndex, Roleset};
use crate::mapping::{
    mapping_file_path, serialize_mapping, MappingError, RolesetMapping, TableMappingOutput,
};

/// Tuning knobs for one mapping run.
#[derive(Debug, Clone, PartialEq)]
pub struct MapperConfig {
    pub max_rolesets_per_table: usize,
    pub num_verbs: usize,
    /// Candidates scoring below this floor are dropped.
    pub min_confidence: f64,
}

impl Default for MapperConfig {
    fn default() -> Self {
        MapperConfig { max_rolesets_per_table: 15, num_verbs: 5, min_confidence: 0.0 }
    }
}

/// Which verb produced a candidate and whether that verb was a table-name
/// token (as opposed to a lexicon expansion).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbOrigin {
    pub lemma: String,
    pub table_token: bool,
}

/// A candidate roleset with grounded roles and its score.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredCandidate {
    pub roleset: Roleset,
    pub grounded_roles: BTreeMap<String, String>,
    pub confidence: f64,
    pub provenance: VerbOrigin,
}

#[derive(Debug, thiserror::Error)]
pub enum MapperError {
    #[error("failed to write mapping for table \"{table}\" to {path:?}: {source}")]
    Write {
        table: String,
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Serialize(#[from] MappingError),
}

/// Grounds and scores candidates, collapsing duplicates by sense id and
/// keeping the highest-scoring provenance. Output order follows first
/// occurrence; confidences carry the raw (pre-clamp) score until
/// [`estimate_confidence`] finalizes them.
pub fn rank_rolesets(
    candidates: &[(Roleset, VerbOrigin)],
    ctx: &TableContext,
) -> Vec<ScoredCandidate> {
    let weights = ScoreWeights::default();
    let mut ranked: Vec<ScoredCandidate> = Vec::new();
    for (roleset, origin) in candidates {
        let grounded_roles = ground_arguments(roleset, ctx);
        let components = score_components(roleset, &grounded_roles, origin.table_token, ctx);
        let confidence = raw_score(&weights, &components);
        match ranked.iter_mut().find(|c| c.roleset.sense_id == roleset.sense_id) {
            Some(existing) => {
                if confidence > existing.confidence {
                    existing.confidence = confidence;
                    existing.grounded_roles = grounded_roles;
                    existing.provenance = origin.clone();
                }
            }
            None => ranked.push(ScoredCandidate {
                roleset: roleset.clone(),
                grounded_roles,
                confidence,
                provenance: origin.clone(),
            }),
        }
    }
    ranked
}

/// Runs the whole pipeline for one table and atomically persists the result
/// to `{output_dir}/{db_name}/{table}.json`.
///
/// The file appears exactly once, on success; failures leave no partial
/// file behind.
pub fn map_table(
    ctx: &TableContext,
    index: &FrameIndex,
    provider: &dyn VerbProvider,
    cfg: &MapperConfig,
    output_dir: &Path,
    db_name: &str,
) -> Result<TableMappingOutput, MapperError> {
    let verbs = normalized_verbs(provider.verbs(ctx, cfg.num_verbs), cfg.num_verbs);
    let token_set = singular_tokens(&ctx.table.name);

    let mut candidates: Vec<(Roleset, VerbOrigin)> = Vec::new();
    for verb in &verbs {
        let origin = VerbOrigin {
            lemma: verb.clone(),
            table_token: token_set.iter().any(|t| t == verb),
        };
        for summary in index.search_by_lemma(verb, usize::MAX) {
            let roleset = index
                .search_by_sense_id(&summary.sense_id, false)
                .expect("sense ids from lemma search resolve");
            candidates.push((roleset, origin.clone()));
        }
    }

    let mut scored = rank_rolesets(&candidates, ctx);
    for candidate in &mut scored {
        candidate.confidence = estimate_confidence(candidate, ctx);
    }
    scored.retain(|c| c.confidence >= cfg.min_confidence);
    scored.sort_by(|a, b| {
        b.confidence
            .partial_cmp(&a.confidence)
            .expect("confidences are finite")
            .then_with(|| a.roleset.sense_id.cmp(&b.roleset.sense_id))
    });
    scored.truncate(cfg.max_rolesets_per_table);

    let output = TableMappingOutput {
        table_name: ctx.table.name.clone(),
        mappings: scored
            .into_iter()
            .map(|c| {
                // the record's lemma is the sense id's own prefix, which can
                // differ from the predicate lemma in irregular corpora
                let lemma = c
                    .roleset
                    .sense_id
                    .split_once('.')
                    .map(|(prefix, _)| prefix.to_string())
                    .unwrap_or_else(|| c.roleset.lemma.clone());
                RolesetMapping {
                    sense_id: c.roleset.sense_id,
                    lemma,
                    definition: c.roleset.definition,
                    roles: c.grounded_roles,
                    confidence: c.confidence,
                }
            })
            .collect(),
    };

    let bytes = serialize_mapping(&output)?;
    let path = mapping_file_path(output_dir, db_name, &ctx.table.name);
    atomic_write(&path, &bytes).map_err(|source| MapperError::Write {
        table: ctx.table.name.clone(),
        path: path.clone(),
        source,
    })?;
    tracing::debug!(table = %ctx.table.name, mappings = output.mappings.len(), file = %path.display(), "table mapped");
    Ok(output)
}

fn normalized_verbs(verbs: Vec<String>, num_verbs: usize) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for verb in verbs {
        let v = FrameIndex::normalize(&verb);
        if !v.is_empty() && !out.contains(&v) {
            out.push(v);
        }
    }
    out.truncate(num_verbs);
    out
}

/// Write to a temporary sibling, then rename into place.
fn atomic_write(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let parent = path.parent().ok_or_else(|| {
        io::Error::new(io::ErrorKind::InvalidInput, "mapping path has no parent directory")
    })?;
    fs::create_dir_all(parent)?;
    let mut tmp = tempfile::Builder::new()
        .prefix(".mapping-")
        .suffix(".tmp")
        .tempfile_in(parent)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddl::{parse_ddl, table_context, Schema};
    use crate::frames::parse_frame_file;
    use crate::mapping::{classify_mapping_file, StatusKind};

    fn tiny_index() -> FrameIndex {
        let xml = r#"<frameset>
          <predicate lemma="order">
            <roleset id="order.01" name="impose an order">
              <aliases><alias pos="v">order</alias></aliases>
              <roles><role descr="giver of order" f="PAG" n="0"/><role descr="order" f="PPT" n="1"/></roles>
            </roleset>
            <roleset id="order.02" name="request to be delivered">
              <aliases><alias pos="v">order</alias><alias pos="n">ordering</alias></aliases>
              <roles>
                <role descr="orderer" f="PAG" n="0"/>
                <role descr="thing ordered" f="PPT" n="1"/>
              </roles>
            </roleset>
          </predicate>
          <predicate lemma="request">
            <roleset id="request.01" name="ask for something">
              <aliases><alias pos="v">request</alias></aliases>
              <roles><role descr="requester" f="PAG" n="0"/><role descr="thing requested" f="PPT" n="1"/></roles>
            </roleset>
          </predicate>
          <predicate lemma="cancel">
            <roleset id="cancel.01" name="call off">
              <aliases><alias pos="v">cancel</alias></aliases>
              <roles><role descr="canceler" f="PAG" n="0"/><role descr="thing canceled" f="PPT" n="1"/></roles>
            </roleset>
          </predicate>
        </frameset>"#;
        FrameIndex::from_rolesets(parse_frame_file(xml).unwrap())
    }

    fn orders_schema() -> Schema {
        parse_ddl(
            "CREATE TABLE Users (user_id INTEGER PRIMARY KEY);
             CREATE TABLE Orders (
                 order_id INTEGER PRIMARY KEY,
                 customer_id INTEGER REFERENCES Users (user_id),
                 note VARCHAR(80),
                 created_at TIMESTAMP
             );",
            "fixture",
        )
        .unwrap()
    }

    #[test]
    fn baseline_verbs_start_with_the_table_token() {
        let index = tiny_index();
        let schema = orders_schema();
        let ctx = table_context(&schema, "Orders").unwrap();
        let verbs = baseline_verbs(&ctx, 10, &index, &Lexicon::shipped());
        assert_eq!(verbs, vec!["order", "request", "cancel"]);
        assert_eq!(verbs[0], "order");
    }

    #[test]
    fn baseline_verbs_empty_for_nonverbal_names() {
        let index = tiny_index();
        let schema = parse_ddl("CREATE TABLE X9 (id INTEGER PRIMARY KEY);", "fixture").unwrap();
        let ctx = table_context(&schema, "X9").unwrap();
        assert!(baseline_verbs(&ctx, 10, &index, &Lexicon::shipped()).is_empty());
    }

    #[test]
    fn rank_prefers_table_token_provenance() {
        let index = tiny_index();
        let schema = orders_schema();
        let ctx = table_context(&schema, "Orders").unwrap();
        let order = index.search_by_sense_id("order.02", false).unwrap();
        let request = index.search_by_sense_id("request.01", false).unwrap();
        let candidates = vec![
            (order, VerbOrigin { lemma: "order".into(), table_token: true }),
            (request, VerbOrigin { lemma: "request".into(), table_token: false }),
        ];
        let ranked = rank_rolesets(&candidates, &ctx);
        let by_id = |id: &str| ranked.iter().find(|c| c.roleset.sense_id == id).unwrap();
        assert!(by_id("order.02").confidence > by_id("request.01").confidence);
    }

    #[test]
    fn rank_collapses_duplicates_keeping_best() {
        let index = tiny_index();
        let schema = orders_schema();
        let ctx = table_context(&schema, "Orders").unwrap();
        let order = index.search_by_sense_id("order.02", false).unwrap();
        let candidates = vec![
            (order.clone(), VerbOrigin { lemma: "ordering".into(), table_token: false }),
            (order, VerbOrigin { lemma: "order".into(), table_token: true }),
        ];
        let ranked = rank_rolesets(&candidates, &ctx);
        assert_eq!(ranked.len(), 1);
        assert!(ranked[0].provenance.table_token);
    }

    #[test]
    fn rank_of_empty_candidates_is_empty() {
        let schema = orders_schema();
        let ctx = table_context(&schema, "Orders").unwrap();
        assert!(rank_rolesets(&[], &ctx).is_empty());
    }

    #[test]
    fn map_table_writes_a_valid_sorted_file() {
        let index = tiny_index();
        let schema = orders_schema();
        let ctx = table_context(&schema, "Orders").unwrap();
        let dir = tempfile::tempdir().unwrap();
        let provider = BaselineVerbProvider::new(std::sync::Arc::new(tiny_index()), Lexicon::shipped());

        let out = map_table(&ctx, &index, &provider, &MapperConfig::default(), dir.path(), "db").unwrap();
        assert!(!out.mappings.is_empty());
        assert!(out.mappings.windows(2).all(|w| w[0].confidence >= w[1].confidence));
        assert!(out.mappings.iter().all(|m| index.contains_sense(&m.sense_id)));
        assert_eq!(classify_mapping_file(dir.path(), "db", "Orders").kind, StatusKind::Valid);
    }

    #[test]
    fn map_table_truncates_to_the_global_best() {
        let index = tiny_index();
        let schema = orders_schema();
        let ctx = table_context(&schema, "Orders").unwrap();
        let dir = tempfile::tempdir().unwrap();
        let provider = BaselineVerbProvider::new(std::sync::Arc::new(tiny_index()), Lexicon::shipped());
        let cfg = MapperConfig { max_rolesets_per_table: 1, ..Default::default() };

        let out = map_table(&ctx, &index, &provider, &cfg, dir.path(), "db").unwrap();
        assert_eq!(out.mappings.len(), 1);

        let unlimited = map_table(&ctx, &index, &provider, &MapperConfig::default(), dir.path(), "db2").unwrap();
        let best = unlimited
            .mappings
            .iter()
            .map(|m| m.confidence)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(out.mappings[0].confidence, best);
    }

    #[test]
    fn map_table_with_no_verbs_writes_an_empty_file() {
        struct NoVerbs;
        impl VerbProvider for NoVerbs {
            fn verbs(&self, _: &TableContext, _: usize) -> Vec<String> {
                Vec::new()
            }
        }
        let index = tiny_index();
        let schema = orders_schema();
        let ctx = table_context(&schema, "Orders").unwrap();
        let dir = tempfile::tempdir().unwrap();
        let out = map_table(&ctx, &index, &NoVerbs, &MapperConfig::default(), dir.path(), "db").unwrap();
        assert!(out.mappings.is_empty());
        assert_eq!(classify_mapping_file(dir.path(), "db", "Orders").kind, StatusKind::Empty);
    }

    #[test]
    fn map_table_output_is_byte_deterministic() {
        let index = tiny_index();
        let schema = orders_schema();
        let ctx = table_context(&schema, "Orders").unwrap();
        let provider = BaselineVerbProvider::new(std::sync::Arc::new(tiny_index()), Lexicon::shipped());
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        map_table(&ctx, &index, &provider, &MapperConfig::default(), dir_a.path(), "db").unwrap();
        map_table(&ctx, &index, &provider, &MapperConfig::default(), dir_b.path(), "db").unwrap();
        let a = fs::read(mapping_file_path(dir_a.path(), "db", "Orders")).unwrap();
        let b = fs::read(mapping_file_path(dir_b.path(), "db", "Orders")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn misbehaving_provider_output_is_normalized() {
        struct Messy;
        impl VerbProvider for Messy {
            fn verbs(&self, _: &TableContext, _: usize) -> Vec<String> {
                vec![
                    " ORDER ".into(),
                    "order".into(),
                    "".into(),
                    "request".into(),
                    "cancel".into(),
                    "request".into(),
                ]
            }
        }
        let index = tiny_index();
        let schema = orders_schema();
        let ctx = table_context(&schema, "Orders").unwrap();
        let dir = tempfile::tempdir().unwrap();
        let cfg = MapperConfig { num_verbs: 2, ..Default::default() };
        let out = map_table(&ctx, &index, &Messy, &cfg, dir.path(), "db").unwrap();
        // only "order" and "request" survive normalization + truncation
        let lemmas: Vec<_> = out.mappings.iter().map(|m| m.lemma.as_str()).collect();
        assert!(lemmas.contains(&"order"));
        assert!(lemmas.contains(&"request"));
        assert!(!lemmas.contains(&"cancel"));
    }
}

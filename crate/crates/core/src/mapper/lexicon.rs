//! The shipped table-domain lexicon: singular lowercase table-name tokens
//! mapped to candidate action verbs.
//!
//! The contents are configuration data pinned by golden tests; callers can
//! load a replacement from JSON with the same shape
//! (`{"token": ["verb", ...]}`).

use std::collections::BTreeMap;

const SHIPPED: &str = include_str!("lexicon.json");

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<String>>,
}

impl Lexicon {
    /// The lexicon bundled with the crate.
    pub fn shipped() -> Self {
        Self::from_json(SHIPPED).expect("bundled lexicon is valid JSON")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let raw: BTreeMap<String, Vec<String>> = serde_json::from_str(text)?;
        let entries = raw
            .into_iter()
            .map(|(k, v)| {
                (
                    k.trim().to_lowercase(),
                    v.into_iter().map(|s| s.trim().to_lowercase()).collect(),
                )
            })
            .collect();
        Ok(Lexicon { entries })
    }

    pub fn expansions(&self, token: &str) -> &[String] {
        self.entries.get(token).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

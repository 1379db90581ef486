//! Roleset domain types.

use serde::Serialize;

/// One PropBank frame sense, e.g. `order.02`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Roleset {
    /// Unique identifier of the form `lemma.NN`.
    pub sense_id: String,
    /// Base form of the predicate this sense belongs to.
    pub lemma: String,
    /// Human-readable meaning, e.g. "request to be delivered".
    pub definition: String,
    /// Morphological and derivational variants (noun forms etc.).
    pub aliases: Vec<String>,
    pub roles: Vec<Role>,
    pub examples: Vec<FrameExample>,
    /// Cross-references into other lexical resources (VerbNet, FrameNet, ...).
    pub lexlinks: Vec<LexLink>,
}

/// A numbered or modifier argument of a roleset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Role {
    /// `ARG0`..`ARG6`, `ARGA`, or `ARGM-<function>`.
    pub label: String,
    pub description: String,
}

/// An annotated example sentence with its argument spans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameExample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub text: String,
    pub argument_spans: Vec<ArgumentSpan>,
}

/// One labeled span within an example sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArgumentSpan {
    pub label: String,
    pub span_text: String,
}

/// Pointer into another lexical resource.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LexLink {
    pub resource: String,
    pub identifier: String,
}

/// The reduced shape returned by lemma search: no aliases, examples, or
/// lexlinks. Full frames come from the sense-id lookup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RolesetSummary {
    pub sense_id: String,
    pub definition: String,
    pub roles: Vec<Role>,
}

/// Checks the `ARG[0-9A]` / `ARGM-[A-Z]+` label grammar.
pub fn is_valid_role_label(label: &str) -> bool {
    if let Some(func) = label.strip_prefix("ARGM-") {
        return !func.is_empty() && func.bytes().all(|b| b.is_ascii_uppercase());
    }
    if let Some(rest) = label.strip_prefix("ARG") {
        let mut chars = rest.chars();
        return matches!((chars.next(), chars.next()), (Some(c), None) if c.is_ascii_digit() || c == 'A');
    }
    false
}

impl Roleset {
    /// Validates the structural invariants; returns the first violation.
    pub fn validate(&self) -> Result<(), String> {
        let dot_count = self.sense_id.matches('.').count();
        if self.sense_id.is_empty() || dot_count != 1 {
            return Err(format!(
                "sense_id \"{}\" must contain exactly one '.'",
                self.sense_id
            ));
        }
        if self.sense_id.starts_with('.') || self.sense_id.ends_with('.') {
            return Err(format!(
                "sense_id \"{}\" must have a lemma token and a sense suffix",
                self.sense_id
            ));
        }
        if self.definition.is_empty() {
            return Err(format!("roleset {} has an empty definition", self.sense_id));
        }
        for role in &self.roles {
            if !is_valid_role_label(&role.label) {
                return Err(format!(
                    "roleset {} has invalid role label \"{}\"",
                    self.sense_id, role.label
                ));
            }
        }
        for (i, a) in self.roles.iter().enumerate() {
            if self.roles[i + 1..].iter().any(|b| b.label == a.label) {
                return Err(format!(
                    "roleset {} has duplicate role label \"{}\"",
                    self.sense_id, a.label
                ));
            }
        }
        for example in &self.examples {
            if example.text.is_empty() {
                return Err(format!("roleset {} has an example with empty text", self.sense_id));
            }
        }
        Ok(())
    }

    /// Core numbered arguments (`ARG0`..`ARG4`) defined by this roleset.
    pub fn core_roles(&self) -> impl Iterator<Item = &Role> {
        self.roles.iter().filter(|r| {
            matches!(r.label.as_str(), "ARG0" | "ARG1" | "ARG2" | "ARG3" | "ARG4")
        })
    }

    pub fn role(&self, label: &str) -> Option<&Role> {
        self.roles.iter().find(|r| r.label == label)
    }

    pub fn summary(&self) -> RolesetSummary {
        RolesetSummary {
            sense_id: self.sense_id.clone(),
            definition: self.definition.clone(),
            roles: self.roles.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn role_label_grammar() {
        for ok in ["ARG0", "ARG4", "ARG6", "ARGA", "ARGM-TMP", "ARGM-LOC", "ARGM-PRP"] {
            assert!(is_valid_role_label(ok), "{ok} should be valid");
        }
        for bad in ["", "ARG", "ARG10", "ARGB", "ARGM-", "ARGM-tmp", "arg0", "ARGM"] {
            assert!(!is_valid_role_label(bad), "{bad} should be invalid");
        }
    }

    fn minimal_roleset() -> Roleset {
        Roleset {
            sense_id: "order.02".into(),
            lemma: "order".into(),
            definition: "request to be delivered".into(),
            aliases: vec![],
            roles: vec![
                Role { label: "ARG0".into(), description: "orderer".into() },
                Role { label: "ARG1".into(), description: "thing ordered".into() },
            ],
            examples: vec![],
            lexlinks: vec![],
        }
    }

    #[test]
    fn validate_accepts_well_formed() {
        assert!(minimal_roleset().validate().is_ok());
    }

    #[test]
    fn validate_rejects_bad_sense_ids() {
        for bad in ["order", "order.02.03", ".02", "order."] {
            let mut rs = minimal_roleset();
            rs.sense_id = bad.into();
            assert!(rs.validate().is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn validate_rejects_duplicate_labels() {
        let mut rs = minimal_roleset();
        rs.roles.push(Role { label: "ARG0".into(), description: "again".into() });
        let err = rs.validate().unwrap_err();
        assert!(err.contains("duplicate role label"));
    }

    #[test]
    fn validate_rejects_empty_definition() {
        let mut rs = minimal_roleset();
        rs.definition.clear();
        assert!(rs.validate().is_err());
    }
}

//! Table-name tokenization and a small English singularizer.

/// Splits an identifier on case boundaries, digits, and underscores into
/// lowercase alphabetic tokens: `PhoneRequests` -> `["phone", "requests"]`,
/// `ad_info` -> `["ad", "info"]`, `X9` -> `["x"]`.
pub fn name_tokens(name: &str) -> Vec<String> {
    let chars: Vec<char> = name.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for (i, &ch) in chars.iter().enumerate() {
        if !ch.is_alphabetic() {
            flush(&mut tokens, &mut current);
            continue;
        }
        if ch.is_uppercase() && !current.is_empty() {
            let prev = chars[i - 1];
            let next_lower = chars.get(i + 1).is_some_and(|c| c.is_lowercase());
            // lower->Upper starts a word; so does the last capital of an
            // acronym run ("OSId" -> os, id).
            if prev.is_lowercase() || (prev.is_uppercase() && next_lower) {
                flush(&mut tokens, &mut current);
            }
        }
        current.extend(ch.to_lowercase());
    }
    flush(&mut tokens, &mut current);
    tokens
}

fn flush(tokens: &mut Vec<String>, current: &mut String) {
    if !current.is_empty() {
        tokens.push(std::mem::take(current));
    }
}

/// Heuristic plural -> singular: `categories` -> `category`,
/// `searches` -> `search`, `ads` -> `ad`. Words ending in `ss` stay put.
pub fn singularize(token: &str) -> String {
    if let Some(stem) = token.strip_suffix("ies") {
        if !stem.is_empty() {
            return format!("{stem}y");
        }
    }
    for suffix in ["ches", "shes", "sses", "xes", "zes"] {
        if let Some(stem) = token.strip_suffix(suffix) {
            return format!("{stem}{}", &suffix[..suffix.len() - 2]);
        }
    }
    if token.ends_with("ss") {
        return token.to_string();
    }
    if token.len() > 1 {
        if let Some(stem) = token.strip_suffix('s') {
            return stem.to_string();
        }
    }
    token.to_string()
}

/// Tokens plus their singular forms, deduplicated, for matching a table
/// name against verbs and lexicon keys.
pub fn singular_tokens(name: &str) -> Vec<String> {
    let mut out = Vec::new();
    for token in name_tokens(name) {
        let singular = singularize(&token);
        if !out.contains(&singular) {
            out.push(singular);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_camel_case_digits_and_underscores() {
        assert_eq!(name_tokens("PhoneRequests"), vec!["phone", "requests"]);
        assert_eq!(name_tokens("AdInfo"), vec!["ad", "info"]);
        assert_eq!(name_tokens("watch_store"), vec!["watch", "store"]);
        assert_eq!(name_tokens("X9"), vec!["x"]);
        assert_eq!(name_tokens("UserAgentOSID"), vec!["user", "agent", "osid"]);
        assert_eq!(name_tokens("HTMLPage"), vec!["html", "page"]);
        assert_eq!(name_tokens("9"), Vec::<String>::new());
    }

    #[test]
    fn singularizes_common_plural_shapes() {
        assert_eq!(singularize("categories"), "category");
        assert_eq!(singularize("searches"), "search");
        assert_eq!(singularize("addresses"), "address");
        assert_eq!(singularize("responses"), "response");
        assert_eq!(singularize("boxes"), "box");
        assert_eq!(singularize("ads"), "ad");
        assert_eq!(singularize("users"), "user");
        assert_eq!(singularize("address"), "address");
        assert_eq!(singularize("info"), "info");
        assert_eq!(singularize("s"), "s");
    }

    #[test]
    fn singular_tokens_deduplicate() {
        assert_eq!(singular_tokens("OrdersOrder"), vec!["order"]);
    }
}

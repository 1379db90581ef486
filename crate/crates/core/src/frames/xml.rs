//! Frame-file XML parsing.
//!
//! Targets the `propbank-frames` release 3.4 layout: a `<frameset>` root
//! holding `<predicate lemma=...>` elements, each with `<roleset id= name=>`
//! children carrying `<aliases>`, `<roles>`, `<lexlinks>`, and `<example>`
//! blocks. Attribute spellings drifted across releases, so the reader is
//! lenient where it can be (element order does not matter, `type`/`n` are
//! both accepted on example args) and strict about the invariants the index
//! relies on.

use roxmltree::{Document, Node, ParsingOptions};

use super::types::{ArgumentSpan, FrameExample, LexLink, Role, Roleset};

/// Parses one frame file into its rolesets.
///
/// Any structural problem (bad XML, missing attributes, invariant
/// violations) rejects the whole file; the loader records it and moves on.
/// DTD declarations are allowed (official frame files carry a DOCTYPE
/// pointing at `frameset.dtd`); external entities are never fetched.
pub fn parse_frame_file(text: &str) -> Result<Vec<Roleset>, String> {
    let options = ParsingOptions { allow_dtd: true, ..ParsingOptions::default() };
    let doc = Document::parse_with_options(text, options)
        .map_err(|e| format!("invalid XML: {e}"))?;
    let root = doc.root_element();
    if root.tag_name().name() != "frameset" {
        return Err(format!("expected <frameset> root, found <{}>", root.tag_name().name()));
    }

    let mut rolesets = Vec::new();
    for predicate in root.children().filter(|n| n.has_tag_name("predicate")) {
        let lemma = predicate
            .attribute("lemma")
            .ok_or("predicate element without lemma attribute")?
            .trim()
            .to_ascii_lowercase();
        if lemma.is_empty() {
            return Err("predicate element with empty lemma".into());
        }
        for node in predicate.children().filter(|n| n.has_tag_name("roleset")) {
            let roleset = parse_roleset(&lemma, node)?;
            roleset.validate()?;
            rolesets.push(roleset);
        }
    }
    Ok(rolesets)
}

fn parse_roleset(lemma: &str, node: Node) -> Result<Roleset, String> {
    let sense_id = node
        .attribute("id")
        .ok_or("roleset element without id attribute")?
        .trim()
        .to_string();
    let definition = node.attribute("name").unwrap_or("").trim().to_string();

    let mut aliases = Vec::new();
    for aliases_node in node.children().filter(|n| n.has_tag_name("aliases")) {
        for alias in aliases_node.children().filter(|n| n.has_tag_name("alias")) {
            let text = alias.text().unwrap_or("").trim().to_ascii_lowercase();
            if !text.is_empty() && !aliases.contains(&text) {
                aliases.push(text);
            }
        }
    }

    let mut roles = Vec::new();
    for roles_node in node.children().filter(|n| n.has_tag_name("roles")) {
        for role in roles_node.children().filter(|n| n.has_tag_name("role")) {
            roles.push(parse_role(&sense_id, role)?);
        }
    }

    let mut lexlinks = Vec::new();
    for links_node in node.children().filter(|n| n.has_tag_name("lexlinks")) {
        for link in links_node.children().filter(|n| n.has_tag_name("lexlink")) {
            let resource = link.attribute("resource").unwrap_or("").trim();
            let identifier = link.attribute("class").unwrap_or("").trim();
            if !resource.is_empty() && !identifier.is_empty() {
                lexlinks.push(LexLink {
                    resource: resource.to_string(),
                    identifier: identifier.to_string(),
                });
            }
        }
    }

    let mut examples = Vec::new();
    for example in node.children().filter(|n| n.has_tag_name("example")) {
        examples.push(parse_example(example)?);
    }

    Ok(Roleset {
        sense_id,
        lemma: lemma.to_string(),
        definition,
        aliases,
        roles,
        examples,
        lexlinks,
    })
}

fn parse_role(sense_id: &str, node: Node) -> Result<Role, String> {
    let description = node.attribute("descr").unwrap_or("").trim().to_string();
    let n = node
        .attribute("n")
        .ok_or_else(|| format!("roleset {sense_id}: role without n attribute"))?
        .trim();
    let label = match n {
        "m" | "M" => {
            let func = node
                .attribute("f")
                .ok_or_else(|| format!("roleset {sense_id}: modifier role without f attribute"))?
                .trim();
            format!("ARGM-{}", func.to_ascii_uppercase())
        }
        "a" | "A" => "ARGA".to_string(),
        digit if digit.len() == 1 && digit.as_bytes()[0].is_ascii_digit() => {
            format!("ARG{digit}")
        }
        other => return Err(format!("roleset {sense_id}: unsupported role number \"{other}\"")),
    };
    Ok(Role { label, description })
}

fn parse_example(node: Node) -> Result<FrameExample, String> {
    let name = node
        .attribute("name")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from);
    let text = node
        .children()
        .find(|n| n.has_tag_name("text"))
        .and_then(|n| n.text())
        .unwrap_or("")
        .trim()
        .to_string();

    let mut argument_spans = Vec::new();
    for propbank in node.children().filter(|n| n.has_tag_name("propbank")) {
        for arg in propbank.children().filter(|n| n.has_tag_name("arg")) {
            // Release 3.4 labels args with `type`; older files used bare `n`.
            let label = match (arg.attribute("type"), arg.attribute("n")) {
                (Some(t), _) => t.trim().to_ascii_uppercase(),
                (None, Some(n)) => format!("ARG{}", n.trim().to_ascii_uppercase()),
                (None, None) => continue,
            };
            let span_text = arg.text().unwrap_or("").trim().to_string();
            argument_spans.push(ArgumentSpan { label, span_text });
        }
    }

    Ok(FrameExample { name, text, argument_spans })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"<?xml version="1.0" encoding="UTF-8"?>
<frameset>
  <predicate lemma="ship">
    <roleset id="ship.01" name="send goods">
      <aliases><alias pos="v">ship</alias><alias pos="n">shipment</alias></aliases>
      <roles>
        <role descr="shipper" f="PAG" n="0"/>
        <role descr="cargo" f="PPT" n="1"/>
        <role descr="at sea" f="LOC" n="m"/>
      </roles>
      <example name="ship-v: basic">
        <text>We shipped it .</text>
        <propbank>
          <rel relloc="1">shipped</rel>
          <arg type="ARG0" start="0" end="0">We</arg>
          <arg type="ARG1" start="2" end="2">it</arg>
        </propbank>
      </example>
      <lexlinks><lexlink class="send-11.1" resource="VerbNet" version="verbnet3.4"/></lexlinks>
    </roleset>
  </predicate>
</frameset>"#;

    #[test]
    fn parses_rolesets_with_modifier_roles() {
        let rolesets = parse_frame_file(MINIMAL).unwrap();
        assert_eq!(rolesets.len(), 1);
        let rs = &rolesets[0];
        assert_eq!(rs.sense_id, "ship.01");
        assert_eq!(rs.lemma, "ship");
        assert_eq!(rs.definition, "send goods");
        assert_eq!(rs.aliases, vec!["ship", "shipment"]);
        assert_eq!(
            rs.roles.iter().map(|r| r.label.as_str()).collect::<Vec<_>>(),
            vec!["ARG0", "ARG1", "ARGM-LOC"]
        );
        assert_eq!(rs.examples.len(), 1);
        assert_eq!(rs.examples[0].argument_spans.len(), 2);
        assert_eq!(rs.examples[0].argument_spans[0].span_text, "We");
        assert_eq!(rs.lexlinks[0].resource, "VerbNet");
        assert_eq!(rs.lexlinks[0].identifier, "send-11.1");
    }

    #[test]
    fn legacy_numbered_args_are_accepted() {
        let text = MINIMAL.replace(r#"type="ARG0" "#, r#"n="0" "#);
        let rolesets = parse_frame_file(&text).unwrap();
        assert_eq!(rolesets[0].examples[0].argument_spans[0].label, "ARG0");
    }

    #[test]
    fn accepts_the_doctype_line_official_files_carry() {
        let text = format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!DOCTYPE frameset SYSTEM \"frameset.dtd\">\n{}",
            MINIMAL.trim_start_matches("<?xml version=\"1.0\" encoding=\"UTF-8\"?>")
        );
        let rolesets = parse_frame_file(&text).unwrap();
        assert_eq!(rolesets[0].sense_id, "ship.01");
    }

    #[test]
    fn rejects_non_frameset_root() {
        let err = parse_frame_file("<wrong/>").unwrap_err();
        assert!(err.contains("frameset"));
    }

    #[test]
    fn rejects_invalid_xml() {
        assert!(parse_frame_file("<frameset>").is_err());
    }

    #[test]
    fn rejects_bad_sense_id() {
        let text = MINIMAL.replace("ship.01", "ship");
        assert!(parse_frame_file(&text).is_err());
    }

    #[test]
    fn rejects_missing_definition() {
        let text = MINIMAL.replace(r#" name="send goods""#, "");
        assert!(parse_frame_file(&text).is_err());
    }
}

//! `rolemap frames search|get`: corpus queries, locally or against a
//! running HTTP server.

use serde_json::{json, Value};

use rolemap_client::{HttpMcpClient, ToolResultExt};
use rolemap_core::frames::Roleset;

use crate::config::{resolve_required, FileConfig};
use crate::{FramesGetArgs, FramesSearchArgs, EXIT_DOMAIN, EXIT_FATAL, EXIT_OK, EXIT_USAGE};

/// Runs one tool call against a remote server, returning the JSON text
/// payload or a domain failure.
async fn remote_call(server: &str, tool: &str, arguments: Value) -> Result<String, u8> {
    let mut client = HttpMcpClient::new(server);
    if let Err(e) = client.initialize().await {
        eprintln!("error: cannot initialize against {server}: {e}");
        return Err(EXIT_FATAL);
    }
    match client.call_tool(tool, arguments).await {
        Ok(result) => {
            let text = result.first_text().unwrap_or_default();
            if result.is_error {
                eprintln!("error: {text}");
                Err(EXIT_DOMAIN)
            } else {
                Ok(text)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(EXIT_FATAL)
        }
    }
}

fn render_search_table(answer: &Value) -> String {
    let mut out = String::new();
    let matches = answer["matches"].as_array().cloned().unwrap_or_default();
    out.push_str(&format!(
        "{} roleset(s) for \"{}\"\n",
        matches.len(),
        answer["lemma"].as_str().unwrap_or_default()
    ));
    for m in matches {
        out.push_str(&format!(
            "  {:<14} {}\n",
            m["sense_id"].as_str().unwrap_or_default(),
            m["definition"].as_str().unwrap_or_default()
        ));
        for role in m["roles"].as_array().cloned().unwrap_or_default() {
            out.push_str(&format!(
                "      {:<10} {}\n",
                role["label"].as_str().unwrap_or_default(),
                role["description"].as_str().unwrap_or_default()
            ));
        }
    }
    out
}

pub async fn search(args: FramesSearchArgs, file: &FileConfig) -> u8 {
    let answer: Value = if let Some(server) = &args.server {
        let text = match remote_call(
            server,
            "search_by_lemma",
            json!({"lemma": args.lemma, "max_results": args.max_results.max(1)}),
        )
        .await
        {
            Ok(text) => text,
            Err(code) => return code,
        };
        match serde_json::from_str(&text) {
            Ok(value) => value,
            Err(e) => {
                eprintln!("error: server returned malformed payload: {e}");
                return EXIT_FATAL;
            }
        }
    } else {
        let frames_dir = match resolve_required(args.frames_dir.clone(), file.frames_dir.clone(), "--frames directory") {
            Ok(dir) => dir,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        };
        let index = match super::load_index_or_exit(&frames_dir) {
            Ok(index) => index,
            Err(code) => return code,
        };
        let matches = index.search_by_lemma(&args.lemma, args.max_results.max(1));
        json!({
            "lemma": rolemap_core::frames::FrameIndex::normalize(&args.lemma),
            "count": matches.len(),
            "matches": matches,
        })
    };

    if args.json {
        println!("{}", serde_json::to_string_pretty(&answer).expect("answer serializes"));
    } else {
        print!("{}", render_search_table(&answer));
    }
    EXIT_OK
}

fn render_roleset(value: &Value) -> String {
    let mut out = format!(
        "{}  ({})\n  {}\n",
        value["sense_id"].as_str().unwrap_or_default(),
        value["lemma"].as_str().unwrap_or_default(),
        value["definition"].as_str().unwrap_or_default()
    );
    let aliases: Vec<&str> = value["aliases"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_str).collect())
        .unwrap_or_default();
    if !aliases.is_empty() {
        out.push_str(&format!("  aliases: {}\n", aliases.join(", ")));
    }
    for role in value["roles"].as_array().cloned().unwrap_or_default() {
        out.push_str(&format!(
            "  {:<10} {}\n",
            role["label"].as_str().unwrap_or_default(),
            role["description"].as_str().unwrap_or_default()
        ));
    }
    for example in value["examples"].as_array().cloned().unwrap_or_default() {
        out.push_str(&format!("  e.g. {}\n", example["text"].as_str().unwrap_or_default()));
    }
    for link in value["lexlinks"].as_array().cloned().unwrap_or_default() {
        out.push_str(&format!(
            "  see {}: {}\n",
            link["resource"].as_str().unwrap_or_default(),
            link["identifier"].as_str().unwrap_or_default()
        ));
    }
    out
}

pub async fn get(args: FramesGetArgs, file: &FileConfig) -> u8 {
    let value: Value = if let Some(server) = &args.server {
        let text = match remote_call(
            server,
            "search_by_sense_id",
            json!({"sense_id": args.sense_id, "include_examples": !args.no_examples}),
        )
        .await
        {
            Ok(text) => text,
            Err(code) => return code,
        };
        match serde_json::from_str(&text) {
            Ok(value) => value,
            Err(e) => {
                eprintln!("error: server returned malformed payload: {e}");
                return EXIT_FATAL;
            }
        }
    } else {
        let frames_dir = match resolve_required(args.frames_dir.clone(), file.frames_dir.clone(), "--frames directory") {
            Ok(dir) => dir,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        };
        let index = match super::load_index_or_exit(&frames_dir) {
            Ok(index) => index,
            Err(code) => return code,
        };
        let roleset: Roleset = match index.search_by_sense_id(&args.sense_id, !args.no_examples) {
            Ok(roleset) => roleset,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_DOMAIN;
            }
        };
        serde_json::to_value(&roleset).expect("roleset serializes")
    };

    if args.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("roleset serializes"));
    } else {
        print!("{}", render_roleset(&value));
    }
    EXIT_OK
}

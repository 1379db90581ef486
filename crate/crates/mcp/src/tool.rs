//! Tool descriptors, results, and argument validation against the
//! advertised input schema.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

/// Advertised shape of one tool, as returned by `tools/list`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToolDescriptor {
    pub name: String,
    pub description: String,
    #[serde(rename = "inputSchema")]
    pub input_schema: Value,
}

/// One block of tool output. Only text blocks are used; structured answers
/// carry JSON documents as their text payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ContentBlock {
    Text { text: String },
}

/// Result of a `tools/call`. Tool-level failures set `is_error` instead of
/// becoming protocol errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolResult {
    pub content: Vec<ContentBlock>,
    #[serde(rename = "isError")]
    pub is_error: bool,
}

impl ToolResult {
    pub fn text(text: impl Into<String>) -> Self {
        ToolResult { content: vec![ContentBlock::Text { text: text.into() }], is_error: false }
    }

    /// Structured answer: the value rendered as compact JSON text.
    pub fn json(value: &impl Serialize) -> Self {
        match serde_json::to_string(value) {
            Ok(text) => ToolResult::text(text),
            Err(e) => ToolResult::error(format!("internal serialization failure: {e}")),
        }
    }

    pub fn error(message: impl Into<String>) -> Self {
        ToolResult { content: vec![ContentBlock::Text { text: message.into() }], is_error: true }
    }
}

type Handler = Arc<dyn Fn(&Map<String, Value>) -> ToolResult + Send + Sync>;

/// A named tool: descriptor plus handler.
#[derive(Clone)]
pub struct Tool {
    pub descriptor: ToolDescriptor,
    handler: Handler,
}

impl Tool {
    pub fn new(
        name: &str,
        description: &str,
        input_schema: Value,
        handler: impl Fn(&Map<String, Value>) -> ToolResult + Send + Sync + 'static,
    ) -> Self {
        Tool {
            descriptor: ToolDescriptor {
                name: name.to_string(),
                description: description.to_string(),
                input_schema,
            },
            handler: Arc::new(handler),
        }
    }

    /// Same handler under a different name (e.g. `read_file` for
    /// `read_text_file`).
    pub fn aliased(&self, name: &str, description: &str) -> Self {
        Tool {
            descriptor: ToolDescriptor {
                name: name.to_string(),
                description: description.to_string(),
                input_schema: self.descriptor.input_schema.clone(),
            },
            handler: Arc::clone(&self.handler),
        }
    }

    pub fn name(&self) -> &str {
        &self.descriptor.name
    }

    /// Validates `arguments` against the input schema (types, required
    /// fields, defaults, unknown keys) and invokes the handler.
    pub fn call(&self, arguments: Option<&Value>) -> Result<ToolResult, String> {
        let args = validate_arguments(&self.descriptor.input_schema, arguments)?;
        Ok((self.handler)(&args))
    }
}

impl std::fmt::Debug for Tool {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tool").field("name", &self.descriptor.name).finish()
    }
}

/// Builds the object-schema shape used by every tool here.
pub fn object_schema(properties: Value, required: &[&str]) -> Value {
    json!({
        "type": "object",
        "properties": properties,
        "required": required,
    })
}

/// Checks an argument object against the subset of JSON Schema the
/// descriptors use: property types (`string`, `integer`, `number`,
/// `boolean`), `required`, `default`, and integer `minimum`. Unknown
/// argument names are rejected. Returns the argument map with defaults
/// filled in.
fn validate_arguments(
    schema: &Value,
    arguments: Option<&Value>,
) -> Result<Map<String, Value>, String> {
    let mut args = match arguments {
        None | Some(Value::Null) => Map::new(),
        Some(Value::Object(map)) => map.clone(),
        Some(other) => return Err(format!("arguments must be an object, got {other}")),
    };
    let empty = Map::new();
    let properties = schema
        .get("properties")
        .and_then(Value::as_object)
        .unwrap_or(&empty);

    for (key, value) in &args {
        let Some(prop) = properties.get(key) else {
            return Err(format!("unknown argument \"{key}\""));
        };
        let expected = prop.get("type").and_then(Value::as_str).unwrap_or("any");
        let ok = match expected {
            "string" => value.is_string(),
            "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            _ => true,
        };
        if !ok {
            return Err(format!("argument \"{key}\" must be of type {expected}"));
        }
        if expected == "integer" {
            if let Some(minimum) = prop.get("minimum").and_then(Value::as_i64) {
                if value.as_i64().is_some_and(|v| v < minimum) {
                    return Err(format!("argument \"{key}\" must be >= {minimum}"));
                }
            }
        }
    }

    for (key, prop) in properties {
        if !args.contains_key(key) {
            if let Some(default) = prop.get("default") {
                args.insert(key.clone(), default.clone());
            }
        }
    }

    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required.iter().filter_map(Value::as_str) {
            if !args.contains_key(key) {
                return Err(format!("missing required argument \"{key}\""));
            }
        }
    }

    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn echo_tool() -> Tool {
        Tool::new(
            "echo",
            "echo the word",
            object_schema(
                json!({
                    "word": {"type": "string"},
                    "times": {"type": "integer", "default": 1, "minimum": 1},
                }),
                &["word"],
            ),
            |args| {
                let word = args["word"].as_str().unwrap();
                let times = args["times"].as_i64().unwrap() as usize;
                ToolResult::text(word.repeat(times))
            },
        )
    }

    #[test]
    fn defaults_are_applied() {
        let result = echo_tool().call(Some(&json!({"word": "hi"}))).unwrap();
        assert_eq!(result, ToolResult::text("hi"));
    }

    #[test]
    fn explicit_arguments_override_defaults() {
        let result = echo_tool().call(Some(&json!({"word": "hi", "times": 3}))).unwrap();
        assert_eq!(result, ToolResult::text("hihihi"));
    }

    #[test]
    fn missing_required_argument_is_rejected() {
        let err = echo_tool().call(Some(&json!({}))).unwrap_err();
        assert!(err.contains("word"));
    }

    #[test]
    fn wrong_type_is_rejected() {
        let err = echo_tool().call(Some(&json!({"word": 42}))).unwrap_err();
        assert!(err.contains("string"));
    }

    #[test]
    fn unknown_argument_is_rejected() {
        let err = echo_tool().call(Some(&json!({"word": "hi", "bogus": 1}))).unwrap_err();
        assert!(err.contains("bogus"));
    }

    #[test]
    fn minimum_is_enforced() {
        let err = echo_tool().call(Some(&json!({"word": "hi", "times": 0}))).unwrap_err();
        assert!(err.contains(">= 1"));
    }

    #[test]
    fn tool_result_wire_shape() {
        let result = ToolResult::text("hello");
        assert_eq!(
            serde_json::to_string(&result).unwrap(),
            r#"{"content":[{"type":"text","text":"hello"}],"isError":false}"#
        );
    }
}

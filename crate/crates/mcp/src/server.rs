//! Transport-agnostic MCP dispatch.

use serde_json::{json, Value};

use crate::rpc::{
    RpcMessage, INVALID_PARAMS, INVALID_REQUEST, JSONRPC_VERSION, METHOD_NOT_FOUND, PARSE_ERROR,
};
use crate::tool::Tool;

/// The protocol revision this server implements and advertises.
pub const PROTOCOL_VERSION: &str = "2025-11-25";

/// An MCP server: identity plus an ordered tool set. Stateless per request;
/// share behind an `Arc` across transports and connections.
pub struct McpServer {
    name: String,
    version: String,
    tools: Vec<Tool>,
}

impl McpServer {
    pub fn new(name: &str, version: &str) -> Self {
        McpServer { name: name.to_string(), version: version.to_string(), tools: Vec::new() }
    }

    pub fn with_tool(mut self, tool: Tool) -> Self {
        debug_assert!(
            !self.tools.iter().any(|t| t.name() == tool.name()),
            "tool names must be unique per server"
        );
        self.tools.push(tool);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tools(&self) -> &[Tool] {
        &self.tools
    }

    /// Handles one raw input line; `None` for notifications.
    pub fn handle_line(&self, line: &str) -> Option<String> {
        let response = match serde_json::from_str::<RpcMessage>(line) {
            Ok(msg) => self.handle(msg)?,
            Err(e) => RpcMessage::failure(None, PARSE_ERROR, format!("parse error: {e}")),
        };
        Some(serde_json::to_string(&response).expect("responses serialize"))
    }

    /// Dispatches one parsed message; `None` for notifications.
    pub fn handle(&self, msg: RpcMessage) -> Option<RpcMessage> {
        if msg.is_notification() {
            tracing::debug!(method = msg.method.as_deref().unwrap_or(""), "notification");
            return None;
        }
        let id = msg.id.clone();
        if msg.jsonrpc != JSONRPC_VERSION {
            return Some(RpcMessage::failure(
                id,
                INVALID_REQUEST,
                format!("expected jsonrpc \"{JSONRPC_VERSION}\""),
            ));
        }
        let Some(method) = msg.method.as_deref() else {
            return Some(RpcMessage::failure(id, INVALID_REQUEST, "message has no method"));
        };
        let id = id.expect("non-notification calls carry an id");

        let response = match method {
            "initialize" => RpcMessage::success(
                id,
                json!({
                    "protocolVersion": PROTOCOL_VERSION,
                    "capabilities": {"tools": {"listChanged": false}},
                    "serverInfo": {"name": self.name, "version": self.version},
                }),
            ),
            "ping" => RpcMessage::success(id, json!({})),
            "tools/list" => {
                let tools: Vec<_> = self.tools.iter().map(|t| &t.descriptor).collect();
                RpcMessage::success(id, json!({ "tools": tools }))
            }
            "tools/call" => self.handle_tool_call(id, msg.params.as_ref()),
            other => RpcMessage::failure(
                Some(id),
                METHOD_NOT_FOUND,
                format!("method \"{other}\" not found"),
            ),
        };
        Some(response)
    }

    fn handle_tool_call(&self, id: Value, params: Option<&Value>) -> RpcMessage {
        let Some(params) = params.and_then(Value::as_object) else {
            return RpcMessage::failure(Some(id), INVALID_PARAMS, "tools/call requires params");
        };
        let Some(name) = params.get("name").and_then(Value::as_str) else {
            return RpcMessage::failure(Some(id), INVALID_PARAMS, "params.name must be a string");
        };
        let Some(tool) = self.tools.iter().find(|t| t.name() == name) else {
            return RpcMessage::failure(
                Some(id),
                INVALID_PARAMS,
                format!("unknown tool \"{name}\""),
            );
        };
        match tool.call(params.get("arguments")) {
            Ok(result) => RpcMessage::success(id, json!(result)),
            Err(message) => RpcMessage::failure(Some(id), INVALID_PARAMS, message),
        }
    }
}

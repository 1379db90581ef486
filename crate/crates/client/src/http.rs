//! Streamable HTTP client: POST one message per request, carry the session
//! header issued at initialize.

use std::sync::atomic::{AtomicI64, Ordering};

use serde_json::{json, Value};

use rolemap_mcp::rpc::RpcMessage;
use rolemap_mcp::tool::ToolResult;
use rolemap_mcp::{ToolDescriptor, SESSION_HEADER};

use crate::error::ClientError;
use crate::{parse_handshake, parse_tool_result, parse_tools, ServerHandshake};

pub struct HttpMcpClient {
    http: reqwest::Client,
    url: String,
    session: Option<String>,
    next_id: AtomicI64,
}

impl HttpMcpClient {
    pub fn new(url: impl Into<String>) -> Self {
        HttpMcpClient {
            http: reqwest::Client::new(),
            url: url.into(),
            session: None,
            next_id: AtomicI64::new(1),
        }
    }

    pub fn session_id(&self) -> Option<&str> {
        self.session.as_deref()
    }

    /// Performs the initialize round trip and captures the session id.
    pub async fn initialize(&mut self) -> Result<ServerHandshake, ClientError> {
        let id = self.next_id.fetch_add(1, Ordering::Relaxed);
        let msg = RpcMessage::request(
            id,
            "initialize",
            Some(json!({
                "protocolVersion": rolemap_mcp::PROTOCOL_VERSION,
                "capabilities": {},
                "clientInfo": {"name": "rolemap-client", "version": env!("CARGO_PKG_VERSION")},
            })),
        );
        let response = self.http.post(&self.url).json(&msg).send().await?;
        let status = response.status();
        let session = response
            .headers()
            .get(SESSION_HEADER)
            .and_then(|v| v.to_str().ok())
            .map(String::from);
        let body = response.text().await?;
        if !status.is_success() {
            return Err(ClientError::Status { status: status.as_u16(), body });
        }
        let parsed: RpcMessage = serde_json::from_str(&body)
            .map_err(|e| ClientError::Protocol(format!("bad initialize response: {e}")))?;
        if let Some(error) = parsed.error {
            return Err(ClientError::Rpc(error));
        }
        self.session =
            Some(session.ok_or_else(|| ClientError::Protocol("no session header issued".into()))?);
        Ok(parse_handshake(parsed.result.as_ref().unwrap_or(&Value::Null)))
    }

    /// One request/response exchange; returns the RPC result value.
    pub async fn request(&self, method: &str, params: Option<Value>) -> Result<Value, ClientError> {
        let session = self.session.as_ref().ok_or(ClientError::NotInitialized)?;
        let id = self.next_id.fetch_add(1, Ordering::Relaxed);
        let msg = RpcMessage::request(id, method, params);
        let response = self
            .http
            .post(&self.url)
            .header(SESSION_HEADER, session)
            .json(&msg)
            .send()
            .await?;
        let status = response.status();
        let body = response.text().await?;
        if !status.is_success() {
            return Err(ClientError::Status { status: status.as_u16(), body });
        }
        let parsed: RpcMessage = serde_json::from_str(&body)
            .map_err(|e| ClientError::Protocol(format!("bad response body: {e}")))?;
        if parsed.id != Some(json!(id)) {
            return Err(ClientError::Protocol(format!(
                "response id {:?} does not echo request id {id}",
                parsed.id
            )));
        }
        if let Some(error) = parsed.error {
            return Err(ClientError::Rpc(error));
        }
        parsed.result.ok_or_else(|| ClientError::Protocol("response carries neither result nor error".into()))
    }

    pub async fn list_tools(&self) -> Result<Vec<ToolDescriptor>, ClientError> {
        let result = self.request("tools/list", None).await?;
        parse_tools(&result)
    }

    pub async fn call_tool(&self, name: &str, arguments: Value) -> Result<ToolResult, ClientError> {
        let result = self
            .request("tools/call", Some(json!({"name": name, "arguments": arguments})))
            .await?;
        parse_tool_result(result)
    }
}

//! Thin MCP client over the two transports the servers speak.
//!
//! ```no_run
//! use rolemap_client::{HttpMcpClient, ToolResultExt};
//! # async fn example() -> Result<(), rolemap_client::ClientError> {
//! let mut client = HttpMcpClient::new("http://127.0.0.1:8811/mcp");
//! client.initialize().await?;
//! let result = client
//!     .call_tool("search_by_lemma", serde_json::json!({"lemma": "order"}))
//!     .await?;
//! println!("{}", result.first_text().unwrap_or_default());
//! # Ok(())
//! # }
//! ```

mod error;
mod http;
mod stdio;

pub use error::ClientError;
pub use http::HttpMcpClient;
pub use stdio::StdioMcpClient;

use rolemap_mcp::tool::{ContentBlock, ToolResult};
use rolemap_mcp::ToolDescriptor;

/// Convenience accessors shared by both transports.
pub trait ToolResultExt {
    fn first_text(&self) -> Option<String>;
}

impl ToolResultExt for ToolResult {
    fn first_text(&self) -> Option<String> {
        self.content.iter().map(|ContentBlock::Text { text }| text.clone()).next()
    }
}

/// Server identity and protocol revision captured at initialize.
#[derive(Debug, Clone)]
pub struct ServerHandshake {
    pub protocol_version: String,
    pub server_name: String,
    pub server_version: String,
}

pub(crate) fn parse_handshake(result: &serde_json::Value) -> ServerHandshake {
    ServerHandshake {
        protocol_version: result["protocolVersion"].as_str().unwrap_or_default().to_string(),
        server_name: result["serverInfo"]["name"].as_str().unwrap_or_default().to_string(),
        server_version: result["serverInfo"]["version"].as_str().unwrap_or_default().to_string(),
    }
}

pub(crate) fn parse_tools(result: &serde_json::Value) -> Result<Vec<ToolDescriptor>, ClientError> {
    serde_json::from_value(result["tools"].clone())
        .map_err(|e| ClientError::Protocol(format!("malformed tools/list result: {e}")))
}

pub(crate) fn parse_tool_result(result: serde_json::Value) -> Result<ToolResult, ClientError> {
    serde_json::from_value(result)
        .map_err(|e| ClientError::Protocol(format!("malformed tools/call result: {e}")))
}

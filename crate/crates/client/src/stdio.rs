//! Stdio client: spawn the server as a child process and exchange
//! newline-delimited messages over its pipes.

use std::process::Stdio;

use serde_json::{json, Value};
use tokio::io::{AsyncBufReadExt, AsyncWriteExt, BufReader, Lines};
use tokio::process::{Child, ChildStdin, ChildStdout, Command};

use rolemap_mcp::rpc::RpcMessage;
use rolemap_mcp::tool::ToolResult;
use rolemap_mcp::ToolDescriptor;

use crate::error::ClientError;
use crate::{parse_handshake, parse_tool_result, parse_tools, ServerHandshake};

pub struct StdioMcpClient {
    child: Child,
    stdin: ChildStdin,
    lines: Lines<BufReader<ChildStdout>>,
    next_id: i64,
}

impl StdioMcpClient {
    /// Spawns `command args...` with piped stdin/stdout; stderr passes
    /// through to this process's stderr.
    pub fn spawn(command: &str, args: &[&str]) -> Result<Self, ClientError> {
        let mut child = Command::new(command)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .kill_on_drop(true)
            .spawn()?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        Ok(StdioMcpClient {
            child,
            stdin,
            lines: BufReader::new(stdout).lines(),
            next_id: 1,
        })
    }

    async fn send(&mut self, msg: &RpcMessage) -> Result<(), ClientError> {
        let mut line = serde_json::to_string(msg)
            .map_err(|e| ClientError::Protocol(format!("cannot serialize request: {e}")))?;
        line.push('\n');
        self.stdin.write_all(line.as_bytes()).await?;
        self.stdin.flush().await?;
        Ok(())
    }

    /// One request/response exchange; returns the RPC result value.
    pub async fn request(&mut self, method: &str, params: Option<Value>) -> Result<Value, ClientError> {
        let id = self.next_id;
        self.next_id += 1;
        self.send(&RpcMessage::request(id, method, params)).await?;
        loop {
            let Some(line) = self.lines.next_line().await? else {
                return Err(ClientError::ServerExited);
            };
            if line.trim().is_empty() {
                continue;
            }
            let msg: RpcMessage = serde_json::from_str(&line)
                .map_err(|e| ClientError::Protocol(format!("bad response line: {e}")))?;
            if msg.id != Some(json!(id)) {
                // response to something else (or an unsolicited message); skip
                continue;
            }
            if let Some(error) = msg.error {
                return Err(ClientError::Rpc(error));
            }
            return msg
                .result
                .ok_or_else(|| ClientError::Protocol("response carries neither result nor error".into()));
        }
    }

    pub async fn notify(&mut self, method: &str, params: Option<Value>) -> Result<(), ClientError> {
        self.send(&RpcMessage::notification(method, params)).await
    }

    pub async fn initialize(&mut self) -> Result<ServerHandshake, ClientError> {
        let result = self
            .request(
                "initialize",
                Some(json!({
                    "protocolVersion": rolemap_mcp::PROTOCOL_VERSION,
                    "capabilities": {},
                    "clientInfo": {"name": "rolemap-client", "version": env!("CARGO_PKG_VERSION")},
                })),
            )
            .await?;
        self.notify("notifications/initialized", None).await?;
        Ok(parse_handshake(&result))
    }

    pub async fn list_tools(&mut self) -> Result<Vec<ToolDescriptor>, ClientError> {
        let result = self.request("tools/list", None).await?;
        parse_tools(&result)
    }

    pub async fn call_tool(&mut self, name: &str, arguments: Value) -> Result<ToolResult, ClientError> {
        let result = self
            .request("tools/call", Some(json!({"name": name, "arguments": arguments})))
            .await?;
        parse_tool_result(result)
    }

    /// Closes stdin (EOF) and waits for the child to exit.
    pub async fn shutdown(mut self) -> Result<std::process::ExitStatus, ClientError> {
        drop(self.stdin);
        Ok(self.child.wait().await?)
    }
}

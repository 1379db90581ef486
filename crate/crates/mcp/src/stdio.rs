//! Newline-delimited JSON-RPC over standard streams.
//!
//! One message per line on stdin, one response per line on stdout,
//! diagnostics on stderr only. Messages are processed in arrival order; a
//! malformed line answers with a parse error and the stream continues.

use std::sync::Arc;

use tokio::io::{self, AsyncBufReadExt, AsyncWrite, AsyncWriteExt, BufReader};

use crate::server::McpServer;

/// Serves over arbitrary line-oriented streams (tests use in-memory pipes).
pub async fn serve_lines<R, W>(server: Arc<McpServer>, reader: R, mut writer: W) -> io::Result<()>
where
    R: io::AsyncRead + Unpin,
    W: AsyncWrite + Unpin,
{
    let mut lines = BufReader::new(reader).lines();
    while let Some(line) = lines.next_line().await? {
        if line.trim().is_empty() {
            continue;
        }
        if let Some(response) = server.handle_line(&line) {
            writer.write_all(response.as_bytes()).await?;
            writer.write_all(b"\n").await?;
            writer.flush().await?;
        }
    }
    tracing::info!(server = server.name(), "stdin closed; shutting down");
    Ok(())
}

/// Binds the process's stdin/stdout and serves until EOF.
pub async fn serve_stdio(server: Arc<McpServer>) -> io::Result<()> {
    serve_lines(server, io::stdin(), io::stdout()).await
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rpc::RpcMessage;
    use crate::tool::{object_schema, Tool, ToolResult};
    use serde_json::json;
    use tokio::io::AsyncReadExt;

    fn server() -> Arc<McpServer> {
        Arc::new(McpServer::new("stdio-test", "0.0.1").with_tool(Tool::new(
            "greet",
            "say hello",
            object_schema(json!({"name": {"type": "string", "default": "world"}}), &[]),
            |args| ToolResult::text(format!("hello {}", args["name"].as_str().unwrap())),
        )))
    }

    async fn transcript(input: &str) -> Vec<String> {
        let (client_writer, server_reader) = io::duplex(64 * 1024);
        let (server_writer, mut client_reader) = io::duplex(64 * 1024);
        let serve = tokio::spawn(serve_lines(server(), server_reader, server_writer));

        let mut tx = client_writer;
        tx.write_all(input.as_bytes()).await.unwrap();
        drop(tx); // EOF

        serve.await.unwrap().unwrap();
        let mut out = String::new();
        client_reader.read_to_string(&mut out).await.unwrap();
        out.lines().map(String::from).collect()
    }

    #[tokio::test]
    async fn responses_come_back_one_line_each_in_order() {
        let input = concat!(
            r#"{"jsonrpc":"2.0","id":1,"method":"initialize","params":{}}"#, "\n",
            r#"{"jsonrpc":"2.0","method":"notifications/initialized"}"#, "\n",
            r#"{"jsonrpc":"2.0","id":2,"method":"tools/list"}"#, "\n",
            r#"{"jsonrpc":"2.0","id":3,"method":"tools/call","params":{"name":"greet","arguments":{}}}"#, "\n",
        );
        let lines = transcript(input).await;
        assert_eq!(lines.len(), 3, "notification produced no output");
        let first: RpcMessage = serde_json::from_str(&lines[0]).unwrap();
        assert_eq!(first.id, Some(json!(1)));
        let third: RpcMessage = serde_json::from_str(&lines[2]).unwrap();
        assert_eq!(third.result.unwrap()["content"][0]["text"], "hello world");
    }

    #[tokio::test]
    async fn immediate_eof_is_a_clean_exit() {
        let lines = transcript("").await;
        assert!(lines.is_empty());
    }

    #[tokio::test]
    async fn garbage_line_recovers_with_parse_error() {
        let input = concat!(
            "this is not json\n",
            r#"{"jsonrpc":"2.0","id":7,"method":"ping"}"#, "\n",
        );
        let lines = transcript(input).await;
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("\"id\":null"));
        let err: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
        assert_eq!(err["error"]["code"], crate::rpc::PARSE_ERROR);
        let pong: RpcMessage = serde_json::from_str(&lines[1]).unwrap();
        assert_eq!(pong.id, Some(json!(7)));
        assert!(pong.error.is_none());
    }

    #[tokio::test]
    async fn blank_lines_are_skipped() {
        let input = concat!("\n", "   \n", r#"{"jsonrpc":"2.0","id":1,"method":"ping"}"#, "\n");
        let lines = transcript(input).await;
        assert_eq!(lines.len(), 1);
    }
}

//! Client-against-server round trips over both transports.

use std::sync::Arc;

use serde_json::json;

use rolemap_client::{HttpMcpClient, StdioMcpClient, ToolResultExt};
use rolemap_core::frames::{parse_frame_file, FrameIndex};
use rolemap_mcp::{propbank_server, router};

fn index() -> Arc<FrameIndex> {
    let xml = r#"<frameset>
      <predicate lemma="pay">
        <roleset id="pay.01" name="give money in exchange">
          <aliases><alias pos="v">pay</alias><alias pos="n">payment</alias></aliases>
          <roles><role descr="payer" f="PAG" n="0"/><role descr="money" f="PPT" n="1"/></roles>
        </roleset>
      </predicate>
    </frameset>"#;
    Arc::new(FrameIndex::from_rolesets(parse_frame_file(xml).unwrap()))
}

async fn spawn_http() -> String {
    let app = router(Arc::new(propbank_server(index())), "/mcp");
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
    format!("http://{addr}/mcp")
}

#[tokio::test]
async fn http_client_full_conversation() {
    let url = spawn_http().await;
    let mut client = HttpMcpClient::new(&url);
    let handshake = client.initialize().await.unwrap();
    assert_eq!(handshake.protocol_version, rolemap_mcp::PROTOCOL_VERSION);
    assert_eq!(handshake.server_name, "rolemap-propbank");
    assert!(client.session_id().is_some());

    let tools = client.list_tools().await.unwrap();
    assert_eq!(tools.len(), 2);

    let result = client
        .call_tool("search_by_lemma", json!({"lemma": "payment"}))
        .await
        .unwrap();
    assert!(!result.is_error);
    assert!(result.first_text().unwrap().contains("pay.01"));
}

#[tokio::test]
async fn http_client_requires_initialize() {
    let url = spawn_http().await;
    let client = HttpMcpClient::new(&url);
    let err = client.list_tools().await.unwrap_err();
    assert!(matches!(err, rolemap_client::ClientError::NotInitialized));
}

#[tokio::test]
async fn http_client_surfaces_rpc_errors() {
    let url = spawn_http().await;
    let mut client = HttpMcpClient::new(&url);
    client.initialize().await.unwrap();
    let err = client.request("resources/list", None).await.unwrap_err();
    match err {
        rolemap_client::ClientError::Rpc(e) => assert_eq!(e.code, -32601),
        other => panic!("expected rpc error, got {other}"),
    }
}

#[tokio::test]
async fn stdio_client_against_a_scripted_server() {
    // a one-shot fake server: answers the first two requests with fixed ids
    let script = r#"
        read line
        printf '%s\n' '{"jsonrpc":"2.0","id":1,"result":{"protocolVersion":"2025-11-25","capabilities":{},"serverInfo":{"name":"fake","version":"0"}}}'
        read notification
        read line
        printf '%s\n' '{"jsonrpc":"2.0","id":2,"result":{"tools":[]}}'
    "#;
    let mut client = StdioMcpClient::spawn("sh", &["-c", script]).unwrap();
    let handshake = client.initialize().await.unwrap();
    assert_eq!(handshake.server_name, "fake");
    let tools = client.list_tools().await.unwrap();
    assert!(tools.is_empty());
    let status = client.shutdown().await.unwrap();
    assert!(status.success());
}

#[tokio::test]
async fn stdio_client_reports_server_exit() {
    let mut client = StdioMcpClient::spawn("true", &[]).unwrap();
    let err = client.request("ping", None).await.unwrap_err();
    assert!(matches!(err, rolemap_client::ClientError::ServerExited));
}

//! Property: write_file then read_text_file round-trips arbitrary UTF-8
//! content inside the sandbox.

use proptest::prelude::*;
use serde_json::json;

use rolemap_mcp::rpc::RpcMessage;
use rolemap_mcp::{fs_server, FsServerConfig, McpServer};

fn call(server: &McpServer, name: &str, args: serde_json::Value) -> serde_json::Value {
    server
        .handle(RpcMessage::request(1, "tools/call", Some(json!({"name": name, "arguments": args}))))
        .unwrap()
        .result
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn write_then_read_is_identity(content in "\\PC{0,400}", name in "[a-z]{1,12}") {
        let dir = tempfile::tempdir().unwrap();
        let server = fs_server(FsServerConfig::new(vec![dir.path().to_path_buf()], false).unwrap());
        let path = dir.path().join(format!("{name}.txt"));

        let written = call(&server, "write_file", json!({"path": path, "content": content}));
        prop_assert_eq!(&written["isError"], &json!(false));

        let read = call(&server, "read_text_file", json!({"path": path}));
        prop_assert_eq!(&read["isError"], &json!(false));
        prop_assert_eq!(read["content"][0]["text"].as_str().unwrap(), content.as_str());
    }
}

//! Model Context Protocol servers for the frame query engine and a
//! sandboxed filesystem toolset.
//!
//! # Architecture
//!
//! - **rpc**: JSON-RPC 2.0 message framing
//! - **tool**: tool descriptors, results, and input-schema validation
//! - **server**: transport-agnostic dispatch (`initialize`, `tools/list`,
//!   `tools/call`)
//! - **propbank**: the two query tools over a shared [`FrameIndex`](rolemap_core::FrameIndex)
//! - **fs**: sandboxed `list_directory` / `read_text_file` / `write_file`
//! - **stdio**: newline-delimited transport over standard streams
//! - **http**: streamable HTTP transport (axum) with session headers

pub mod fs;
pub mod http;
pub mod propbank;
pub mod rpc;
pub mod server;
pub mod stdio;
pub mod tool;

pub use fs::{fs_server, FsServerConfig};
pub use http::{router, serve_http, HttpServerConfig, SESSION_HEADER};
pub use propbank::propbank_server;
pub use rpc::{RpcError, RpcMessage};
pub use server::{McpServer, PROTOCOL_VERSION};
pub use stdio::{serve_lines, serve_stdio};
pub use tool::{Tool, ToolDescriptor, ToolResult};

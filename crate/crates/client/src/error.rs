use rolemap_mcp::RpcError;

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    #[error("transport failure: {0}")]
    Http(#[from] reqwest::Error),
    #[error("unexpected HTTP status {status}: {body}")]
    Status { status: u16, body: String },
    #[error("server error {code}: {message}", code = .0.code, message = .0.message)]
    Rpc(RpcError),
    #[error("protocol violation: {0}")]
    Protocol(String),
    #[error("not initialized: call initialize() first")]
    NotInitialized,
    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("server process exited (stream closed)")]
    ServerExited,
}

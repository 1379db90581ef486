//! Streamable HTTP transport: JSON-RPC request bodies POSTed to one
//! endpoint, a session id issued at initialize and required on every call
//! after it.
//!
//! Non-POST methods get 405, wrong content types 415, and session
//! violations 400 with a protocol-error body. Requests are served
//! concurrently over the shared server state.

use std::collections::HashSet;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::post;
use axum::Router;
use parking_lot::RwLock;
use uuid::Uuid;

use crate::rpc::{RpcMessage, INVALID_REQUEST, PARSE_ERROR};
use crate::server::McpServer;

/// Session header per the streamable HTTP transport.
pub const SESSION_HEADER: &str = "Mcp-Session-Id";

#[derive(Debug, Clone)]
pub struct HttpServerConfig {
    pub bind: SocketAddr,
    /// Path the endpoint is mounted on, e.g. `/mcp`.
    pub endpoint: String,
}

struct AppState {
    server: Arc<McpServer>,
    sessions: RwLock<HashSet<String>>,
}

/// Builds the axum router serving `server` at `endpoint`.
pub fn router(server: Arc<McpServer>, endpoint: &str) -> Router {
    let state = Arc::new(AppState { server, sessions: RwLock::new(HashSet::new()) });
    Router::new().route(endpoint, post(handle_post)).with_state(state)
}

fn rpc_body(message: &RpcMessage) -> Response {
    let body = serde_json::to_string(message).expect("responses serialize");
    (
        [(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))],
        body,
    )
        .into_response()
}

async fn handle_post(
    State(state): State<Arc<AppState>>,
    headers: HeaderMap,
    body: Bytes,
) -> Response {
    let content_type_ok = headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|v| v.trim().to_ascii_lowercase().starts_with("application/json"));
    if !content_type_ok {
        let err = RpcMessage::failure(None, INVALID_REQUEST, "Content-Type must be application/json");
        return (StatusCode::UNSUPPORTED_MEDIA_TYPE, rpc_body(&err)).into_response();
    }

    let msg: RpcMessage = match serde_json::from_slice(&body) {
        Ok(msg) => msg,
        Err(e) => {
            let err = RpcMessage::failure(None, PARSE_ERROR, format!("parse error: {e}"));
            return (StatusCode::OK, rpc_body(&err)).into_response();
        }
    };

    let is_initialize = msg.method.as_deref() == Some("initialize");
    let mut issued_session: Option<String> = None;

    if is_initialize {
        let session = Uuid::new_v4().to_string();
        state.sessions.write().insert(session.clone());
        issued_session = Some(session);
    } else {
        let presented = headers.get(SESSION_HEADER).and_then(|v| v.to_str().ok());
        let known = presented.is_some_and(|s| state.sessions.read().contains(s));
        if !known {
            let err = RpcMessage::failure(
                msg.id.clone(),
                INVALID_REQUEST,
                format!("missing or unknown {SESSION_HEADER} header; initialize first"),
            );
            return (StatusCode::BAD_REQUEST, rpc_body(&err)).into_response();
        }
    }

    match state.server.handle(msg) {
        Some(response) => {
            let mut http = (StatusCode::OK, rpc_body(&response)).into_response();
            if let Some(session) = issued_session {
                if let Ok(value) = HeaderValue::from_str(&session) {
                    http.headers_mut().insert(SESSION_HEADER, value);
                }
            }
            http
        }
        None => StatusCode::ACCEPTED.into_response(),
    }
}

/// Binds and serves until ctrl-c.
pub async fn serve_http(server: Arc<McpServer>, config: HttpServerConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(config.bind).await?;
    let addr = listener.local_addr()?;
    tracing::info!(%addr, endpoint = %config.endpoint, server = server.name(), "HTTP transport listening");
    let app = router(server, &config.endpoint);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
            tracing::info!("shutdown signal received");
        })
        .await
}

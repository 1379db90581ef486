//! The two long-running server commands.

use std::sync::Arc;

use rolemap_mcp::{fs_server, propbank_server, serve_http, serve_stdio, FsServerConfig, HttpServerConfig};

use crate::config::{resolve_required, FileConfig};
use crate::{ServeFsArgs, ServePropbankArgs, EXIT_FATAL, EXIT_OK, EXIT_USAGE};

pub async fn propbank(args: ServePropbankArgs, file: &FileConfig) -> u8 {
    let frames_dir = match resolve_required(
        args.frames_dir.clone(),
        file.frames_dir.clone(),
        "--frames directory",
    ) {
        Ok(dir) => dir,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let index = match super::load_index_or_exit(&frames_dir) {
        Ok(index) => index,
        Err(code) => return code,
    };
    tracing::info!(
        rolesets = index.roleset_count(),
        lemma_keys = index.lemma_key_count(),
        "frame corpus ready"
    );
    let server = Arc::new(propbank_server(index));

    match args.transport.as_str() {
        "stdio" => match serve_stdio(server).await {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: stdio transport failed: {e}");
                EXIT_FATAL
            }
        },
        "http" => {
            let bind = match args.bind.parse() {
                Ok(addr) => addr,
                Err(e) => {
                    eprintln!("error: invalid --bind address {:?}: {e}", args.bind);
                    return EXIT_USAGE;
                }
            };
            let config = HttpServerConfig { bind, endpoint: args.endpoint.clone() };
            match serve_http(server, config).await {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("error: HTTP transport failed: {e}");
                    EXIT_FATAL
                }
            }
        }
        other => {
            eprintln!("error: unknown transport {other:?}");
            EXIT_USAGE
        }
    }
}

pub async fn fs(args: ServeFsArgs) -> u8 {
    let config = match FsServerConfig::new(args.allowed_dirs.clone(), args.read_only) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FATAL;
        }
    };
    tracing::info!(
        allowed = ?config.allowed_dirs(),
        read_only = config.read_only(),
        "filesystem sandbox ready"
    );
    let server = Arc::new(fs_server(config));
    match serve_stdio(server).await {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: stdio transport failed: {e}");
            EXIT_FATAL
        }
    }
}

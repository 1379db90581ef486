//! `rolemap`: map relational schemas to PropBank rolesets.
//!
//! Subcommands: `serve-propbank` and `serve-fs` host the MCP servers,
//! `map` runs the orchestrated pipeline, `coordinate` reports per-table
//! status, `validate` checks mapping files, and `frames` queries the
//! corpus (optionally through a running HTTP server).
//!
//! Exit codes: 0 success, 1 domain failure, 2 fatal input error, 64 usage.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use config::FileConfig;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_FATAL: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "rolemap", version, about = "Map relational database schemas to PropBank rolesets")]
struct Cli {
    /// Config file (TOML); flags and ROLEMAP_* environment variables win
    /// over its values.
    #[arg(long, global = true, env = "ROLEMAP_CONFIG")]
    config: Option<PathBuf>,

    /// Log filter (error|warn|info|debug|trace); diagnostics go to stderr.
    #[arg(long, global = true, env = "ROLEMAP_LOG_LEVEL")]
    log_level: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Serve the PropBank query engine over an MCP transport.
    ServePropbank(ServePropbankArgs),
    /// Serve the sandboxed filesystem toolset over stdio.
    ServeFs(ServeFsArgs),
    /// Run the full mapping pipeline for one database.
    Map(MapArgs),
    /// Report per-table mapping status and the pending-work list.
    Coordinate(CoordinateArgs),
    /// Validate mapping files; exit 0 only when all requested tables are VALID.
    Validate(ValidateArgs),
    /// Query the frame corpus.
    #[command(subcommand)]
    Frames(FramesCommand),
}

#[derive(Args)]
struct ServePropbankArgs {
    /// Directory of PropBank frame XML files.
    #[arg(long = "frames", env = "ROLEMAP_FRAMES_DIR")]
    frames_dir: Option<PathBuf>,
    /// Transport to serve on.
    #[arg(long, value_parser = ["stdio", "http"], default_value = "http")]
    transport: String,
    /// Bind address for the HTTP transport.
    #[arg(long, default_value = "127.0.0.1:8811")]
    bind: String,
    /// Endpoint path for the HTTP transport.
    #[arg(long, default_value = "/mcp")]
    endpoint: String,
}

#[derive(Args)]
struct ServeFsArgs {
    /// Allowed sandbox roots (repeatable).
    #[arg(long = "allow", required = true)]
    allowed_dirs: Vec<PathBuf>,
    /// Reject write_file calls.
    #[arg(long)]
    read_only: bool,
}

#[derive(Args)]
struct MapArgs {
    /// DDL file with CREATE TABLE statements.
    #[arg(long)]
    ddl: PathBuf,
    /// Database name; defaults to the DDL file stem.
    #[arg(long)]
    db: Option<String>,
    /// Output folder (mappings land in OUT/DB/TABLE.json).
    #[arg(long = "out", env = "ROLEMAP_OUTPUT_FOLDER")]
    output_folder: Option<PathBuf>,
    #[arg(long = "frames", env = "ROLEMAP_FRAMES_DIR")]
    frames_dir: Option<PathBuf>,
    /// Keep at most this many rolesets per table.
    #[arg(long = "max-rolesets", env = "ROLEMAP_MAX_ROLESETS")]
    max_rolesets_per_table: Option<usize>,
    /// Candidate verbs derived per table.
    #[arg(long = "num-verbs", env = "ROLEMAP_NUM_VERBS")]
    num_verbs: Option<usize>,
    /// Drop candidates scoring below this confidence.
    #[arg(long = "min-confidence")]
    min_confidence: Option<f64>,
    /// Mapper executions allowed in flight.
    #[arg(long, env = "ROLEMAP_CONCURRENCY")]
    concurrency: Option<usize>,
    /// Coordinate passes before giving up on failing tables.
    #[arg(long = "max-iterations", default_value_t = 3)]
    max_iterations: u32,
    /// Machine-readable report on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CoordinateArgs {
    #[arg(long)]
    ddl: PathBuf,
    #[arg(long)]
    db: Option<String>,
    #[arg(long = "out", env = "ROLEMAP_OUTPUT_FOLDER")]
    output_folder: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    ddl: PathBuf,
    #[arg(long)]
    db: Option<String>,
    #[arg(long = "out", env = "ROLEMAP_OUTPUT_FOLDER")]
    output_folder: Option<PathBuf>,
    /// Restrict validation to these tables (comma-separated or repeated).
    #[arg(long, value_delimiter = ',')]
    tables: Vec<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum FramesCommand {
    /// Search rolesets by lemma or alias.
    Search(FramesSearchArgs),
    /// Fetch one roleset by sense id.
    Get(FramesGetArgs),
}

#[derive(Args)]
struct FramesSearchArgs {
    #[arg(long)]
    lemma: String,
    #[arg(long = "max-results", default_value_t = 10)]
    max_results: usize,
    #[arg(long = "frames", env = "ROLEMAP_FRAMES_DIR")]
    frames_dir: Option<PathBuf>,
    /// Query a running HTTP server instead of loading the corpus locally.
    #[arg(long)]
    server: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FramesGetArgs {
    #[arg(long = "sense-id")]
    sense_id: String,
    /// Omit annotated examples from the output.
    #[arg(long = "no-examples")]
    no_examples: bool,
    #[arg(long = "frames", env = "ROLEMAP_FRAMES_DIR")]
    frames_dir: Option<PathBuf>,
    /// Query a running HTTP server instead of loading the corpus locally.
    #[arg(long)]
    server: Option<String>,
    #[arg(long)]
    json: bool,
}

fn init_tracing(level: &str) {
    use std::io::IsTerminal;
    use tracing_subscriber::EnvFilter;
    let filter = EnvFilter::try_new(level).unwrap_or_else(|_| EnvFilter::new("info"));
    tracing_subscriber::fmt()
        .with_env_filter(filter)
        .with_writer(std::io::stderr)
        .with_ansi(std::io::stderr().is_terminal())
        .init();
}

#[tokio::main]
async fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let file_config = match FileConfig::load(cli.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FATAL);
        }
    };
    let level = cli
        .log_level
        .clone()
        .or_else(|| file_config.log_level.clone())
        .unwrap_or_else(|| "info".to_string());
    init_tracing(&level);

    let code = match cli.command {
        Command::ServePropbank(args) => commands::serve::propbank(args, &file_config).await,
        Command::ServeFs(args) => commands::serve::fs(args).await,
        Command::Map(args) => commands::map::run(args, &file_config),
        Command::Coordinate(args) => commands::coordinate::run(args, &file_config),
        Command::Validate(args) => commands::validate::run(args, &file_config),
        Command::Frames(FramesCommand::Search(args)) => {
            commands::frames::search(args, &file_config).await
        }
        Command::Frames(FramesCommand::Get(args)) => commands::frames::get(args, &file_config).await,
    };
    ExitCode::from(code)
}

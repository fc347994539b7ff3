//! Front end for the sepsearch simulators: argument parsing, config files,
//! CSV/JSON output and the exit-code contract.
//!
//! Exit codes: 0 on success, 1 for numeric or domain failures (including a
//! table with failed cells), 2 for usage errors.

pub mod args;
pub mod commands;
pub mod cost;
pub mod omega;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::parser::ValueSource;
use clap::{CommandFactory, FromArgMatches};
use serde_json::Value;

pub use args::Cli;

/// Environment variable read for the worker thread count.
pub const THREADS_ENV: &str = "SEPSEARCH_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Core(#[from] sepsearch_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    /// Output was produced but some rows carry errors.
    #[error("{0} row(s) failed")]
    PartialFailure(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse { .. } => "parse",
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "io",
            CliError::PartialFailure(_) => "partial",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Parse { position, .. } = self {
            obj["position"] = (*position).into();
        }
        serde_json::json!({ "error": obj })
    }
}

/// Parses `argv`, folding in `--config` values for flags not given on the
/// command line.
pub fn parse_args(argv: &[OsString]) -> Result<Cli, clap::Error> {
    let cmd = Cli::command();
    let matches = cmd.clone().try_get_matches_from(argv)?;
    let Some(path) = matches.get_one::<String>("config").cloned() else {
        return Cli::from_arg_matches(&matches);
    };
    let extra = config_args(&path, &matches).map_err(|e| cmd.clone().error(clap::error::ErrorKind::InvalidValue, e))?;
    if extra.is_empty() {
        return Cli::from_arg_matches(&matches);
    }
    let mut merged = argv.to_vec();
    merged.extend(extra);
    let matches = cmd.try_get_matches_from(merged)?;
    Cli::from_arg_matches(&matches)
}

/// Translates a JSON object `{ "flag-name": value }` into extra arguments.
fn config_args(path: &str, matches: &clap::ArgMatches) -> Result<Vec<OsString>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("config {path}: {e}"))?;
    let Value::Object(map) = value else {
        return Err(format!("config {path}: top level must be an object"));
    };
    let sub = matches.subcommand().map(|(_, m)| m);
    let mut out = Vec::new();
    for (key, val) in map {
        if key == "config" {
            return Err("config files cannot nest".into());
        }
        let id = key.replace('-', "_");
        let on_cli = [Some(matches), sub].into_iter().flatten().any(|m| {
            m.try_contains_id(&id).unwrap_or(false) && m.value_source(&id) == Some(ValueSource::CommandLine)
        });
        if on_cli {
            continue;
        }
        let flag = format!("--{key}");
        let scalar = |v: &Value| -> Result<String, String> {
            match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                Value::Bool(b) => Ok(b.to_string()),
                _ => Err(format!("config key {key}: unsupported value {v}")),
            }
        };
        match &val {
            Value::Bool(true) => out.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                for item in items {
                    out.push(flag.clone().into());
                    out.push(scalar(item)?.into());
                }
            }
            v => {
                out.push(flag.into());
                out.push(scalar(v)?.into());
            }
        }
    }
    Ok(out)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn report(err: &CliError, json: bool) {
    let mut stderr = std::io::stderr().lock();
    if json {
        let _ = writeln!(stderr, "{}", err.to_json());
    } else {
        let _ = writeln!(stderr, "error: {err}");
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let json_errors = argv.iter().any(|a| a == "--json-errors");
    let cli = match parse_args(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            if json_errors {
                report(&CliError::Usage(e.kind().to_string()), true);
            } else {
                let _ = e.print();
            }
            return 2;
        }
    };
    let result = configure_threads().and_then(|()| commands::execute(&cli));
    match result {
        Ok(()) => 0,
        Err(e) => {
            report(&e, cli.json_errors);
            e.exit_code()
        }
    }
}

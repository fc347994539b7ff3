//! Number formatting and the CSV/JSON envelopes.

use serde::Serialize;
use serde_json::{json, Value};

use crate::CliError;

/// 17 significant digits.
pub fn machine(x: f64) -> String {
    format!("{x:.16e}")
}

/// 2 significant figures, e.g. `5.4e-4`.
pub fn two_sig(x: f64) -> String {
    format!("{x:.1e}")
}

/// CSV with a mandatory header and LF line endings.
pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(std::io::Error::other(e)))
}

/// `{command, params, <key>, version}`.
pub fn envelope(command: &str, params: &impl Serialize, key: &str, body: Value) -> Result<String, CliError> {
    let params = serde_json::to_value(params).map_err(|e| CliError::Io(e.into()))?;
    let mut obj = serde_json::Map::new();
    obj.insert("command".into(), json!(command));
    obj.insert("params".into(), params);
    obj.insert(key.into(), body);
    obj.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).map_err(|e| CliError::Io(e.into()))?;
    text.push('\n');
    Ok(text)
}

pub fn to_value(v: &impl Serialize) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Io(e.into()))
}

pub fn emit(text: &str, path: Option<&str>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

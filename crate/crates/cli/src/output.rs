use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::CliError;

pub use filter::fmt_f64;

/// First line of every output file; the only line allowed to differ between
/// builds for the same config.
pub fn version_line() -> String {
    format!("# cvdv {}", env!("CARGO_PKG_VERSION"))
}

/// CSV with a version comment, a description comment, then header and rows.
pub fn write_csv(dir: &Path, name: &str, description: &str, header: &str, rows: &[String]) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir)?;
    let mut text = format!("{}\n# {description}\n{header}\n", version_line());
    for r in rows {
        text.push_str(r);
        text.push('\n');
    }
    let path = dir.join(name);
    fs::write(&path, text)?;
    Ok(path)
}

/// Pretty JSON with the version under `"version"`.
pub fn write_json(dir: &Path, name: &str, mut value: Value) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir)?;
    if let Value::Object(m) = &mut value {
        m.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    }
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(&value).map_err(|e| CliError::Failed(e.to_string()))?;
    fs::write(&path, text + "\n")?;
    Ok(path)
}

/// Join formatted floats into a CSV row.
pub fn row(values: &[f64]) -> String {
    values.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(",")
}

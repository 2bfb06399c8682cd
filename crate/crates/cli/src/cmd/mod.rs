pub mod analyze;
pub mod calibrate;
pub mod cycle;
pub mod scenario;
pub mod simulate;
pub mod sweep;
pub mod tables;
pub mod wind;

use std::path::Path;

use rbs_core::experiments::Scenario;
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn load_scenario(path: &Path) -> CliResult<Scenario> {
    let text = read_text(path)?;
    let scenario = Scenario::from_json(&text).map_err(|e| CliError::input(path, e.to_string()))?;
    Ok(scenario)
}

/// Parses `path=value`; the value is read as JSON, falling back to a string.
pub fn parse_override(raw: &str) -> CliResult<(String, Value)> {
    let (path, value) = raw
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("override {raw:?} must look like path=value")))?;
    let value = serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_owned()));
    Ok((path.trim().to_owned(), value))
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

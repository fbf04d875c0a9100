//! Text formats shared by the commands.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, Result};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Empty field for a missing value.
pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Top-level layout of every JSON report.
#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub command: &'static str,
    pub config_echo: Value,
    pub results: Value,
    pub residual_summary: Value,
}

impl JsonReport {
    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Everything a command produces; `main` decides where it goes.
#[derive(Debug)]
pub struct CommandOutput {
    /// Primary table, if the command emits one.
    pub csv: Option<String>,
    pub json: JsonReport,
    /// Human-readable lines for the terminal.
    pub lines: Vec<String>,
    /// Set when the run completed but did not pass; the output is still
    /// written and the error decides the exit code.
    pub failure: Option<CliError>,
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [1.0 - 5f64.sqrt(), 0.1, -3.0, 1e-300, f64::MAX] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(3.0), "3.0000000000000000e0");
        assert_eq!(opt_num(None), "");
    }
}

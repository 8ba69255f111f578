use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

/// Everything needed to rerun a command and compare its output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub timestamp: String,
    pub version: &'static str,
}

impl RunRecord {
    pub fn new(
        command: &str,
        config: impl Serialize,
        results: impl Serialize,
    ) -> Result<Self, CliError> {
        Ok(RunRecord {
            command: command.to_string(),
            config: serde_json::to_value(config)?,
            results: serde_json::to_value(results)?,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            version: env!("CARGO_PKG_VERSION"),
        })
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }
}

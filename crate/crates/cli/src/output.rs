//! Output sinks: stdout or file, CSV (12 significant digits) or JSON
//! (full double precision via shortest round-trip formatting).

use clap::ValueEnum;
use serde::Serialize;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// CSV numeric formatting: 12 significant digits.
pub fn csv_num(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    format!("{v:.11e}")
}

pub struct Sink<'a> {
    path: Option<&'a Path>,
    format: OutputFormat,
}

impl<'a> Sink<'a> {
    pub fn new(path: Option<&'a Path>, format: OutputFormat) -> Self {
        Sink { path, format }
    }

    /// Emit rows in the configured format; with a file sink, print only the
    /// summary line on stdout.
    pub fn emit<T: Serialize>(&self, rows: &[T], csv: &str, summary: &str) -> gjef::Result<()> {
        let body = match self.format {
            OutputFormat::Csv => csv.to_string(),
            OutputFormat::Json => serde_json::to_string_pretty(rows)
                .map_err(|e| gjef::Error::Parse(format!("json encoding failed: {e}")))?,
        };
        self.write(&body, summary)
    }

    /// Emit a preformatted document (used for single-object JSON outputs).
    pub fn emit_raw(&self, body: &str, summary: &str) -> gjef::Result<()> {
        self.write(body, summary)
    }

    fn write(&self, body: &str, summary: &str) -> gjef::Result<()> {
        match self.path {
            Some(path) => {
                let mut text = body.to_string();
                if !text.ends_with('\n') {
                    text.push('\n');
                }
                std::fs::write(path, text).map_err(|e| {
                    gjef::Error::Parse(format!("cannot write {}: {e}", path.display()))
                })?;
                println!("wrote {summary} to {}", path.display());
            }
            None => {
                println!("{body}");
            }
        }
        Ok(())
    }
}

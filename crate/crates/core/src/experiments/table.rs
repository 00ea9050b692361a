// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Result tables and their CSV form.
//!
//! The CSV layout is one '#' metadata line carrying the config hash and
//! seed, a header of column names, then one comma-separated row per
//! record with 12 significant digits. Runs are reproducible, so repeated
//! runs of the same config and seed emit identical bytes.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Result, SimError};

/// Run provenance stamped into the table.
#[derive(Debug, Clone)]
pub struct TableMetadata {
    pub config_hash: String,
    pub seed: u64,
    pub version: String,
    /// Wall time of the run in seconds. Deliberately kept out of the CSV:
    /// output bytes depend only on (config, seed).
    pub wall_time_s: f64,
}

/// Rectangular numeric results with named columns.
#[derive(Debug, Clone)]
pub struct ResultTable {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    metadata: TableMetadata,
    /// Extra "# key=value" trailer lines (e.g. scatter summaries).
    trailers: Vec<(String, String)>,
}

impl ResultTable {
    pub fn new(columns: Vec<String>, metadata: TableMetadata) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            metadata,
            trailers: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        assert!(row.iter().all(|x| x.is_finite()), "table entries must be finite");
        self.rows.push(row);
    }

    pub fn push_trailer(&mut self, key: &str, value: String) {
        self.trailers.push((key.to_string(), value));
    }

    /// Replace the metadata (used to stamp the final wall time).
    pub fn with_metadata(mut self, metadata: TableMetadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn metadata(&self) -> &TableMetadata {
        &self.metadata
    }

    /// Index of a named column.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of a named column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Render the CSV document.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# spinfridge v{} config=fnv1a:{} seed={}",
            self.metadata.version, self.metadata.config_hash, self.metadata.seed
        );
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.11e}")).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        for (k, v) in &self.trailers {
            let _ = writeln!(out, "# {k}={v}");
        }
        out
    }

    /// Write the CSV document to a file.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}

/// Parse a CSV document produced by [`ResultTable::to_csv`]; '#' lines are
/// skipped. Returns column names and rows.
pub fn read_csv(reader: impl Read) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let reader = BufReader::new(reader);
    let mut columns: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match &columns {
            None => columns = Some(trimmed.split(',').map(|s| s.to_string()).collect()),
            Some(cols) => {
                let row: std::result::Result<Vec<f64>, _> =
                    trimmed.split(',').map(|s| s.parse::<f64>()).collect();
                let row = row.map_err(|e| {
                    SimError::ConfigError(format!("bad CSV row '{trimmed}': {e}"))
                })?;
                if row.len() != cols.len() {
                    return Err(SimError::ConfigError(format!(
                        "CSV row has {} cells, header has {}",
                        row.len(),
                        cols.len()
                    )));
                }
                rows.push(row);
            }
        }
    }
    columns
        .map(|c| (c, rows))
        .ok_or_else(|| SimError::ConfigError("CSV document has no header".into()))
}

//! One JSON object per line, one line per reported query.

use std::io::BufRead;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub t: u64,
    pub estimate: Option<f64>,
    pub truth: Option<f64>,
    pub ratio: Option<f64>,
    pub bucket_count: usize,
    pub footprint: usize,
    pub algorithm: String,
    pub epsilon: f64,
    pub alpha: usize,
    pub w: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carryover_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl QueryRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Reads records, skipping blank lines.
pub fn read_records<R: BufRead>(reader: R) -> Result<Vec<QueryRecord>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.context("reading records")?;
        if line.trim().is_empty() {
            continue;
        }
        let record: QueryRecord =
            serde_json::from_str(&line).with_context(|| format!("record on line {}", idx + 1))?;
        out.push(record);
    }
    Ok(out)
}

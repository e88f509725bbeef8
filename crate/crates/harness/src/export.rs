//! Record export: CSV (RFC-4180 quoting, header fixed to the record field
//! order) and JSON (pretty-printed array). Both are byte-stable functions of
//! the records. Readers exist for round-trip checks and downstream tooling.

use std::path::Path;
use std::str::FromStr;

use crate::experiment::ExperimentRecord;
use crate::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(HarnessError::Config(format!(
                "unknown format `{other}` (expected csv or json)"
            ))),
        }
    }
}

pub fn records_to_csv(records: &[ExperimentRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(HarnessError::EmptyRecords);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)
            .map_err(|e| HarnessError::Serde(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| HarnessError::Serde(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| HarnessError::Serde(e.to_string()))
}

pub fn records_from_csv(s: &str) -> Result<Vec<ExperimentRecord>> {
    let mut r = csv::Reader::from_reader(s.as_bytes());
    r.deserialize()
        .map(|rec| rec.map_err(|e| HarnessError::Serde(e.to_string())))
        .collect()
}

pub fn records_to_json(records: &[ExperimentRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(HarnessError::EmptyRecords);
    }
    let mut s =
        serde_json::to_string_pretty(records).map_err(|e| HarnessError::Serde(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn records_from_json(s: &str) -> Result<Vec<ExperimentRecord>> {
    serde_json::from_str(s).map_err(|e| HarnessError::Serde(e.to_string()))
}

pub fn render(records: &[ExperimentRecord], format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::Csv => records_to_csv(records),
        ExportFormat::Json => records_to_json(records),
    }
}

pub fn write_records(
    records: &[ExperimentRecord],
    format: ExportFormat,
    path: &Path,
) -> Result<()> {
    let body = render(records, format)?;
    std::fs::write(path, body).map_err(|e| HarnessError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

/// The CSV header that the record field order pins down.
pub const CSV_HEADER: &str = "p,b1,b2,b3,b4,b5,group_order,t,tag,n,lin_complexity,theorem_bound,conjecture_target,conjecture_evaluable,conjecture_hit,pole_count";

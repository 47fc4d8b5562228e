//! CSV and JSON output.
//!
//! The trial CSV starts with a `# sos-trials v<N>` comment line followed by
//! a header with the columns of [`CSV_COLUMNS`], in that order. `phases_json`
//! holds one object per phase with keys `i`, `k` (buckets), `a` (cells),
//! `n` (cells filled at overflow), `t` (overflow time), `t_prime` (fill
//! time) and `transition` (arrival that started the phase). The summary is
//! a single JSON object checked by [`validate_summary`].

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{ExperimentReport, ExperimentSummary, TrialResult};
use crate::error::{Error, Result};

pub const CSV_SCHEMA_VERSION: u32 = 1;
pub const SUMMARY_SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 14] = [
    "n",
    "d",
    "p",
    "seed",
    "cost",
    "opt",
    "ratio",
    "failed",
    "within_buckets",
    "between_buckets",
    "between_subarrays",
    "backyard",
    "k",
    "phases_json",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

fn phases_json(t: &TrialResult) -> String {
    let phases: Vec<_> = t
        .trace
        .phases
        .iter()
        .map(|p| {
            json!({
                "i": p.index,
                "k": p.buckets,
                "a": p.len,
                "n": p.placed_at_overflow,
                "t": p.overflow_time,
                "t_prime": p.fill_time,
                "transition": p.started_at,
            })
        })
        .collect();
    serde_json::Value::Array(phases).to_string()
}

/// One row per trial, in the given order.
pub fn trials_to_csv(trials: &[TrialResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS)?;
    for t in trials {
        let b = &t.breakdown;
        w.write_record([
            t.n.to_string(),
            t.d.to_string(),
            t.p.to_string(),
            t.seed.to_string(),
            t.cost.to_string(),
            t.opt.value.to_string(),
            t.ratio.to_string(),
            t.failed.to_string(),
            b.within_buckets.to_string(),
            b.between_buckets.to_string(),
            b.between_subarrays.to_string(),
            b.backyard.to_string(),
            t.trace.k().to_string(),
            phases_json(t),
        ])?;
    }
    let body = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    let body = String::from_utf8(body).map_err(|e| Error::Io(e.to_string()))?;
    Ok(format!("# sos-trials v{CSV_SCHEMA_VERSION}\n{body}"))
}

pub fn summary_to_json(summary: &ExperimentSummary) -> Result<String> {
    Ok(serde_json::to_string_pretty(summary)? + "\n")
}

/// Parses a summary and checks its version and internal consistency.
pub fn validate_summary(text: &str) -> Result<ExperimentSummary> {
    let s: ExperimentSummary = serde_json::from_str(text)?;
    if s.schema_version != SUMMARY_SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unsupported summary schema version {}",
            s.schema_version
        )));
    }
    for size in &s.sizes {
        let rates = [size.failure_rate, size.fill_before_overflow_rate];
        if size.trials != s.trials || rates.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return Err(Error::Parse(format!(
                "inconsistent entry for n = {}",
                size.n
            )));
        }
    }
    Ok(s)
}

/// Writes `summary.json` and the per-trial file (`trials.csv` or
/// `trials.json`) into `dir`, returning the paths written.
pub fn emit_report(
    report: &ExperimentReport,
    dir: &Path,
    format: OutputFormat,
) -> Result<Vec<PathBuf>> {
    if report.trials.is_empty() && report.summary.sizes.is_empty() {
        return Err(Error::EmptyInput);
    }
    fs::create_dir_all(dir)?;
    let summary_path = dir.join("summary.json");
    fs::write(&summary_path, summary_to_json(&report.summary)?)?;
    let trials_path = match format {
        OutputFormat::Csv => {
            let p = dir.join("trials.csv");
            fs::write(&p, trials_to_csv(&report.trials)?)?;
            p
        }
        OutputFormat::Json => {
            let p = dir.join("trials.json");
            fs::write(&p, serde_json::to_string_pretty(&report.trials)? + "\n")?;
            p
        }
    };
    Ok(vec![summary_path, trials_path])
}

//! CSV result tables.
//!
//! Header lines start with `#`; the first line without it names the
//! columns. Reals are written with 17 significant digits.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use ptdd_core::engine::{SweepPoint, SweepSpec};
use ptdd_core::sequence::SequenceKind;

use crate::config::{ExperimentConfig, UNIT_CONVENTION};
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    pub header: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub fn real(v: f64) -> String {
    format!("{v:.16e}")
}

impl ResultTable {
    pub fn from_sweep(cfg: &ExperimentConfig, spec: &SweepSpec, points: &[SweepPoint]) -> Self {
        let kinds = &spec.kinds;
        let mut columns: Vec<String> = spec.axes.iter().map(|a| a.axis.label().to_string()).collect();
        for prefix in ["fidelity", "batch_std", "failed"] {
            columns.extend(kinds.iter().map(|k| format!("{prefix}_{}", k.label())));
        }
        columns.push("status".into());

        let mut failed_trials = vec![0u64; kinds.len()];
        let mut failed_points = 0usize;
        let rows = points
            .iter()
            .map(|p| {
                let mut row: Vec<String> = p.coords.iter().map(|&c| real(c)).collect();
                match &p.outcome {
                    Ok(results) => {
                        row.extend(results.iter().map(|r| real(r.fidelity)));
                        row.extend(results.iter().map(|r| real(r.fidelity_spread)));
                        row.extend(results.iter().map(|r| r.failed.to_string()));
                        for (acc, r) in failed_trials.iter_mut().zip(results) {
                            *acc += r.failed;
                        }
                        row.push("ok".into());
                    }
                    Err(e) => {
                        failed_points += 1;
                        row.extend(std::iter::repeat_n(String::new(), 3 * kinds.len()));
                        row.push(format!("\"error: {}\"", e.to_string().replace('"', "'")));
                    }
                }
                row
            })
            .collect();

        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let failures: Vec<String> = kinds
            .iter()
            .zip(&failed_trials)
            .map(|(k, n)| format!("{}={n}", k.label()))
            .collect();
        let mut header = vec![
            format!("ptdd {}", env!("CARGO_PKG_VERSION")),
            format!("generated_unix_s = {now}"),
            format!("units: {UNIT_CONVENTION}"),
            format!("seed = {}", cfg.seed),
            format!("trials = {}", cfg.trials),
            format!("normalization = {}", cfg.normalization.label()),
            format!("failed_trials: {}", failures.join(" ")),
            format!("failed_points = {failed_points}"),
        ];
        header.push("config:".into());
        header.extend(cfg.to_text().lines().map(|l| format!("  {l}")));
        Self { header, columns, rows }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            out.push_str("# ");
            out.push_str(h);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    /// Fidelity column for `kind`, if present.
    pub fn fidelities(&self, kind: SequenceKind) -> Option<Vec<f64>> {
        let name = format!("fidelity_{}", kind.label());
        let col = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[col].parse().unwrap_or(f64::NAN)).collect())
    }
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp{}", std::process::id()));
    let result = fs::File::create(&tmp)
        .and_then(|mut f| {
            f.write_all(contents.as_bytes())?;
            f.sync_all()
        })
        .and_then(|_| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io)
}

/// Data rows of a rendered table: everything after the column line.
pub fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

//! Sweep reports: per-row LHS/RHS ratios with verdicts, fitted slopes,
//! and deterministic CSV / JSON / gnuplot emission.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::GridConfig;
use crate::error::{BilapError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    Error,
    /// Measured and reported, but not asserted.
    Info,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Error => "ERROR",
            Verdict::Info => "INFO",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub verdict: Verdict,
    pub note: String,
}

impl ReportRow {
    pub fn measured(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let ratio = if rhs != 0.0 { lhs / rhs } else { f64::INFINITY };
        ReportRow { label: label.into(), lhs, rhs, ratio, verdict: Verdict::Info, note: String::new() }
    }

    /// Row asserting lhs <= threshold (ratio against the threshold).
    pub fn bounded(label: impl Into<String>, value: f64, threshold: f64) -> Self {
        ReportRow {
            label: label.into(),
            lhs: value,
            rhs: threshold,
            ratio: if threshold != 0.0 { value / threshold } else { f64::INFINITY },
            verdict: if value <= threshold { Verdict::Pass } else { Verdict::Fail },
            note: String::new(),
        }
    }

    pub fn failed(label: impl Into<String>, err: &BilapError) -> Self {
        ReportRow {
            label: label.into(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            ratio: f64::NAN,
            verdict: Verdict::Error,
            note: err.to_string(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub suite: String,
    pub grid: GridConfig,
    pub seed: u64,
    pub version: String,
    pub rows: Vec<ReportRow>,
    /// Named fitted slopes (growth-law regressions).
    pub slopes: Vec<(String, f64)>,
}

impl SweepReport {
    pub fn new(suite: impl Into<String>, grid: GridConfig, seed: u64) -> Self {
        SweepReport {
            suite: suite.into(),
            grid,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            rows: Vec::new(),
            slopes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: ReportRow) {
        self.rows.push(row);
    }

    pub fn push_slope(&mut self, name: impl Into<String>, slope: f64) {
        self.slopes.push((name.into(), slope));
    }

    /// True iff no row failed or errored.
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| matches!(r.verdict, Verdict::Pass | Verdict::Info))
    }

    fn fmt_float(v: f64) -> String {
        if v.is_nan() {
            "nan".into()
        } else if v.is_infinite() {
            if v > 0.0 { "inf".into() } else { "-inf".into() }
        } else {
            format!("{v:.12e}")
        }
    }

    pub fn write_csv(&self, path: &Path) -> Result<PathBuf> {
        let file = File::create(path).map_err(|e| BilapError::io(path.display().to_string(), e))?;
        let mut w = BufWriter::new(file);
        let io = |e| BilapError::io(path.display().to_string(), e);
        writeln!(w, "label,lhs,rhs,ratio,verdict,note").map_err(io)?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.label,
                Self::fmt_float(r.lhs),
                Self::fmt_float(r.rhs),
                Self::fmt_float(r.ratio),
                r.verdict,
                r.note.replace(',', ";")
            )
            .map_err(io)?;
        }
        for (name, slope) in &self.slopes {
            writeln!(w, "slope:{name},{},,,INFO,", Self::fmt_float(*slope)).map_err(io)?;
        }
        w.flush().map_err(io)?;
        Ok(path.to_path_buf())
    }

    pub fn write_json(&self, path: &Path) -> Result<PathBuf> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| BilapError::FormatError { path: path.display().to_string(), message: e.to_string() })?;
        std::fs::write(path, text + "\n")
            .map_err(|e| BilapError::io(path.display().to_string(), e))?;
        Ok(path.to_path_buf())
    }

    pub fn load_json(path: &Path) -> Result<SweepReport> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BilapError::io(path.display().to_string(), e))?;
        serde_json::from_str(&text).map_err(|e| BilapError::FormatError {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }

    /// Gnuplot-friendly whitespace columns with a `#` header.
    pub fn write_plotdata(&self, path: &Path) -> Result<PathBuf> {
        let file = File::create(path).map_err(|e| BilapError::io(path.display().to_string(), e))?;
        let mut w = BufWriter::new(file);
        let io = |e| BilapError::io(path.display().to_string(), e);
        writeln!(w, "# suite {} seed {}", self.suite, self.seed).map_err(io)?;
        writeln!(w, "# index lhs rhs ratio").map_err(io)?;
        for (i, r) in self.rows.iter().enumerate() {
            writeln!(
                w,
                "{i} {} {} {}",
                Self::fmt_float(r.lhs),
                Self::fmt_float(r.rhs),
                Self::fmt_float(r.ratio)
            )
            .map_err(io)?;
        }
        w.flush().map_err(io)?;
        Ok(path.to_path_buf())
    }

    /// Emit all formats into a directory; returns written paths.
    pub fn emit(&self, out_dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(out_dir)
            .map_err(|e| BilapError::io(out_dir.display().to_string(), e))?;
        let base = out_dir.join(format!("suite_{}", self.suite));
        Ok(vec![
            self.write_csv(&base.with_extension("csv"))?,
            self.write_json(&base.with_extension("json"))?,
            self.write_plotdata(&base.with_extension("dat"))?,
        ])
    }
}

//! Per-project analysis pipeline and the CSV / JSON report formats.
//!
//! CSV rows carry two-decimal display values (LOC as an integer). JSON
//! carries the full-precision values alongside the same display strings.

use std::cmp::Ordering;
use std::io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::di::{apply_injections, detect_injections, DiError, DiSummary};
use crate::frontend::{parse_source, resolve_project, Diagnostic, ProjectModel, SourceFile};
use crate::maintainability::{compute_scores, MaintainabilityError, MaintainabilityScores};
use crate::metrics::{compute_project_metrics, ProjectMetrics};

pub const CSV_HEADER: [&str; 13] = [
    "project", "di", "cbo", "dcbo", "lcom", "rfc", "loc", "ncbo", "ndcbo", "nlcom", "nrfc", "mai",
    "dmai",
];

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Di(#[from] DiError),
    #[error(transparent)]
    Maintainability(#[from] MaintainabilityError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectAnalysis {
    pub metrics: ProjectMetrics,
    pub injections: DiSummary,
    pub scores: MaintainabilityScores,
}

pub fn analyze_project(name: &str, project: &ProjectModel) -> Result<ProjectAnalysis, AnalysisError> {
    let mut metrics = compute_project_metrics(name, project);
    let injections = detect_injections(project);
    apply_injections(&mut metrics, &injections)?;
    let scores = compute_scores(&metrics)?;
    Ok(ProjectAnalysis {
        metrics,
        injections,
        scores,
    })
}

/// Parses and resolves `files`, then analyzes them as one project. All
/// parse diagnostics are collected before giving up.
pub fn analyze_sources(
    name: &str,
    files: &[SourceFile],
) -> Result<ProjectAnalysis, Vec<Diagnostic>> {
    let mut models = Vec::new();
    let mut diagnostics = Vec::new();
    for file in files {
        match parse_source(file) {
            Ok(m) => models.extend(m),
            Err(d) => diagnostics.extend(d),
        }
    }
    if !diagnostics.is_empty() {
        return Err(diagnostics);
    }
    let project = resolve_project(models)?;
    analyze_project(name, &project).map_err(|e| {
        vec![Diagnostic::error(
            std::path::Path::new(name),
            1,
            1,
            format!("internal consistency error: {e}"),
        )]
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub project: String,
    pub di: f64,
    pub cbo: f64,
    pub dcbo: f64,
    pub lcom: f64,
    pub rfc: f64,
    pub loc: usize,
    pub ncbo: f64,
    pub ndcbo: f64,
    pub nlcom: f64,
    pub nrfc: f64,
    pub mai: f64,
    pub dmai: f64,
}

impl ReportRow {
    pub fn from_analysis(analysis: &ProjectAnalysis) -> Self {
        let m = &analysis.metrics;
        let s = &analysis.scores;
        ReportRow {
            project: m.project_name.clone(),
            di: m.di_proportion,
            cbo: m.mean_cbo,
            dcbo: m.mean_dcbo,
            lcom: m.mean_lcom,
            rfc: m.mean_rfc,
            loc: m.total_loc,
            ncbo: s.ncbo,
            ndcbo: s.ndcbo,
            nlcom: s.nlcom,
            nrfc: s.nrfc,
            mai: s.mai,
            dmai: s.dmai,
        }
    }

    fn numeric(&self) -> [f64; 11] {
        [
            self.di, self.cbo, self.dcbo, self.lcom, self.rfc, self.ncbo, self.ndcbo, self.nlcom,
            self.nrfc, self.mai, self.dmai,
        ]
    }

    /// Display strings in CSV column order, project name first.
    pub fn display_fields(&self) -> Vec<String> {
        let n = self.numeric();
        let mut out = vec![self.project.clone()];
        out.extend(n[..5].iter().map(|v| format_2dp(*v)));
        out.push(self.loc.to_string());
        out.extend(n[5..].iter().map(|v| format_2dp(*v)));
        out
    }
}

/// Two-decimal half-up rounding. The small bias absorbs binary
/// representation error so that e.g. 1.005 rounds up.
pub fn round_2dp(x: f64) -> f64 {
    let scaled = x * 100.0;
    let rounded = if x >= 0.0 {
        (scaled + 0.5 + 1e-9).floor()
    } else {
        -((-scaled) + 0.5 + 1e-9).floor()
    };
    rounded / 100.0
}

pub fn format_2dp(x: f64) -> String {
    let r = round_2dp(x);
    // avoid "-0.00"
    format!("{:.2}", if r == 0.0 { 0.0 } else { r })
}

/// Compares names so that embedded numbers sort numerically
/// (`di_9` < `di_10`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, xa), (db, xb)) in ca.iter().zip(&cb) {
        let ord = if *da && *db {
            let (ta, tb) = (xa.trim_start_matches('0'), xb.trim_start_matches('0'));
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb)).then_with(|| xa.cmp(xb))
        } else {
            xa.cmp(xb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

pub fn sort_rows(rows: &mut [ReportRow]) {
    rows.sort_by(|a, b| natural_cmp(&a.project, &b.project));
}

pub fn write_csv<W: io::Write>(rows: &[ReportRow], out: W) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER).map_err(csv_io)?;
    for row in rows {
        writer.write_record(row.display_fields()).map_err(csv_io)?;
    }
    writer.flush()
}

pub fn to_csv_string(rows: &[ReportRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}

fn csv_io(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

#[derive(Serialize)]
struct JsonRow<'a> {
    project: &'a str,
    values: &'a ReportRow,
    display: serde_json::Map<String, serde_json::Value>,
}

pub fn to_json_string(rows: &[ReportRow]) -> String {
    let json_rows: Vec<JsonRow> = rows
        .iter()
        .map(|row| JsonRow {
            project: &row.project,
            values: row,
            display: CSV_HEADER[1..]
                .iter()
                .zip(row.display_fields().into_iter().skip(1))
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v)))
                .collect(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&json_rows).expect("rows serialize");
    s.push('\n');
    s
}

/// Reads the `values` of a JSON report back into rows.
pub fn from_json_str(text: &str) -> Result<Vec<ReportRow>, serde_json::Error> {
    #[derive(Deserialize)]
    struct Row {
        values: ReportRow,
    }
    let rows: Vec<Row> = serde_json::from_str(text)?;
    Ok(rows.into_iter().map(|r| r.values).collect())
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ReportError {
    pub line: u64,
    pub message: String,
}

/// Parses a CSV report as written by [`write_csv`].
pub fn read_csv(text: &str) -> Result<Vec<ReportRow>, ReportError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(r) => r.map_err(|e| csv_error(&e))?,
        None => {
            return Err(ReportError {
                line: 1,
                message: "empty report".into(),
            })
        }
    };
    let found: Vec<&str> = header.iter().map(str::trim).collect();
    if found != CSV_HEADER {
        return Err(ReportError {
            line: 1,
            message: format!("expected header `{}`", CSV_HEADER.join(",")),
        });
    }

    let mut rows = Vec::new();
    for record in records {
        let record = record.map_err(|e| csv_error(&e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != CSV_HEADER.len() {
            return Err(ReportError {
                line,
                message: format!(
                    "expected {} fields, found {}",
                    CSV_HEADER.len(),
                    record.len()
                ),
            });
        }
        let num = |i: usize| -> Result<f64, ReportError> {
            let raw = record[i].trim();
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| ReportError {
                    line,
                    message: format!("column `{}`: `{}` is not a number", CSV_HEADER[i], raw),
                })
        };
        let loc_raw = record[6].trim();
        let loc = loc_raw.parse::<usize>().map_err(|_| ReportError {
            line,
            message: format!("column `loc`: `{loc_raw}` is not a nonnegative integer"),
        })?;
        rows.push(ReportRow {
            project: record[0].trim().to_string(),
            di: num(1)?,
            cbo: num(2)?,
            dcbo: num(3)?,
            lcom: num(4)?,
            rfc: num(5)?,
            loc,
            ncbo: num(7)?,
            ndcbo: num(8)?,
            nlcom: num(9)?,
            nrfc: num(10)?,
            mai: num(11)?,
            dmai: num(12)?,
        });
    }
    Ok(rows)
}

fn csv_error(e: &csv::Error) -> ReportError {
    ReportError {
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    }
}

//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes and returns plain strings and numbers; results are
//! JSON documents with either the payload or an `error` field, so the page
//! never has to catch exceptions.

use dcbo_core::chart::render_svg;
use dcbo_core::generator::{render_project, suite_plan};
use dcbo_core::report::{analyze_sources, sort_rows, to_csv_string, ProjectAnalysis, ReportRow};
use dcbo_core::stats::{friedman_test, split_by_threshold, Boundary};
use dcbo_core::SourceFile;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn error(message: impl ToString) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn analysis_json(analysis: &ProjectAnalysis) -> Value {
    json!({
        "row": ReportRow::from_analysis(analysis),
        "classes": analysis.metrics.class_metrics,
        "findings": analysis.injections.findings,
    })
}

/// Analyzes pasted source (one or more classes) as a single project.
#[wasm_bindgen]
pub fn analyze_source(source: &str) -> String {
    let file = SourceFile::new("input.java", source);
    match analyze_sources("input", &[file]) {
        Ok(analysis) => analysis_json(&analysis).to_string(),
        Err(diagnostics) => json!({
            "diagnostics": diagnostics
                .iter()
                .map(|d| json!({ "line": d.line, "column": d.column, "message": d.message }))
                .collect::<Vec<_>>(),
        })
        .to_string(),
    }
}

fn suite_rows(pen_count: u32, step: u32) -> Result<Vec<ReportRow>, String> {
    let plan = suite_plan(step, pen_count as usize).map_err(|e| e.to_string())?;
    let mut rows = Vec::with_capacity(plan.len());
    for (name, injected) in plan {
        let files: Vec<SourceFile> = render_project(pen_count as usize, injected)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(file, text)| SourceFile::new(file, text))
            .collect();
        let analysis = analyze_sources(&name, &files).map_err(|d| {
            d.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
        })?;
        rows.push(ReportRow::from_analysis(&analysis));
    }
    sort_rows(&mut rows);
    Ok(rows)
}

/// Generates and analyzes the synthetic suite in memory. Returns the rows,
/// the CSV report and the trendline chart.
#[wasm_bindgen]
pub fn experiment_suite(pen_count: u32, step: u32) -> String {
    match suite_rows(pen_count, step) {
        Ok(rows) => json!({
            "rows": rows,
            "csv": to_csv_string(&rows),
            "svg": render_svg(&rows),
        })
        .to_string(),
        Err(e) => error(e),
    }
}

/// Friedman test of `metric` ("mai" or "dmai") between the projects below
/// and above `threshold` in the synthetic suite.
#[wasm_bindgen]
pub fn friedman(
    pen_count: u32,
    step: u32,
    threshold: f64,
    metric: &str,
    boundary: &str,
    alpha: f64,
) -> String {
    let pick: fn(&ReportRow) -> f64 = match metric {
        "mai" => |r| r.mai,
        "dmai" => |r| r.dmai,
        other => return error(format!("unknown metric `{other}`")),
    };
    let boundary: Boundary = match boundary.parse() {
        Ok(b) => b,
        Err(e) => return error(e),
    };
    if !(alpha > 0.0 && alpha < 1.0) {
        return error(format!("alpha must lie strictly between 0 and 1, got {alpha}"));
    }
    let rows = match suite_rows(pen_count, step) {
        Ok(rows) => rows,
        Err(e) => return error(e),
    };
    let data: Vec<(f64, f64)> = rows.iter().map(|r| (r.di, pick(r))).collect();
    let split = match split_by_threshold(&data, threshold, boundary) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let result = friedman_test(&split.matrix, alpha);
    json!({
        "chi_square": result.chi_square,
        "p_value": result.p_value,
        "rejected": result.rejected(),
        "truncated": split.truncated(),
        "text": result.to_string(),
    })
    .to_string()
}

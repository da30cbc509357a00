//! Project discovery and concurrent analysis for `dcbo analyze`.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use dcbo_core::report::{analyze_sources, sort_rows, ReportRow};
use dcbo_core::{Diagnostic, SourceFile};
use rayon::prelude::*;
use walkdir::{DirEntry, WalkDir};

use crate::UsageError;

pub struct Outcome {
    pub rows: Vec<ReportRow>,
    pub diagnostics: Vec<Diagnostic>,
    pub warnings: Vec<String>,
    pub failed_projects: Vec<String>,
}

fn is_hidden(entry: &DirEntry) -> bool {
    entry.depth() > 0 && entry.file_name().to_string_lossy().starts_with('.')
}

/// The directories to analyze, each one a project. With `each`, the
/// immediate non-hidden subdirectories of every path are used instead.
pub fn project_dirs(paths: &[PathBuf], each: bool) -> anyhow::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for path in paths {
        if !path.is_dir() {
            return Err(UsageError(format!("{} is not a directory", path.display())).into());
        }
        if !each {
            out.push(path.clone());
            continue;
        }
        let mut subdirs = Vec::new();
        for entry in fs::read_dir(path).with_context(|| format!("cannot read {}", path.display()))? {
            let entry = entry.with_context(|| format!("cannot read {}", path.display()))?;
            let hidden = entry.file_name().to_string_lossy().starts_with('.');
            if !hidden && entry.path().is_dir() {
                subdirs.push(entry.path());
            }
        }
        if subdirs.is_empty() {
            return Err(UsageError(format!("{} has no project subdirectories", path.display())).into());
        }
        subdirs.sort();
        out.extend(subdirs);
    }
    Ok(out)
}

pub fn project_name(dir: &Path) -> String {
    let named = dir.file_name().map(|n| n.to_string_lossy().into_owned());
    named
        .or_else(|| {
            dir.canonicalize()
                .ok()
                .and_then(|c| c.file_name().map(|n| n.to_string_lossy().into_owned()))
        })
        .unwrap_or_else(|| dir.display().to_string())
}

/// Every `.java` file under `dir`, skipping hidden directories, in path order.
pub fn java_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in WalkDir::new(dir).sort_by_file_name().into_iter().filter_entry(|e| !is_hidden(e)) {
        let entry = entry.with_context(|| format!("cannot scan {}", dir.display()))?;
        let is_java = entry.path().extension().is_some_and(|x| x == "java");
        if entry.file_type().is_file() && is_java {
            files.push(entry.into_path());
        }
    }
    Ok(files)
}

enum ProjectResult {
    Row(ReportRow, Option<String>),
    Rejected(String, Vec<Diagnostic>),
}

fn analyze_dir(dir: &Path) -> anyhow::Result<ProjectResult> {
    let name = project_name(dir);
    let paths = java_files(dir)?;
    let sources = paths
        .par_iter()
        .map(|p| {
            let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            Ok(SourceFile::new(p.clone(), text))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let warning = sources
        .is_empty()
        .then(|| format!("{}: no .java files found; reporting zeros", dir.display()));
    Ok(match analyze_sources(&name, &sources) {
        Ok(analysis) => ProjectResult::Row(ReportRow::from_analysis(&analysis), warning),
        Err(diagnostics) => ProjectResult::Rejected(name, diagnostics),
    })
}

/// Analyzes every directory concurrently. Rows come back in natural
/// project order regardless of scheduling; a project with any diagnostic
/// contributes no row.
pub fn analyze_dirs(dirs: &[PathBuf]) -> anyhow::Result<Outcome> {
    let results = dirs
        .par_iter()
        .map(|d| analyze_dir(d))
        .collect::<anyhow::Result<Vec<_>>>()?;

    let mut outcome = Outcome {
        rows: Vec::new(),
        diagnostics: Vec::new(),
        warnings: Vec::new(),
        failed_projects: Vec::new(),
    };
    for result in results {
        match result {
            ProjectResult::Row(row, warning) => {
                outcome.rows.push(row);
                outcome.warnings.extend(warning);
            }
            ProjectResult::Rejected(name, diagnostics) => {
                outcome.failed_projects.push(name);
                outcome.diagnostics.extend(diagnostics);
            }
        }
    }
    outcome
        .diagnostics
        .sort_by(|a, b| (&a.path, a.line, a.column).cmp(&(&b.path, b.line, b.column)));
    sort_rows(&mut outcome.rows);
    Ok(outcome)
}

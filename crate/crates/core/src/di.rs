//! Dependency-injection detection and DI-weighted coupling.
//!
//! For every project class that a client refers to, the client either
//! receives it through a parameter (injection) or not, and either builds it
//! with `new` (a default object) or not:
//!
//! | parameter site | creates it | pattern                        |
//! |----------------|------------|--------------------------------|
//! | constructor    | no         | CND                            |
//! | method only    | no         | MND                            |
//! | constructor    | yes        | CWD                            |
//! | method only    | yes        | MWD                            |
//! | none           | either     | HARD                           |
//!
//! Only CND and MND count toward DIP.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::frontend::ProjectModel;
use crate::metrics::{build_coupling_graph, class_references, ClassMetrics, ProjectMetrics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum InjectionPattern {
    /// Constructor parameter, no default object.
    Cnd,
    /// Method parameter, no default object.
    Mnd,
    /// Constructor parameter plus a default object.
    Cwd,
    /// Method parameter plus a default object.
    Mwd,
    /// Referenced without ever being received as a parameter.
    Hard,
}

impl InjectionPattern {
    pub fn is_injected(self) -> bool {
        matches!(self, InjectionPattern::Cnd | InjectionPattern::Mnd)
    }
}

impl fmt::Display for InjectionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InjectionPattern::Cnd => "CND",
            InjectionPattern::Mnd => "MND",
            InjectionPattern::Cwd => "CWD",
            InjectionPattern::Mwd => "MWD",
            InjectionPattern::Hard => "HARD",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InjectionSite {
    Parameter { method: String, index: usize },
    Creation { method: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectionFinding {
    pub client_class: String,
    pub dependency_class: String,
    pub pattern: InjectionPattern,
    pub sites: Vec<InjectionSite>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiSummary {
    /// Sorted by (client, dependency).
    pub findings: Vec<InjectionFinding>,
    pub dip_per_class: BTreeMap<String, usize>,
    pub di_proportion: f64,
}

impl DiSummary {
    pub fn dip(&self, class: &str) -> usize {
        self.dip_per_class.get(class).copied().unwrap_or(0)
    }

    pub fn dip_sum(&self) -> usize {
        self.dip_per_class.values().sum()
    }

    pub fn finding(&self, client: &str, dependency: &str) -> Option<&InjectionFinding> {
        self.findings
            .iter()
            .find(|f| f.client_class == client && f.dependency_class == dependency)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiError {
    #[error("class `{class}` has DIP {dip} greater than CBO {cbo}")]
    DipExceedsCbo { class: String, dip: usize, cbo: usize },
}

pub fn detect_injections(project: &ProjectModel) -> DiSummary {
    let mut findings = Vec::new();
    let mut dip_per_class = BTreeMap::new();

    for client in project.classes() {
        let mut dip = 0;
        for dependency in class_references(client, project).into_keys() {
            let mut sites = Vec::new();
            let mut via_constructor = false;
            let mut via_parameter = false;
            let mut creates = false;
            for method in &client.methods {
                for (index, param) in method.param_types.iter().enumerate() {
                    if *param == dependency {
                        via_parameter = true;
                        via_constructor |= method.is_constructor;
                        sites.push(InjectionSite::Parameter {
                            method: method.name.clone(),
                            index,
                        });
                    }
                }
                if method.instantiates(&dependency) {
                    creates = true;
                    sites.push(InjectionSite::Creation {
                        method: method.name.clone(),
                    });
                }
            }
            let pattern = match (via_parameter, via_constructor, creates) {
                (false, _, _) => InjectionPattern::Hard,
                (true, true, false) => InjectionPattern::Cnd,
                (true, false, false) => InjectionPattern::Mnd,
                (true, true, true) => InjectionPattern::Cwd,
                (true, false, true) => InjectionPattern::Mwd,
            };
            if pattern.is_injected() {
                dip += 1;
            }
            findings.push(InjectionFinding {
                client_class: client.name.clone(),
                dependency_class: dependency,
                pattern,
                sites,
            });
        }
        dip_per_class.insert(client.name.clone(), dip);
    }

    let cbo_sum = 2 * build_coupling_graph(project).edge_count();
    let dip_sum = dip_per_class.values().sum();
    DiSummary {
        findings,
        dip_per_class,
        di_proportion: proportion(dip_sum, cbo_sum),
    }
}

fn proportion(dip_sum: usize, cbo_sum: usize) -> f64 {
    if cbo_sum == 0 {
        return 0.0;
    }
    (2.0 * dip_sum as f64 / cbo_sum as f64).clamp(0.0, 1.0)
}

/// `2 * sum(DIP) / sum(CBO)`, clamped to `[0, 1]`, and 0 for a project
/// without coupling.
pub fn compute_di_proportion(summary: &DiSummary, metrics: &ProjectMetrics) -> f64 {
    proportion(summary.dip_sum(), metrics.cbo_sum())
}

pub fn compute_dcbo(class: &ClassMetrics, summary: &DiSummary) -> Result<usize, DiError> {
    let dip = summary.dip(&class.class_name);
    class.cbo.checked_sub(dip).ok_or_else(|| DiError::DipExceedsCbo {
        class: class.class_name.clone(),
        dip,
        cbo: class.cbo,
    })
}

/// Fills DIP, DCBO, their means and the DI proportion into `metrics`.
pub fn apply_injections(metrics: &mut ProjectMetrics, summary: &DiSummary) -> Result<(), DiError> {
    for class in &mut metrics.class_metrics {
        class.dcbo = compute_dcbo(class, summary)?;
        class.dip = summary.dip(&class.class_name);
    }
    metrics.refresh_means();
    metrics.di_proportion = compute_di_proportion(summary, metrics);
    Ok(())
}

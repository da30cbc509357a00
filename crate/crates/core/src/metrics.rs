//! Coupling graph and per-class CK metrics (CBO, RFC, LCOM1, LOC).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::frontend::{ClassModel, ProjectModel};

/// How one class refers to another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UsageKind {
    FieldType,
    ParamType,
    ReturnType,
    Instantiation,
    Invocation,
    Supertype,
}

impl fmt::Display for UsageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UsageKind::FieldType => "field-type",
            UsageKind::ParamType => "param-type",
            UsageKind::ReturnType => "return-type",
            UsageKind::Instantiation => "instantiation",
            UsageKind::Invocation => "invocation",
            UsageKind::Supertype => "supertype",
        })
    }
}

/// Project classes that `class` itself refers to, with the kinds of each
/// reference. Self references and non-project names are dropped.
pub fn class_references(
    class: &ClassModel,
    project: &ProjectModel,
) -> BTreeMap<String, BTreeSet<UsageKind>> {
    let mut refs: BTreeMap<String, BTreeSet<UsageKind>> = BTreeMap::new();
    let mut add = |name: &str, kind: UsageKind| {
        if name != class.name && project.contains(name) {
            refs.entry(name.to_string()).or_default().insert(kind);
        }
    };
    for t in &class.super_types {
        add(t, UsageKind::Supertype);
    }
    for f in &class.fields {
        add(&f.type_name, UsageKind::FieldType);
    }
    for m in &class.methods {
        for p in &m.param_types {
            add(p, UsageKind::ParamType);
        }
        if let Some(r) = &m.return_type {
            add(r, UsageKind::ReturnType);
        }
        for t in &m.instantiated_types {
            add(t, UsageKind::Instantiation);
        }
        for (receiver, _) in &m.invoked_methods {
            add(receiver, UsageKind::Invocation);
        }
    }
    refs
}

/// Undirected coupling relation over project classes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CouplingGraph {
    nodes: BTreeSet<String>,
    /// Keyed by (smaller name, larger name).
    edges: BTreeMap<(String, String), BTreeSet<UsageKind>>,
}

impl CouplingGraph {
    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(String::as_str)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, &BTreeSet<UsageKind>)> {
        self.edges
            .iter()
            .map(|((a, b), kinds)| (a.as_str(), b.as_str(), kinds))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn provenance(&self, a: &str, b: &str) -> Option<&BTreeSet<UsageKind>> {
        let key = if a <= b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        };
        self.edges.get(&key)
    }

    pub fn are_coupled(&self, a: &str, b: &str) -> bool {
        self.provenance(a, b).is_some()
    }

    pub fn neighbors<'a>(&'a self, class: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.edges.keys().filter_map(move |(a, b)| {
            if a == class {
                Some(b.as_str())
            } else if b == class {
                Some(a.as_str())
            } else {
                None
            }
        })
    }

    /// CBO of `class`: the number of distinct classes it is coupled to.
    pub fn degree(&self, class: &str) -> usize {
        self.neighbors(class).count()
    }
}

pub fn build_coupling_graph(project: &ProjectModel) -> CouplingGraph {
    let mut graph = CouplingGraph {
        nodes: project.class_names().map(str::to_string).collect(),
        edges: BTreeMap::new(),
    };
    for class in project.classes() {
        for (other, kinds) in class_references(class, project) {
            let key = if class.name < other {
                (class.name.clone(), other)
            } else {
                (other, class.name.clone())
            };
            graph.edges.entry(key).or_default().extend(kinds);
        }
    }
    graph
}

/// Own methods (constructors included) plus distinct remote methods reached
/// from them. `new T(..)` reaches `T`'s constructor.
pub fn compute_rfc(class: &ClassModel, project: &ProjectModel) -> usize {
    let mut remote: BTreeSet<(&str, &str)> = BTreeSet::new();
    for m in &class.methods {
        for (receiver, name) in &m.invoked_methods {
            if receiver != &class.name && project.contains(receiver) {
                remote.insert((receiver, name));
            }
        }
        for t in &m.instantiated_types {
            if t != &class.name && project.contains(t) {
                remote.insert((t, t));
            }
        }
    }
    class.methods.len() + remote.len()
}

/// LCOM1: method pairs sharing no field minus pairs sharing one, floored
/// at zero.
pub fn compute_lcom(class: &ClassModel) -> usize {
    let mut disjoint = 0usize;
    let mut sharing = 0usize;
    for (i, a) in class.methods.iter().enumerate() {
        for b in &class.methods[i + 1..] {
            if a.accessed_fields.is_disjoint(&b.accessed_fields) {
                disjoint += 1;
            } else {
                sharing += 1;
            }
        }
    }
    disjoint.saturating_sub(sharing)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub class_name: String,
    pub cbo: usize,
    pub rfc: usize,
    pub lcom: usize,
    pub loc: usize,
    /// Distinct constructor- or method-injected dependencies. Zero until
    /// [`crate::di::apply_injections`] runs.
    pub dip: usize,
    pub dcbo: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectMetrics {
    pub project_name: String,
    pub class_metrics: Vec<ClassMetrics>,
    pub mean_cbo: f64,
    pub mean_dcbo: f64,
    pub mean_lcom: f64,
    pub mean_rfc: f64,
    pub total_loc: usize,
    pub di_proportion: f64,
}

impl ProjectMetrics {
    pub fn cbo_sum(&self) -> usize {
        self.class_metrics.iter().map(|c| c.cbo).sum()
    }

    pub fn dip_sum(&self) -> usize {
        self.class_metrics.iter().map(|c| c.dip).sum()
    }

    pub(crate) fn refresh_means(&mut self) {
        let mean = |f: fn(&ClassMetrics) -> usize| mean_of(self.class_metrics.iter().map(f));
        self.mean_cbo = mean(|c| c.cbo);
        self.mean_dcbo = mean(|c| c.dcbo);
        self.mean_lcom = mean(|c| c.lcom);
        self.mean_rfc = mean(|c| c.rfc);
        self.total_loc = self.class_metrics.iter().map(|c| c.loc).sum();
    }
}

fn mean_of(values: impl ExactSizeIterator<Item = usize>) -> f64 {
    let n = values.len();
    if n == 0 {
        return 0.0;
    }
    values.sum::<usize>() as f64 / n as f64
}

/// CK metrics for every class plus project means. DI-derived columns start
/// out as DIP 0 and DCBO = CBO.
pub fn compute_project_metrics(name: &str, project: &ProjectModel) -> ProjectMetrics {
    let graph = build_coupling_graph(project);
    let class_metrics = project
        .classes()
        .iter()
        .map(|class| {
            let cbo = graph.degree(&class.name);
            ClassMetrics {
                class_name: class.name.clone(),
                cbo,
                rfc: compute_rfc(class, project),
                lcom: compute_lcom(class),
                loc: class.loc,
                dip: 0,
                dcbo: cbo,
            }
        })
        .collect();
    let mut metrics = ProjectMetrics {
        project_name: name.to_string(),
        class_metrics,
        mean_cbo: 0.0,
        mean_dcbo: 0.0,
        mean_lcom: 0.0,
        mean_rfc: 0.0,
        total_loc: 0,
        di_proportion: 0.0,
    };
    metrics.refresh_means();
    metrics
}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::lexer;

/// Raw text of one `.java` file together with its code-line count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    path: PathBuf,
    text: String,
    line_count: usize,
}

impl SourceFile {
    pub fn new(path: impl Into<PathBuf>, text: impl Into<String>) -> Self {
        let text = text.into();
        let line_count = lexer::code_line_count(&text);
        SourceFile {
            path: path.into(),
            text,
            line_count,
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Lines holding at least one character of code. Blank lines and lines
    /// that contain only comments are not counted.
    pub fn line_count(&self) -> usize {
        self.line_count
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldModel {
    pub name: String,
    pub type_name: String,
}

/// One constructor or method. Type names are element names: `Dog[]` is
/// recorded as `Dog`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodModel {
    pub name: String,
    pub is_constructor: bool,
    pub param_types: Vec<String>,
    pub return_type: Option<String>,
    /// One entry per `new T(...)` expression, in source order.
    pub instantiated_types: Vec<String>,
    pub invoked_methods: BTreeSet<(String, String)>,
    pub accessed_fields: BTreeSet<String>,
}

impl MethodModel {
    pub fn instantiates(&self, type_name: &str) -> bool {
        self.instantiated_types.iter().any(|t| t == type_name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassModel {
    pub name: String,
    pub super_types: Vec<String>,
    pub fields: Vec<FieldModel>,
    pub methods: Vec<MethodModel>,
    pub source: PathBuf,
    /// Code lines spanned by the declaration.
    pub loc: usize,
    /// 1-based line of the `class` keyword.
    pub line: usize,
    pub column: usize,
}

impl ClassModel {
    pub fn field(&self, name: &str) -> Option<&FieldModel> {
        self.fields.iter().find(|f| f.name == name)
    }

    pub fn constructors(&self) -> impl Iterator<Item = &MethodModel> {
        self.methods.iter().filter(|m| m.is_constructor)
    }
}

/// The resolved set of classes that make up one analyzed project.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProjectModel {
    classes: Vec<ClassModel>,
    index: BTreeMap<String, usize>,
}

impl ProjectModel {
    pub(crate) fn from_unique(mut classes: Vec<ClassModel>) -> Self {
        classes.sort_by(|a, b| a.name.cmp(&b.name));
        let index = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.name.clone(), i))
            .collect();
        ProjectModel { classes, index }
    }

    /// Classes in name order.
    pub fn classes(&self) -> &[ClassModel] {
        &self.classes
    }

    pub fn class_names(&self) -> impl Iterator<Item = &str> {
        self.index.keys().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn class(&self, name: &str) -> Option<&ClassModel> {
        self.index.get(name).map(|&i| &self.classes[i])
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub path: PathBuf,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl Diagnostic {
    pub fn error(path: &Path, line: usize, column: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            path: path.to_path_buf(),
            line,
            column,
            message: message.into(),
            severity: Severity::Error,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{}:{}:{}: {}: {}",
            self.path.display(),
            self.line,
            self.column,
            level,
            self.message
        )
    }
}

pub const PRIMITIVES: [&str; 9] = [
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

pub fn is_primitive(name: &str) -> bool {
    PRIMITIVES.contains(&name)
}

//! Source frontend: turns `.java` files written in a small class-only subset
//! into [`ClassModel`]s and assembles them into a [`ProjectModel`].
//!
//! The subset is documented in `docs/grammar.md`. Anything outside it rejects
//! the whole file with a single [`Diagnostic`].

mod lexer;
mod model;
mod parser;

use std::collections::{BTreeMap, BTreeSet, HashMap};

pub use lexer::code_line_count;
pub use model::{
    is_primitive, ClassModel, Diagnostic, FieldModel, MethodModel, ProjectModel, Severity,
    SourceFile,
};

use parser::{ClassDecl, Expr, MethodDecl, Parser, Stmt};

/// Parses one file. On success every top-level class becomes a model; on
/// failure the file contributes nothing and exactly one diagnostic explains
/// why.
pub fn parse_source(file: &SourceFile) -> Result<Vec<ClassModel>, Vec<Diagnostic>> {
    let tokens = lexer::tokenize(file.text()).map_err(|e| {
        vec![Diagnostic::error(file.path(), e.line, e.column, e.message)]
    })?;
    let decls = Parser::new(&tokens)
        .parse_unit()
        .map_err(|e| vec![Diagnostic::error(file.path(), e.line, e.column, e.message)])?;

    let mut seen = BTreeMap::new();
    for decl in &decls {
        if let Some((line, _)) = seen.insert(decl.name.clone(), (decl.line, decl.column)) {
            return Err(vec![Diagnostic::error(
                file.path(),
                decl.line,
                decl.column,
                format!(
                    "class `{}` is declared twice in this file (first at line {})",
                    decl.name, line
                ),
            )]);
        }
    }
    Ok(decls.iter().map(|d| lower_class(d, file)).collect())
}

/// Builds the project from parsed models. Class names must be unique.
pub fn resolve_project(models: Vec<ClassModel>) -> Result<ProjectModel, Vec<Diagnostic>> {
    let mut first: HashMap<&str, &ClassModel> = HashMap::new();
    let mut diagnostics = Vec::new();
    for model in &models {
        if let Some(prev) = first.get(model.name.as_str()) {
            diagnostics.push(Diagnostic::error(
                &model.source,
                model.line,
                model.column,
                format!(
                    "duplicate class `{}` declared in {} and {}",
                    model.name,
                    prev.source.display(),
                    model.source.display()
                ),
            ));
        } else {
            first.insert(&model.name, model);
        }
    }
    if !diagnostics.is_empty() {
        return Err(diagnostics);
    }
    Ok(ProjectModel::from_unique(models))
}

/// Per-method typing environment. Lookup order is locals, parameters, then
/// fields of the owning class.
struct Scope<'a> {
    class: &'a ClassDecl,
    methods: &'a HashMap<&'a str, Option<String>>,
    params: HashMap<&'a str, String>,
    locals: HashMap<String, String>,
    out: MethodModel,
}

enum Binding {
    Variable(String),
    Field(String),
    Unbound,
}

impl Scope<'_> {
    fn lookup(&self, name: &str) -> Binding {
        if let Some(t) = self.locals.get(name) {
            return Binding::Variable(t.clone());
        }
        if let Some(t) = self.params.get(name) {
            return Binding::Variable(t.clone());
        }
        match self.class.fields.iter().find(|(_, n)| n == name) {
            Some((ty, _)) => Binding::Field(ty.name.clone()),
            None => Binding::Unbound,
        }
    }

    fn own_field_type(&self, name: &str) -> Option<String> {
        self.class
            .fields
            .iter()
            .find(|(_, n)| n == name)
            .map(|(t, _)| t.name.clone())
    }

    fn record_call(&mut self, receiver: &str, method: &str) -> Option<String> {
        self.out
            .invoked_methods
            .insert((receiver.to_string(), method.to_string()));
        if receiver == self.class.name {
            self.methods.get(method).cloned().flatten()
        } else {
            None
        }
    }

    /// Walks an expression, recording its effects, and returns its static
    /// type when local information determines it.
    fn visit(&mut self, expr: &Expr) -> Option<String> {
        match expr {
            Expr::Literal => None,
            Expr::This => Some(self.class.name.clone()),
            Expr::Name(name) => match self.lookup(name) {
                Binding::Variable(t) => Some(t),
                Binding::Field(t) => {
                    self.out.accessed_fields.insert(name.clone());
                    Some(t)
                }
                Binding::Unbound => None,
            },
            Expr::New { type_name, args } => {
                for arg in args {
                    self.visit(arg);
                }
                self.out.instantiated_types.push(type_name.clone());
                Some(type_name.clone())
            }
            Expr::Field { target, name } => {
                let owner = self.visit_receiver(target);
                if matches!(**target, Expr::This) {
                    if let Some(t) = self.own_field_type(name) {
                        self.out.accessed_fields.insert(name.clone());
                        return Some(t);
                    }
                }
                match owner {
                    Some(o) if o == self.class.name => self.own_field_type(name),
                    _ => None,
                }
            }
            Expr::Call { target, name, args } => {
                let receiver = match target {
                    Some(t) => self.visit_receiver(t),
                    None => Some(self.class.name.clone()),
                };
                for arg in args {
                    self.visit(arg);
                }
                receiver.and_then(|r| self.record_call(&r, name))
            }
        }
    }

    /// Like `visit`, but an unbound bare name in receiver position is read
    /// as a type name (a static member reference).
    fn visit_receiver(&mut self, expr: &Expr) -> Option<String> {
        if let Expr::Name(name) = expr {
            if let Binding::Unbound = self.lookup(name) {
                return Some(name.clone());
            }
        }
        self.visit(expr)
    }

    fn visit_stmt(&mut self, stmt: &Stmt) {
        match stmt {
            Stmt::Local { ty, name, init } => {
                if let Some(init) = init {
                    self.visit(init);
                }
                self.locals.insert(name.clone(), ty.name.clone());
            }
            Stmt::Assign { target, value } => {
                self.visit(value);
                self.visit(target);
            }
            Stmt::Return(value) => {
                if let Some(v) = value {
                    self.visit(v);
                }
            }
            Stmt::Expr(e) => {
                self.visit(e);
            }
        }
    }
}

fn lower_method(
    decl: &MethodDecl,
    class: &ClassDecl,
    methods: &HashMap<&str, Option<String>>,
) -> MethodModel {
    let mut scope = Scope {
        class,
        methods,
        params: decl
            .params
            .iter()
            .map(|(t, n)| (n.as_str(), t.name.clone()))
            .collect(),
        locals: HashMap::new(),
        out: MethodModel {
            name: decl.name.clone(),
            is_constructor: decl.is_constructor,
            param_types: decl.params.iter().map(|(t, _)| t.name.clone()).collect(),
            return_type: decl.return_type.as_ref().map(|t| t.name.clone()),
            instantiated_types: Vec::new(),
            invoked_methods: BTreeSet::new(),
            accessed_fields: BTreeSet::new(),
        },
    };
    for stmt in &decl.body {
        scope.visit_stmt(stmt);
    }
    scope.out
}

fn lower_class(decl: &ClassDecl, file: &SourceFile) -> ClassModel {
    // First declaration wins for overloaded names.
    let mut method_returns: HashMap<&str, Option<String>> = HashMap::new();
    for m in decl.methods.iter().filter(|m| !m.is_constructor) {
        method_returns
            .entry(m.name.as_str())
            .or_insert_with(|| m.return_type.as_ref().map(|t| t.name.clone()));
    }
    ClassModel {
        name: decl.name.clone(),
        super_types: decl.super_types.iter().map(|t| t.name.clone()).collect(),
        fields: decl
            .fields
            .iter()
            .map(|(t, n)| FieldModel {
                name: n.clone(),
                type_name: t.name.clone(),
            })
            .collect(),
        methods: decl
            .methods
            .iter()
            .map(|m| lower_method(m, decl, &method_returns))
            .collect(),
        source: file.path().to_path_buf(),
        loc: decl.loc,
        line: decl.line,
        column: decl.column,
    }
}

//! Random small projects described by a blueprint, rendered to source, with
//! brute-force answers computed from the blueprint itself.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ty {
    Class(usize),
    Library,
    Primitive,
}

#[derive(Debug, Clone)]
pub struct MethodBp {
    pub is_constructor: bool,
    pub params: Vec<Ty>,
    pub ret: Option<Ty>,
    pub creations: Vec<usize>,
    pub calls: Vec<usize>,
    pub field_uses: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ClassBp {
    pub supertype: Option<usize>,
    pub fields: Vec<Ty>,
    pub methods: Vec<MethodBp>,
}

#[derive(Debug, Clone)]
pub struct Blueprint {
    pub classes: Vec<ClassBp>,
}

pub fn class_name(i: usize) -> String {
    format!("C{i}")
}

fn ty_name(t: Ty) -> String {
    match t {
        Ty::Class(i) => class_name(i),
        Ty::Library => "String".into(),
        Ty::Primitive => "int".into(),
    }
}

fn random_ty<R: Rng>(rng: &mut R, n: usize) -> Ty {
    match rng.gen_range(0..5) {
        0 => Ty::Library,
        1 => Ty::Primitive,
        _ => Ty::Class(rng.gen_range(0..n)),
    }
}

impl Blueprint {
    pub fn random<R: Rng>(rng: &mut R, max_classes: usize) -> Self {
        let n = rng.gen_range(1..=max_classes);
        let classes = (0..n)
            .map(|_| {
                let fields: Vec<Ty> = (0..rng.gen_range(0..4)).map(|_| random_ty(rng, n)).collect();
                let method_count = rng.gen_range(0..4);
                let methods = (0..method_count)
                    .map(|m| {
                        let sparse = |rng: &mut R| -> Vec<usize> {
                            let mut out = Vec::new();
                            for _ in 0..rng.gen_range(0..3) {
                                if rng.gen_bool(0.5) {
                                    out.push(rng.gen_range(0..n));
                                }
                            }
                            out
                        };
                        MethodBp {
                            is_constructor: m == 0 && rng.gen_bool(0.6),
                            params: (0..rng.gen_range(0..3)).map(|_| random_ty(rng, n)).collect(),
                            ret: if rng.gen_bool(0.4) {
                                Some(random_ty(rng, n))
                            } else {
                                None
                            },
                            creations: sparse(rng),
                            calls: sparse(rng),
                            field_uses: if fields.is_empty() {
                                vec![]
                            } else {
                                (0..rng.gen_range(0..3))
                                    .map(|_| rng.gen_range(0..fields.len()))
                                    .collect()
                            },
                        }
                    })
                    .collect();
                ClassBp {
                    supertype: if rng.gen_bool(0.2) {
                        Some(rng.gen_range(0..n))
                    } else {
                        None
                    },
                    fields,
                    methods,
                }
            })
            .collect();
        Blueprint { classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn render_class(&self, i: usize) -> String {
        let c = &self.classes[i];
        let name = class_name(i);
        let mut s = format!("public class {name}");
        if let Some(sup) = c.supertype {
            s += &format!(" extends {}", class_name(sup));
        }
        s += " {\n";
        for (f, t) in c.fields.iter().enumerate() {
            s += &format!("    private {} f{f};\n", ty_name(*t));
        }
        for (m, method) in c.methods.iter().enumerate() {
            let params: Vec<String> = method
                .params
                .iter()
                .enumerate()
                .map(|(p, t)| format!("{} p{p}", ty_name(*t)))
                .collect();
            let head = if method.is_constructor {
                name.clone()
            } else {
                let ret = method.ret.map_or("void".to_string(), ty_name);
                format!("{ret} m{m}")
            };
            s += &format!("    public {head}({}) {{\n", params.join(", "));
            for (k, target) in method.creations.iter().enumerate() {
                s += &format!("        {} made{k} = new {}();\n", class_name(*target), class_name(*target));
            }
            for (k, target) in method.calls.iter().enumerate() {
                s += &format!("        {} peer{k} = null;\n", class_name(*target));
                s += &format!("        peer{k}.run{k}();\n");
            }
            for f in &method.field_uses {
                s += &format!("        this.f{f} = null;\n");
            }
            if !method.is_constructor && method.ret.is_some() {
                s += "        return null;\n";
            }
            s += "    }\n";
        }
        s += "}\n";
        s
    }

    /// Project classes `i` refers to, by any coupling kind, excluding itself.
    pub fn references(&self, i: usize) -> BTreeSet<usize> {
        let c = &self.classes[i];
        let mut out = BTreeSet::new();
        let mut add = |t: Ty| {
            if let Ty::Class(j) = t {
                out.insert(j);
            }
        };
        if let Some(s) = c.supertype {
            add(Ty::Class(s));
        }
        c.fields.iter().for_each(|t| add(*t));
        for m in &c.methods {
            m.params.iter().for_each(|t| add(*t));
            if !m.is_constructor {
                if let Some(r) = m.ret {
                    add(r);
                }
            }
            m.creations.iter().for_each(|&j| add(Ty::Class(j)));
            m.calls.iter().for_each(|&j| add(Ty::Class(j)));
        }
        out.remove(&i);
        out
    }

    /// Degree of every class in the undirected reference relation, by
    /// scanning every ordered pair.
    pub fn oracle_cbo(&self) -> Vec<usize> {
        let n = self.len();
        let refs: Vec<BTreeSet<usize>> = (0..n).map(|i| self.references(i)).collect();
        (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| b != a && (refs[a].contains(&b) || refs[b].contains(&a)))
                    .count()
            })
            .collect()
    }

    pub fn is_injected(&self, client: usize, dep: usize) -> bool {
        let c = &self.classes[client];
        let as_param = c.methods.iter().any(|m| m.params.contains(&Ty::Class(dep)));
        let created = c.methods.iter().any(|m| m.creations.contains(&dep));
        client != dep && as_param && !created
    }

    pub fn oracle_dip(&self) -> Vec<usize> {
        (0..self.len())
            .map(|i| {
                self.references(i)
                    .into_iter()
                    .filter(|&d| self.is_injected(i, d))
                    .count()
            })
            .collect()
    }

    /// Referenced but not injected `(client, dependency)` pairs.
    pub fn convertible_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.references(i).into_iter().map(move |d| (i, d)))
            .filter(|&(i, d)| !self.is_injected(i, d))
            .collect()
    }

    /// Turns `dependency` into a constructor-injected dependency of
    /// `client`: every `new` of it is removed and the constructor gains a
    /// parameter of its type.
    pub fn convert_to_constructor_injection(&self, client: usize, dependency: usize) -> Blueprint {
        let mut out = self.clone();
        let c = &mut out.classes[client];
        for m in &mut c.methods {
            m.creations.retain(|&d| d != dependency);
        }
        match c.methods.iter_mut().find(|m| m.is_constructor) {
            Some(ctor) => ctor.params.push(Ty::Class(dependency)),
            None => c.methods.insert(
                0,
                MethodBp {
                    is_constructor: true,
                    params: vec![Ty::Class(dependency)],
                    ret: None,
                    creations: vec![],
                    calls: vec![],
                    field_uses: vec![],
                },
            ),
        }
        out
    }

    pub fn pick_conversion<R: Rng>(&self, rng: &mut R) -> Option<(usize, usize)> {
        self.convertible_pairs().choose(rng).copied()
    }
}

pub fn sources(bp: &Blueprint) -> Vec<dcbo_core::SourceFile> {
    (0..bp.len())
        .map(|i| dcbo_core::SourceFile::new(format!("{}.java", class_name(i)), bp.render_class(i)))
        .collect()
}

pub fn analyze(bp: &Blueprint) -> dcbo_core::report::ProjectAnalysis {
    dcbo_core::report::analyze_sources("random", &sources(bp)).expect("generated source parses")
}

/// Per-class metrics in blueprint order (`C0`, `C1`, ...).
pub fn class_metrics_by_index(
    analysis: &dcbo_core::report::ProjectAnalysis,
    n: usize,
) -> Vec<dcbo_core::metrics::ClassMetrics> {
    (0..n)
        .map(|i| {
            analysis
                .metrics
                .class_metrics
                .iter()
                .find(|c| c.class_name == class_name(i))
                .cloned()
                .expect("class present")
        })
        .collect()
}

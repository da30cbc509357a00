//! Synthetic experiment projects `di_0` ... `di_100`.
//!
//! Every project holds one `Dog` and `pen_count` `DogPenN` classes. The first
//! `injected_count` pens receive their `Dog` through the constructor; the
//! rest build a default one with `new Dog(..)`. Code-line counts per class
//! are fixed: `Dog` 8, injected pen 8, default pen 10.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub const DEFAULT_PEN_COUNT: usize = 10;
pub const DEFAULT_STEP: u32 = 10;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("pen count must be positive")]
    NoPens,
    #[error("injected count {injected} exceeds pen count {pens}")]
    TooManyInjected { injected: usize, pens: usize },
    #[error("step must be a positive divisor of 100, got {0}")]
    BadStep(u32),
    #[error("step {step} gives {percent}% of {pens} pens, which is not a whole number of pens")]
    NonIntegralInjection { step: u32, percent: u32, pens: usize },
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub pen_count: usize,
    pub injected_count: usize,
    pub output_dir: PathBuf,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), GeneratorError> {
        validate_counts(self.pen_count, self.injected_count)
    }
}

fn validate_counts(pens: usize, injected: usize) -> Result<(), GeneratorError> {
    if pens == 0 {
        return Err(GeneratorError::NoPens);
    }
    if injected > pens {
        return Err(GeneratorError::TooManyInjected { injected, pens });
    }
    Ok(())
}

pub fn pen_name(index: usize) -> String {
    format!("DogPen{index}")
}

pub fn dog_source() -> String {
    "\
public class Dog {
    private String name;

    public Dog(String name) { this.name = name; }

    public String getName() {
        String current = this.name;
        return current;
    }
}
"
    .to_string()
}

/// Source of pen number `index` (1-based). An injected pen takes its `Dog`
/// as a constructor parameter; a default pen creates its own.
pub fn pen_source(index: usize, injected: bool) -> String {
    let name = pen_name(index);
    let constructor = if injected {
        format!("    public {name}(Dog dog) {{ this.dog = dog; }}\n")
    } else {
        format!("    public {name}() {{\n        this.dog = new Dog(\"Rex\");\n    }}\n")
    };
    format!(
        "\
public class {name} {{
    private Dog dog;

{constructor}
    public Dog getDog() {{
        Dog current = this.dog;
        return current;
    }}
}}
"
    )
}

/// File name and text of every class in one project, `Dog.java` first.
pub fn render_project(
    pen_count: usize,
    injected_count: usize,
) -> Result<Vec<(String, String)>, GeneratorError> {
    validate_counts(pen_count, injected_count)?;
    let mut files = vec![("Dog.java".to_string(), dog_source())];
    for i in 1..=pen_count {
        files.push((format!("{}.java", pen_name(i)), pen_source(i, i <= injected_count)));
    }
    Ok(files)
}

pub fn generate_project(spec: &ExperimentSpec) -> Result<Vec<PathBuf>, GeneratorError> {
    let files = render_project(spec.pen_count, spec.injected_count)?;
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| GeneratorError::Io { path, source }
    };
    fs::create_dir_all(&spec.output_dir).map_err(io_err(&spec.output_dir))?;
    let mut written = Vec::with_capacity(files.len());
    for (name, text) in files {
        let path = spec.output_dir.join(name);
        fs::write(&path, text).map_err(io_err(&path))?;
        written.push(path);
    }
    Ok(written)
}

/// `(project name, injected count)` for each percentage 0, step, ..., 100.
pub fn suite_plan(step: u32, pen_count: usize) -> Result<Vec<(String, usize)>, GeneratorError> {
    if step == 0 || step > 100 || 100 % step != 0 {
        return Err(GeneratorError::BadStep(step));
    }
    validate_counts(pen_count, 0)?;
    (0..=100)
        .step_by(step as usize)
        .map(|percent: u32| {
            let scaled = percent as usize * pen_count;
            if !scaled.is_multiple_of(100) {
                return Err(GeneratorError::NonIntegralInjection {
                    step,
                    percent,
                    pens: pen_count,
                });
            }
            Ok((format!("di_{percent}"), scaled / 100))
        })
        .collect()
}

/// Writes one project directory per step under `output_root`.
pub fn generate_suite(output_root: &Path, step: u32) -> Result<Vec<PathBuf>, GeneratorError> {
    generate_suite_with(output_root, step, DEFAULT_PEN_COUNT)
}

pub fn generate_suite_with(
    output_root: &Path,
    step: u32,
    pen_count: usize,
) -> Result<Vec<PathBuf>, GeneratorError> {
    let plan = suite_plan(step, pen_count)?;
    let mut dirs = Vec::with_capacity(plan.len());
    for (name, injected_count) in plan {
        let output_dir = output_root.join(&name);
        generate_project(&ExperimentSpec {
            pen_count,
            injected_count,
            output_dir: output_dir.clone(),
        })?;
        dirs.push(output_dir);
    }
    Ok(dirs)
}

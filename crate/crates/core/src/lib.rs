//! Dependency-injection aware coupling and maintainability metrics.
//!
//! The pipeline is: [`frontend`] parses a class-only source subset into a
//! [`ProjectModel`], [`metrics`] builds the coupling graph and CK metrics,
//! [`di`] classifies injection patterns and derives DIP and DCBO, and
//! [`maintainability`] turns project means into MAI and DMAI. [`stats`] runs
//! the Friedman test over report rows, [`generator`] emits the synthetic
//! `di_k` experiment projects, and [`report`] / [`chart`] render results.

pub mod frontend;

pub use frontend::{ClassModel, Diagnostic, MethodModel, ProjectModel, SourceFile};
pub mod di;
pub mod maintainability;
pub mod metrics;
pub mod stats;
pub mod chart;
pub mod generator;
pub mod report;

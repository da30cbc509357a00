//! Normalized metrics and the MAI / DMAI maintainability indices.
//!
//! Normalization is applied to project means, not to individual classes.

use serde::Serialize;
use thiserror::Error;

use crate::metrics::ProjectMetrics;

#[derive(Debug, Error, PartialEq)]
pub enum MaintainabilityError {
    #[error("metric value must be a nonnegative number, got {0}")]
    Negative(f64),
}

fn check(x: f64) -> Result<f64, MaintainabilityError> {
    if x.is_nan() || x < 0.0 {
        Err(MaintainabilityError::Negative(x))
    } else {
        Ok(x)
    }
}

/// Module-complexity normalization `1 - 1 / (1 + x)`, mapping `[0, inf)`
/// onto `[0, 1)`. Used for CBO, DCBO and RFC.
pub fn normalize_complexity(x: f64) -> Result<f64, MaintainabilityError> {
    let x = check(x)?;
    Ok(1.0 - 1.0 / (1.0 + x))
}

/// Best-fit LCOM normalization: `1 / x` for positive `x`, 0 at zero. Means
/// below 1 would give a reciprocal above 1, so the result is capped at 1.
pub fn normalize_lcom(x: f64) -> Result<f64, MaintainabilityError> {
    let x = check(x)?;
    if x == 0.0 {
        Ok(0.0)
    } else {
        Ok((1.0 / x).min(1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaintainabilityScores {
    pub ncbo: f64,
    pub nrfc: f64,
    pub nlcom: f64,
    pub ndcbo: f64,
    pub mai: f64,
    pub dmai: f64,
}

impl MaintainabilityScores {
    pub fn from_means(
        mean_cbo: f64,
        mean_dcbo: f64,
        mean_lcom: f64,
        mean_rfc: f64,
    ) -> Result<Self, MaintainabilityError> {
        let ncbo = normalize_complexity(mean_cbo)?;
        let ndcbo = normalize_complexity(mean_dcbo)?;
        let nrfc = normalize_complexity(mean_rfc)?;
        let nlcom = normalize_lcom(mean_lcom)?;
        Ok(MaintainabilityScores {
            ncbo,
            nrfc,
            nlcom,
            ndcbo,
            mai: 1.0 - ncbo / 3.0 - nlcom / 3.0 - nrfc / 3.0,
            dmai: 1.0 - ndcbo / 3.0 - nlcom / 3.0 - nrfc / 3.0,
        })
    }
}

pub fn compute_scores(metrics: &ProjectMetrics) -> Result<MaintainabilityScores, MaintainabilityError> {
    MaintainabilityScores::from_means(
        metrics.mean_cbo,
        metrics.mean_dcbo,
        metrics.mean_lcom,
        metrics.mean_rfc,
    )
}

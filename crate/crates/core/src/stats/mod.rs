//! Friedman rank test with Holm-adjusted pairwise comparisons, plus the
//! threshold split that turns a list of projects into a "No DI" / "DI"
//! block design.

mod gamma;

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use gamma::{chi_square_upper_tail, gamma_p, gamma_q, ln_gamma, normal_two_sided};

/// Tolerance used when comparing a DI proportion against the threshold.
const BOUNDARY_EPS: f64 = 1e-9;

pub const NO_DI: &str = "No DI";
pub const DI: &str = "DI";

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("chi-square degrees of freedom must be positive, got {0}")]
    InvalidDegreesOfFreedom(u32),
    #[error("chi-square statistic must be nonnegative, got {0}")]
    NegativeStatistic(f64),
    #[error("need at least 2 blocks and 2 treatments, got {blocks} x {treatments}")]
    TooSmall { blocks: usize, treatments: usize },
    #[error("block {block} has {found} values, expected {expected}")]
    RaggedRow {
        block: usize,
        found: usize,
        expected: usize,
    },
    #[error("block {block} contains a non-finite value")]
    NonFinite { block: usize },
    #[error("threshold {threshold} leaves {below} project(s) labeled \"No DI\" and {above} labeled \"DI\"; each side needs at least 2")]
    GroupTooSmall {
        threshold: f64,
        below: usize,
        above: usize,
    },
}

/// How projects whose DI proportion equals the threshold are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Dropped from both groups.
    #[default]
    Exclude,
    /// Counted as "No DI".
    Lower,
    /// Counted as "DI".
    Upper,
}

impl std::str::FromStr for Boundary {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exclude" => Ok(Boundary::Exclude),
            "lower" => Ok(Boundary::Lower),
            "upper" => Ok(Boundary::Upper),
            other => Err(format!(
                "unknown boundary `{other}` (expected exclude, lower or upper)"
            )),
        }
    }
}

/// Complete block design: `values[block][treatment]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankMatrix {
    treatments: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl RankMatrix {
    pub fn new(treatments: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self, StatsError> {
        let k = treatments.len();
        if values.len() < 2 || k < 2 {
            return Err(StatsError::TooSmall {
                blocks: values.len(),
                treatments: k,
            });
        }
        for (block, row) in values.iter().enumerate() {
            if row.len() != k {
                return Err(StatsError::RaggedRow {
                    block,
                    found: row.len(),
                    expected: k,
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(StatsError::NonFinite { block });
            }
        }
        Ok(RankMatrix { treatments, values })
    }

    pub fn treatments(&self) -> &[String] {
        &self.treatments
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn blocks(&self) -> usize {
        self.values.len()
    }

    /// Within-block ranks, 1 = smallest, ties get the mean of their ranks.
    pub fn ranks(&self) -> Vec<Vec<f64>> {
        self.values.iter().map(|row| midranks(row)).collect()
    }
}

fn midranks(row: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..row.len()).collect();
    order.sort_by(|&a, &b| row[a].partial_cmp(&row[b]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![0.0; row.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && row[order[j + 1]] == row[order[i]] {
            j += 1;
        }
        // positions i..=j share ranks i+1..=j+1
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    ranks
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Split {
    pub matrix: RankMatrix,
    pub no_di_count: usize,
    pub di_count: usize,
}

impl Split {
    /// True when the groups had different sizes and the longer one was cut.
    pub fn truncated(&self) -> bool {
        self.no_di_count != self.di_count
    }
}

/// Labels each `(di_proportion, score)` pair "No DI" or "DI" and pairs the
/// two groups into blocks.
///
/// Each group is sorted ascending by DI proportion and the i-th members are
/// paired. When the groups differ in size the extra members at the top of
/// the longer group are dropped.
pub fn split_by_threshold(
    projects: &[(f64, f64)],
    threshold: f64,
    boundary: Boundary,
) -> Result<Split, StatsError> {
    let mut below = Vec::new();
    let mut above = Vec::new();
    for &(di, score) in projects {
        let on_boundary = (di - threshold).abs() <= BOUNDARY_EPS;
        if on_boundary {
            match boundary {
                Boundary::Exclude => {}
                Boundary::Lower => below.push((di, score)),
                Boundary::Upper => above.push((di, score)),
            }
        } else if di < threshold {
            below.push((di, score));
        } else {
            above.push((di, score));
        }
    }
    if below.len() < 2 || above.len() < 2 {
        return Err(StatsError::GroupTooSmall {
            threshold,
            below: below.len(),
            above: above.len(),
        });
    }
    let by_di = |a: &(f64, f64), b: &(f64, f64)| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal);
    below.sort_by(by_di);
    above.sort_by(by_di);
    let values = below
        .iter()
        .zip(&above)
        .map(|(lo, hi)| vec![lo.1, hi.1])
        .collect();
    Ok(Split {
        matrix: RankMatrix::new(vec![NO_DI.to_string(), DI.to_string()], values)?,
        no_di_count: below.len(),
        di_count: above.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseComparison {
    pub first: String,
    pub second: String,
    pub z: f64,
    pub p_raw: f64,
    pub p_holm: f64,
    pub rejected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FriedmanResult {
    pub treatments: Vec<String>,
    pub blocks: usize,
    pub chi_square: f64,
    pub df: u32,
    pub p_value: f64,
    pub rank_sums: Vec<f64>,
    pub mean_ranks: Vec<f64>,
    pub alpha: f64,
    /// Sorted by raw p-value.
    pub pairwise: Vec<PairwiseComparison>,
}

impl FriedmanResult {
    pub fn rejected(&self) -> bool {
        self.p_value <= self.alpha
    }
}

/// Holm step-down adjustment. Output is aligned with the input order.
pub fn holm_adjust(p_values: &[f64]) -> Vec<f64> {
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        p_values[a]
            .partial_cmp(&p_values[b])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut adjusted = vec![0.0; m];
    let mut running = 0.0f64;
    for (step, &idx) in order.iter().enumerate() {
        let scaled = ((m - step) as f64 * p_values[idx]).min(1.0);
        running = running.max(scaled);
        adjusted[idx] = running;
    }
    adjusted
}

pub fn friedman_test(matrix: &RankMatrix, alpha: f64) -> FriedmanResult {
    let n = matrix.blocks();
    let k = matrix.treatments.len();
    let (nf, kf) = (n as f64, k as f64);

    let mut rank_sums = vec![0.0; k];
    for row in matrix.ranks() {
        for (sum, r) in rank_sums.iter_mut().zip(row) {
            *sum += r;
        }
    }
    let sum_sq: f64 = rank_sums.iter().map(|r| r * r).sum();
    let chi_square =
        (12.0 / (nf * kf * (kf + 1.0)) * sum_sq - 3.0 * nf * (kf + 1.0)).max(0.0);
    let df = (k - 1) as u32;
    let p_value = chi_square_upper_tail(chi_square, df).expect("df >= 1 and statistic >= 0");
    let mean_ranks: Vec<f64> = rank_sums.iter().map(|r| r / nf).collect();

    let se = (kf * (kf + 1.0) / (6.0 * nf)).sqrt();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let z = (mean_ranks[i] - mean_ranks[j]) / se;
            pairs.push((i, j, z, normal_two_sided(z)));
        }
    }
    let raw: Vec<f64> = pairs.iter().map(|p| p.3).collect();
    let adjusted = holm_adjust(&raw);
    let mut pairwise: Vec<PairwiseComparison> = pairs
        .into_iter()
        .zip(adjusted)
        .map(|((i, j, z, p_raw), p_holm)| PairwiseComparison {
            first: matrix.treatments[i].clone(),
            second: matrix.treatments[j].clone(),
            z,
            p_raw,
            p_holm,
            rejected: p_holm <= alpha,
        })
        .collect();
    pairwise.sort_by(|a, b| a.p_raw.partial_cmp(&b.p_raw).unwrap_or(Ordering::Equal));

    FriedmanResult {
        treatments: matrix.treatments.clone(),
        blocks: n,
        chi_square,
        df,
        p_value,
        rank_sums,
        mean_ranks,
        alpha,
        pairwise,
    }
}

impl fmt::Display for FriedmanResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Friedman test: {} blocks x {} treatments",
            self.blocks,
            self.treatments.len()
        )?;
        writeln!(f, "chi-square = {:.4}, df = {}, p = {:.4}", self.chi_square, self.df, self.p_value)?;
        writeln!(f, "mean ranks:")?;
        for (t, r) in self.treatments.iter().zip(&self.mean_ranks) {
            writeln!(f, "  {t}: {r:.4}")?;
        }
        writeln!(f, "Holm table (alpha = {}):", self.alpha)?;
        writeln!(f, "  {:<24} {:>8} {:>10} {:>10}  decision", "comparison", "z", "p", "p_holm")?;
        for c in &self.pairwise {
            writeln!(
                f,
                "  {:<24} {:>8.4} {:>10.4} {:>10.4}  {}",
                format!("{} vs. {}", c.first, c.second),
                c.z,
                c.p_raw,
                c.p_holm,
                if c.rejected { "reject" } else { "retain" }
            )?;
        }
        write!(
            f,
            "overall: {}",
            if self.rejected() { "reject" } else { "retain" }
        )
    }
}

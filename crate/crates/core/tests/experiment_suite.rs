mod support;

use dcbo_core::di::InjectionPattern;
use dcbo_core::generator::{render_project, suite_plan};
use dcbo_core::report::{analyze_sources, format_2dp, ProjectAnalysis, ReportRow};
use dcbo_core::stats::{chi_square_upper_tail, friedman_test, split_by_threshold, Boundary};
use dcbo_core::SourceFile;

/// Reference raw metrics: (DI, CBO, DCBO, LCOM, RFC, LOC).
const REFERENCE_RAW: [(f64, f64, f64, f64, f64, usize); 11] = [
    (0.0, 1.82, 1.82, 0.0, 2.91, 108),
    (0.1, 1.82, 1.73, 0.0, 2.82, 106),
    (0.2, 1.82, 1.64, 0.0, 2.73, 104),
    (0.3, 1.82, 1.55, 0.0, 2.64, 102),
    (0.4, 1.82, 1.45, 0.0, 2.55, 100),
    (0.5, 1.82, 1.36, 0.0, 2.45, 98),
    (0.6, 1.82, 1.27, 0.0, 2.36, 96),
    (0.7, 1.82, 1.18, 0.0, 2.27, 94),
    (0.8, 1.82, 1.09, 0.0, 2.18, 92),
    (0.9, 1.82, 1.00, 0.0, 2.09, 90),
    (1.0, 1.82, 0.91, 0.0, 2.00, 88),
];

/// Reference normalized values with CBO: (NCBO, NRFC, NLCOM, MAI).
const REFERENCE_CBO_INDICES: [(f64, f64, f64, f64); 11] = [
    (0.65, 0.74, 0.0, 0.54),
    (0.65, 0.74, 0.0, 0.54),
    (0.65, 0.73, 0.0, 0.54),
    (0.65, 0.73, 0.0, 0.54),
    (0.65, 0.72, 0.0, 0.55),
    (0.65, 0.71, 0.0, 0.55),
    (0.65, 0.70, 0.0, 0.55),
    (0.65, 0.69, 0.0, 0.55),
    (0.65, 0.69, 0.0, 0.56),
    (0.65, 0.68, 0.0, 0.56),
    (0.65, 0.67, 0.0, 0.56),
];

/// Reference normalized values with DCBO: (NDCBO, NRFC, NLCOM, DMAI).
const REFERENCE_DCBO_INDICES: [(f64, f64, f64, f64); 11] = [
    (0.64, 0.74, 0.0, 0.54),
    (0.63, 0.73, 0.0, 0.54),
    (0.62, 0.73, 0.0, 0.55),
    (0.60, 0.72, 0.0, 0.56),
    (0.59, 0.71, 0.0, 0.56),
    (0.57, 0.71, 0.0, 0.57),
    (0.56, 0.70, 0.0, 0.58),
    (0.54, 0.69, 0.0, 0.59),
    (0.52, 0.68, 0.0, 0.60),
    (0.50, 0.67, 0.0, 0.61),
    (0.47, 0.66, 0.0, 0.62),
];

fn analyze(pens: usize, injected: usize) -> ProjectAnalysis {
    let files: Vec<SourceFile> = render_project(pens, injected)
        .unwrap()
        .into_iter()
        .map(|(name, text)| SourceFile::new(name, text))
        .collect();
    analyze_sources(&format!("di_{}", injected * 100 / pens), &files).unwrap()
}

fn suite() -> Vec<ReportRow> {
    (0..=10)
        .map(|k| ReportRow::from_analysis(&analyze(10, k)))
        .collect()
}

#[test]
fn exact_rational_values_for_every_k() {
    for k in 0..=10usize {
        let a = analyze(10, k);
        let m = &a.metrics;
        assert_eq!(m.class_metrics.len(), 11);
        assert_eq!(m.di_proportion, k as f64 / 10.0, "k={k}");
        assert_eq!(m.cbo_sum(), 20);
        assert_eq!(m.dip_sum(), k);
        assert_eq!(m.mean_cbo, 20.0 / 11.0);
        assert_eq!(m.mean_dcbo, (20 - k) as f64 / 11.0);
        assert_eq!(m.mean_lcom, 0.0);
        assert_eq!(m.mean_rfc, (32 - k) as f64 / 11.0);
        assert_eq!(m.total_loc, 108 - 2 * k);
    }
}

#[test]
fn reference_raw_metrics_reproduced() {
    for (row, expected) in suite().iter().zip(REFERENCE_RAW) {
        let (di, cbo, dcbo, lcom, rfc, loc) = expected;
        assert_eq!(format_2dp(row.di), format_2dp(di));
        for (got, want) in [(row.cbo, cbo), (row.dcbo, dcbo), (row.lcom, lcom), (row.rfc, rfc)] {
            assert!((got - want).abs() <= 0.005, "{}: {got} vs {want}", row.project);
            assert_eq!(format_2dp(got), format_2dp(want), "{}", row.project);
        }
        assert_eq!(row.loc, loc);
    }
}

#[test]
fn reference_normalized_values_within_a_hundredth() {
    for ((row, t2), t3) in suite().iter().zip(REFERENCE_CBO_INDICES).zip(REFERENCE_DCBO_INDICES) {
        let checks = [
            ("NCBO", row.ncbo, t2.0),
            ("NRFC", row.nrfc, t2.1),
            ("NLCOM", row.nlcom, t2.2),
            ("MAI", row.mai, t2.3),
            ("NDCBO", row.ndcbo, t3.0),
            ("NRFC", row.nrfc, t3.1),
            ("NLCOM", row.nlcom, t3.2),
            ("DMAI", row.dmai, t3.3),
        ];
        for (name, got, want) in checks {
            assert!((got - want).abs() <= 0.01, "{} {name}: {got} vs {want}", row.project);
        }
    }
}

#[test]
fn dmai_rises_faster_than_mai() {
    let rows = suite();
    for w in rows.windows(2) {
        assert!(w[1].dmai > w[0].dmai);
        assert!(w[1].mai > w[0].mai);
        assert!(w[1].dmai - w[0].dmai > w[1].mai - w[0].mai);
        assert_eq!(w[1].ncbo, w[0].ncbo);
    }
}

#[test]
fn pens_are_constructor_injected_or_hard_wired() {
    let a = analyze(10, 4);
    let injected = a
        .injections
        .findings
        .iter()
        .filter(|f| f.pattern == InjectionPattern::Cnd)
        .count();
    let hard = a
        .injections
        .findings
        .iter()
        .filter(|f| f.pattern == InjectionPattern::Hard)
        .count();
    assert_eq!((injected, hard), (4, 6));
    assert!(a.injections.findings.iter().all(|f| f.dependency_class == "Dog"));
}

#[test]
fn two_class_project() {
    let a = analyze(1, 0);
    assert_eq!(a.metrics.class_metrics.len(), 2);
    assert_eq!(a.metrics.cbo_sum(), 2);
    assert_eq!(a.metrics.mean_cbo, 1.0);
}

#[test]
fn friedman_on_dmai_split() {
    let rows = suite();
    let data: Vec<(f64, f64)> = rows.iter().map(|r| (r.di, r.dmai)).collect();
    let split = split_by_threshold(&data, 0.5, Boundary::Exclude).unwrap();
    assert_eq!(split.matrix.blocks(), 5);
    let result = friedman_test(&split.matrix, 0.05);
    assert!((result.chi_square - 5.0).abs() < 1e-12);
    assert_eq!(result.df, 1);
    // closed form: chi-square(5, df 1) tail = erfc(sqrt(5/2))
    let expected = chi_square_upper_tail(5.0, 1).unwrap();
    assert!((result.p_value - expected).abs() < 1e-15);
    assert!((result.p_value - 0.0253).abs() < 5e-5);
    assert!(result.rejected());
    assert!(result.pairwise[0].rejected);
}

#[test]
fn suite_plan_names_match_projects() {
    let names: Vec<String> = suite_plan(10, 10).unwrap().into_iter().map(|p| p.0).collect();
    let rows = suite();
    let projects: Vec<&str> = rows.iter().map(|r| r.project.as_str()).collect();
    assert_eq!(names, projects);
}

#[test]
fn chi_square_kernel_against_high_precision_grid() {
    for (x, df, expected) in support::chi_square_grid::GRID {
        let got = chi_square_upper_tail(x, df).unwrap();
        assert!((got - expected).abs() < 1e-10, "x={x} df={df}: {got} vs {expected}");
    }
}

//! Self-contained SVG chart of NCBO, NDCBO, MAI and DMAI against DI with
//! least-squares trendlines. Output depends only on the input rows.

use std::fmt::Write;

use crate::report::ReportRow;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

pub struct Series {
    pub name: &'static str,
    pub color: &'static str,
    pub value: fn(&ReportRow) -> f64,
}

pub const SERIES: [Series; 4] = [
    Series {
        name: "NCBO",
        color: "#1f77b4",
        value: |r| r.ncbo,
    },
    Series {
        name: "NDCBO",
        color: "#ff7f0e",
        value: |r| r.ndcbo,
    },
    Series {
        name: "MAI",
        color: "#2ca02c",
        value: |r| r.mai,
    },
    Series {
        name: "DMAI",
        color: "#d62728",
        value: |r| r.dmai,
    },
];

/// Ordinary least-squares fit `y = slope * x + intercept`. `None` when there
/// are fewer than two points or every x is the same.
pub fn linear_fit(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx <= f64::EPSILON {
        return None;
    }
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let slope = sxy / sxx;
    Some((slope, mean_y - slope * mean_x))
}

fn px(x: f64) -> f64 {
    LEFT + x.clamp(0.0, 1.0) * (WIDTH - LEFT - RIGHT)
}

fn py(y: f64) -> f64 {
    HEIGHT - BOTTOM - y.clamp(0.0, 1.0) * (HEIGHT - TOP - BOTTOM)
}

/// Both axes span `[0, 1]`: DI proportions and all four plotted values are
/// bounded there.
pub fn render_svg(rows: &[ReportRow]) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    for i in 0..=10 {
        let t = f64::from(i) / 10.0;
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#e0e0e0"/>"##,
            px(0.0),
            py(t),
            px(1.0),
            py(t)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{t:.1}</text>"#,
            px(0.0) - 6.0,
            py(t) + 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{t:.1}</text>"#,
            px(t),
            py(0.0) + 18.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<polyline points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="black"/>"#,
        px(0.0),
        py(1.0),
        px(0.0),
        py(0.0),
        px(1.0),
        py(0.0)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">DI proportion</text>"#,
        px(0.5),
        HEIGHT - 12.0
    );

    for (i, series) in SERIES.iter().enumerate() {
        let class = series.name.to_ascii_lowercase();
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.di, (series.value)(r))).collect();
        let _ = writeln!(svg, r#"<g class="series-{class}">"#);
        if let Some((slope, intercept)) = linear_fit(&points) {
            let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
            let _ = writeln!(
                svg,
                r#"<line class="trendline" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-dasharray="6 4"/>"#,
                px(lo),
                py(slope * lo + intercept),
                px(hi),
                py(slope * hi + intercept),
                series.color
            );
        }
        for (x, y) in &points {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="{}"/>"#,
                px(*x),
                py(*y),
                series.color
            );
        }
        let _ = writeln!(svg, "</g>");

        let ly = TOP + 20.0 * i as f64;
        let lx = WIDTH - RIGHT + 20.0;
        let _ = writeln!(
            svg,
            r#"<rect x="{lx:.2}" y="{:.2}" width="12" height="12" fill="{}"/>"#,
            ly - 10.0,
            series.color
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#,
            lx + 18.0,
            series.name
        );
    }
    svg.push_str("</svg>\n");
    svg
}

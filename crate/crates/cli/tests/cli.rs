use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dcbo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcbo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Generates the default suite and returns the CSV report path.
fn suite_report(root: &Path) -> std::path::PathBuf {
    let suite = root.join("suite");
    assert!(dcbo(&["generate", s(&suite)]).status.success());
    let report = root.join("report.csv");
    let o = dcbo(&["analyze", "--each", s(&suite), "--out", s(&report)]);
    assert!(o.status.success(), "{}", stderr(&o));
    report
}

#[test]
fn generate_lists_eleven_projects() {
    let tmp = tempfile::tempdir().unwrap();
    let o = dcbo(&["generate", s(tmp.path())]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 11);
    assert!(tmp.path().join("di_100/DogPen10.java").is_file());
}

#[test]
fn generate_step_100_and_25() {
    let tmp = tempfile::tempdir().unwrap();
    let o = dcbo(&["generate", s(tmp.path()), "--step", "100"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>().len(), 2);

    let o = dcbo(&["generate", s(&tmp.path().join("q")), "--step", "25"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not a whole number"), "{}", stderr(&o));
    assert!(!tmp.path().join("q").exists());
}

#[test]
fn analyze_suite_csv_shape() {
    let tmp = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(suite_report(tmp.path())).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "project,di,cbo,dcbo,lcom,rfc,loc,ncbo,ndcbo,nlcom,nrfc,mai,dmai");
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[1], "di_0,0.00,1.82,1.82,0.00,2.91,108,0.65,0.65,0.00,0.74,0.54,0.54");
    assert_eq!(lines[11], "di_100,1.00,1.82,0.91,0.00,2.00,88,0.65,0.48,0.00,0.67,0.56,0.62");
    // natural order: di_10 follows di_0, di_100 comes last
    assert!(lines[2].starts_with("di_10,"));
}

#[test]
fn analyze_json_round_trips_full_precision() {
    let tmp = tempfile::tempdir().unwrap();
    let suite = tmp.path().join("suite");
    dcbo(&["generate", s(&suite), "--step", "50"]);
    let o = dcbo(&["analyze", "--each", s(&suite), "--format", "json"]);
    assert!(o.status.success());
    let rows = dcbo_core::report::from_json_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1].dcbo, 15.0 / 11.0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[1]["display"]["dcbo"], "1.36");
}

#[test]
fn analyze_empty_directory_warns_and_reports_zeros() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("nothing");
    fs::create_dir(&dir).unwrap();
    let o = dcbo(&["analyze", s(&dir)]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(row.starts_with("nothing,0.00,0.00,0.00,0.00,0.00,0,"), "{row}");
}

#[test]
fn analyze_unparsable_project_exits_one_without_its_row() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad");
    let good = tmp.path().join("good");
    fs::create_dir_all(&bad).unwrap();
    fs::create_dir_all(&good).unwrap();
    fs::write(bad.join("A.java"), "public class A {\n  int x = 1;\n}\n").unwrap();
    fs::write(bad.join("B.java"), "public class B { }\n").unwrap();
    fs::write(good.join("C.java"), "public class C { }\n").unwrap();
    let o = dcbo(&["analyze", s(&bad), s(&good)]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("A.java:2:"), "{err}");
    let out = stdout(&o);
    assert!(!out.contains("\nbad,"), "{out}");
    assert!(out.contains("\ngood,"), "{out}");
}

#[test]
fn analyze_skips_hidden_directories_and_other_files() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path().join("proj");
    fs::create_dir_all(p.join(".git")).unwrap();
    fs::create_dir_all(p.join("src/deep")).unwrap();
    fs::write(p.join(".git/Broken.java"), "this is not source").unwrap();
    fs::write(p.join("notes.txt"), "class Nope {").unwrap();
    fs::write(p.join("src/deep/A.java"), "public class A { private B b; }\n").unwrap();
    fs::write(p.join("src/B.java"), "public class B { }\n").unwrap();
    let o = dcbo(&["analyze", s(&p)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("proj,0.00,1.00,1.00,"), "{}", stdout(&o));
}

#[test]
fn duplicate_class_across_files_is_a_diagnostic() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path().join("dup");
    fs::create_dir_all(p.join("a")).unwrap();
    fs::create_dir_all(p.join("b")).unwrap();
    fs::write(p.join("a/X.java"), "public class X { }\n").unwrap();
    fs::write(p.join("b/X.java"), "public class X { }\n").unwrap();
    let o = dcbo(&["analyze", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("X"));
}

#[test]
fn usage_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(dcbo(&[]).status.code(), Some(2));
    assert_eq!(dcbo(&["analyze"]).status.code(), Some(2));
    assert_eq!(dcbo(&["analyze", s(&tmp.path().join("missing"))]).status.code(), Some(2));
    assert_eq!(dcbo(&["analyze", s(tmp.path()), "--format", "xml"]).status.code(), Some(2));
    assert_eq!(dcbo(&["analyze", "--each", s(tmp.path())]).status.code(), Some(2));
    assert_eq!(dcbo(&["stats", "r.csv", "--alpha", "0"]).status.code(), Some(2));
    assert_eq!(dcbo(&["stats", "r.csv", "--metric", "cbo"]).status.code(), Some(2));
    assert_eq!(dcbo(&["stats", "r.csv", "--boundary", "middle"]).status.code(), Some(2));
    assert_eq!(dcbo(&["generate", "x", "--step", "-1"]).status.code(), Some(2));
}

#[test]
fn stats_on_experimental_report_rejects() {
    let tmp = tempfile::tempdir().unwrap();
    let report = suite_report(tmp.path());
    let o = dcbo(&["stats", s(&report), "--threshold", "0.5", "--metric", "dmai", "--alpha", "0.05"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("chi-square = 5.0000"), "{out}");
    assert!(out.contains("p = 0.0253"), "{out}");
    assert!(out.contains("No DI: 1.0000"), "{out}");
    assert!(out.contains("DI: 2.0000"), "{out}");
    assert!(out.trim_end().ends_with("overall: reject"), "{out}");
}

#[test]
fn stats_boundary_modes_and_truncation_warning() {
    let tmp = tempfile::tempdir().unwrap();
    let report = suite_report(tmp.path());
    let o = dcbo(&["stats", s(&report), "--boundary", "lower"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("truncated"));
    assert!(stdout(&o).contains("5 blocks"));
    let o = dcbo(&["stats", s(&report), "--alpha", "0.01"]);
    assert!(stdout(&o).trim_end().ends_with("overall: retain"), "{}", stdout(&o));
}

#[test]
fn stats_single_group_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    let report = suite_report(tmp.path());
    let o = dcbo(&["stats", s(&report), "--threshold", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("No DI"), "{}", stderr(&o));
}

#[test]
fn malformed_report_names_the_line() {
    let tmp = tempfile::tempdir().unwrap();
    let report = suite_report(tmp.path());
    let mut text = fs::read_to_string(&report).unwrap();
    text = text.replace("di_40,0.40,1.82", "di_40,zero,1.82");
    let broken = tmp.path().join("broken.csv");
    fs::write(&broken, text).unwrap();
    for cmd in ["stats", "chart"] {
        let o = dcbo(&[cmd, s(&broken)]);
        assert_eq!(o.status.code(), Some(1));
        assert!(stderr(&o).contains("line 6"), "{}", stderr(&o));
    }
    let missing = dcbo(&["chart", s(&tmp.path().join("none.csv"))]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn chart_counts_and_trendlines() {
    let tmp = tempfile::tempdir().unwrap();
    let report = suite_report(tmp.path());
    let svg_path = tmp.path().join("c.svg");
    assert!(dcbo(&["chart", s(&report), "--out", s(&svg_path)]).status.success());
    let svg = fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<circle").count(), 44);
    assert_eq!(svg.matches("class=\"trendline\"").count(), 4);

    let text = fs::read_to_string(&report).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let two = tmp.path().join("two.csv");
    fs::write(&two, format!("{}\n{}\n{}\n", lines[0], lines[1], lines[11])).unwrap();
    let o = dcbo(&["chart", s(&two)]);
    assert_eq!(stdout(&o).matches("class=\"trendline\"").count(), 4);
    let one = tmp.path().join("one.csv");
    fs::write(&one, format!("{}\n{}\n", lines[0], lines[1])).unwrap();
    let o = dcbo(&["chart", s(&one)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("<circle").count(), 4);
    assert_eq!(stdout(&o).matches("class=\"trendline\"").count(), 0);
}

#[test]
fn stats_and_chart_accept_json_reports() {
    let tmp = tempfile::tempdir().unwrap();
    let suite = tmp.path().join("suite");
    dcbo(&["generate", s(&suite)]);
    let json = tmp.path().join("r.json");
    dcbo(&["analyze", "--each", s(&suite), "--format", "json", "--out", s(&json)]);
    let o = dcbo(&["stats", s(&json)]);
    assert!(stdout(&o).contains("chi-square = 5.0000"));
    assert!(dcbo(&["chart", s(&json)]).status.success());
}

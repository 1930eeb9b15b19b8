//! Runs the built binary end to end.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incgamma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<csv::StringRecord> {
    let text = stdout(o);
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    rd.records().map(|r| r.unwrap()).collect()
}

#[test]
fn eval_csv_and_json_agree() {
    let c = run(&["eval", "--a", "100", "--x", "105"]);
    assert_eq!(c.status.code(), Some(0));
    let rows = csv_rows(&c);
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][3], "transition");
    let q: f64 = rows[0][2].parse().unwrap();
    assert!((q - 0.29975465760884373).abs() < 1e-15);

    let j = run(&["eval", "--a", "100", "--x", "105", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v[0]["q"].as_f64().unwrap(), q);
    assert_eq!(v[0]["regime"], "transition");
}

#[test]
fn eval_regimes() {
    for (args, regime) in [
        (vec!["--a", "100", "--x", "200"], "outer-upper"),
        (vec!["--a", "100", "--x", "40"], "outer-lower"),
        (vec!["--a", "100", "--x", "105", "--regime", "uniform"], "uniform"),
        (vec!["--a", "100", "--x", "105", "--regime", "reference"], "reference"),
    ] {
        let mut full = vec!["eval"];
        full.extend(args);
        let o = run(&full);
        assert_eq!(o.status.code(), Some(0), "{full:?}");
        assert_eq!(&csv_rows(&o)[0][3], regime);
    }
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["eval", "--a", "-1", "--x", "2"],
        vec!["invert", "--a", "100", "--q", "1.5"],
        vec!["invert", "--a", "100", "--q", "1e-300"],
        vec!["zero", "--a", "5"],
        vec!["figure", "--id", "7"],
        vec!["coeffs", "--family", "Z", "--max", "2"],
        vec!["eval", "--a", "nope", "--x", "1"],
    ] {
        let o = run(&args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn invert_verifies() {
    let o = run(&["invert", "--a", "100", "--q", "0.5", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    let residual: f64 = rows[0][6].parse().unwrap();
    assert!(residual < 1e-8);
}

#[test]
fn zero_verifies() {
    let o = run(&["zero", "--a", "-30.3", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&o);
    let x: f64 = rows[0][1].parse().unwrap();
    assert!(x < 0.0);
}

#[test]
fn table_check_passes() {
    let o = run(&["coeffs", "--family", "C", "--max", "8", "--check", "tables"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("C 0 0 -1/3 2 1/3\n"));
}

#[test]
fn figure_preset_rows() {
    let o = run(&["figure", "--id", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 41);
    // uniform terms appear on even rows only
    assert!(rows[1][2].is_empty() && !rows[2][2].is_empty());
}

//! End-to-end runs of the `quasibound` binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasibound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn solve_leaky_sphere() {
    let v = json(&run(&["solve", "--model", "leaky-sphere", "--V0a2", "72", "--w", "0.5"]));
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    for (r, want) in roots.iter().zip([1.067, 2.331]) {
        assert!((r["E"].as_f64().unwrap() - want).abs() < 2e-3);
        assert!(r["bracket"].as_array().unwrap().len() == 2);
        assert!(r["residual"].as_f64().unwrap().abs() < 1e-8);
    }
    assert_eq!(v["units"]["hbar"], 1.0);
    assert_eq!(v["units"]["mass"], 0.5);
    assert_eq!(v["parameters"]["v0a2"], 72.0);
}

#[test]
fn delta_waveform_csv() {
    let o = run(&["waveform", "--model", "delta-field", "--f-frac", "0.1", "--grid", "401,-4,4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,psi,envelope,potential"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 401);
    assert!(rows.iter().all(|r| r.len() == 4));
    let peak = rows.iter().max_by(|a, b| a[1].total_cmp(&b[1])).unwrap();
    assert_eq!(peak[0], 0.0);
    // 17 significant digits
    let field = text.lines().nth(1).unwrap().split(',').next().unwrap();
    assert_eq!(field, "-4.0000000000000000e0");
}

#[test]
fn critical_twin_even() {
    let v = json(&run(&["critical", "--model", "twin-barrier", "--V0a2", "72", "--parity", "even"]));
    assert!((v["estimate"].as_f64().unwrap() - 0.4795).abs() < 1e-3);
    let actual = v["actual"].as_f64().unwrap();
    assert!(actual > v["estimate"].as_f64().unwrap());
}

#[test]
fn critical_field_of_the_delta_well() {
    let v = json(&run(&["critical", "--model", "delta-field", "--eb", "-1"]));
    assert!((v["F_cr"].as_f64().unwrap() - 0.764_757_493_286_066).abs() < 1e-12);
}

#[test]
fn resonances_table_keeps_both_columns() {
    let v = json(&run(&["resonances", "--model", "twin-barrier", "--parity", "even"]));
    let poles = v["poles"].as_array().unwrap();
    assert_eq!(poles.len(), 3);
    assert!((poles[0]["e_r"].as_f64().unwrap() - 0.219).abs() < 1e-2);
    let table = v["table"].as_array().unwrap();
    assert!(table[0]["pole"].is_object() && table[0]["stationary"].is_number());
    assert!(table[1]["stationary"].is_null());
}

#[test]
fn scan_over_widths() {
    let o = run(&["scan", "--model", "leaky-sphere", "--grid", "3,0.3,0.5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "parameter,E_1,E_2");
    // no roots at w = 0.3a, two at 0.5a
    assert!(lines[1].ends_with(",,"));
    assert_eq!(lines[3].split(',').filter(|f| !f.is_empty()).count(), 3);
}

#[test]
fn config_file_and_atomic_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "model = leaky-sphere\nw = 0.3\nformat = csv\n").unwrap();
    let out = dir.path().join("roots.csv");
    let o = run(&["solve", "--config", cfg.to_str().unwrap(), "--w", "0.5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("index,E,residual,bracket_lo,bracket_hi\n"));
    assert_eq!(text.lines().count(), 3);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["solve", "--model", "square"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--mass", "0"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--config", "/nonexistent/run.cfg"]).status.code(), Some(2));
    let bad_out = Path::new("/nonexistent/dir/out.json");
    assert_eq!(run(&["solve", "--out", bad_out.to_str().unwrap()]).status.code(), Some(2));
    // no stationary root to draw: numerical outcome, message names the model
    let o = run(&["waveform", "--model", "leaky-sphere", "--w", "0.3"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("waveform") && err.contains("leaky-sphere"), "{err}");
}

#[test]
fn timeline_and_greens_outputs() {
    let o = run(&["timeline", "--model", "twin-barrier", "--tau", "0.7", "--grid", "4,0,3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("x,re,im\n"));
    let o = run(&["greens", "--model", "delta-field", "--energy", "-1", "--grid", "5,-2,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn regression_report_is_deterministic_and_detects_tightening() {
    let a = run(&["regress"]);
    let b = run(&["regress"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("checks passed"));
    let tight = run(&["regress", "--tol-scale", "0.01"]);
    assert_eq!(tight.status.code(), Some(1));
    let failed = |o: &Output| stdout(o).matches("FAIL").count();
    assert!(failed(&tight) > failed(&a));
}

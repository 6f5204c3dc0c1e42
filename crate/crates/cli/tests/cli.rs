use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hybridfso"))
        .env("HYBRIDFSO_WORKERS", "1")
        .args(args)
        .output()
        .unwrap()
}

fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|x| x.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn col(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let j = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[j].parse().unwrap()).collect()
}

#[test]
fn outage_sweep_is_sixteen_decreasing_rows() {
    let out = run(&[
        "outage", "--regime", "moderate", "--N", "2", "--M", "2", "--gamma-th-db", "10", "--snr",
        "10:40:2", "--trials", "20000",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (h, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 16);
    let p = col(&h, &rows, "outage_exact");
    assert!(p.windows(2).all(|w| w[1] < w[0]));
    assert!(rows.iter().all(|r| r.last().unwrap() == "20000"));
}

#[test]
fn ber_sweep_routes_agree_per_row() {
    let out = run(&[
        "ber", "--regime", "strong", "--N", "2", "--M", "2", "--snr", "10:40:2", "--trials", "0",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (h, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 16);
    let q = col(&h, &rows, "ber_quadrature");
    let c = col(&h, &rows, "ber_closed_form");
    for (a, b) in q.iter().zip(&c) {
        assert!((a - b).abs() <= 1e-4 * a, "{a} vs {b}");
    }
}

#[test]
fn saturate_preset_runs_with_unit_lambda() {
    let out = run(&["outage", "--regime", "saturate", "--snr", "5:30:5", "--trials", "0"]);
    assert!(out.status.success());
    let (h, rows) = csv_rows(&out);
    let exact = col(&h, &rows, "outage_exact");
    let asym = col(&h, &rows, "outage_asymptotic");
    // the asymptote is an upper bound that tightens with SNR
    for (e, a) in exact.iter().zip(&asym) {
        assert!(a >= e);
    }
    assert!((asym[5] - exact[5]) / exact[5] < (asym[2] - exact[2]) / exact[2]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["outage", "--snr", "40:10:2"]).status.code(), Some(2));
    assert_eq!(run(&["outage", "--N", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let bad = run(&["outage", "--snr", "10:10:1", "--trials", "0", "--output", "/nonexistent/dir/x.csv"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("/nonexistent/dir/x.csv"));
    let env = Command::new(env!("CARGO_BIN_EXE_hybridfso"))
        .env("HYBRIDFSO_WORKERS", "zero")
        .args(["selftest"])
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn output_file_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("out.csv");
    let script = dir.path().join("plot.py");
    let out = run(&[
        "ber",
        "--snr",
        "20:24:2",
        "--trials",
        "5000",
        "--output",
        csv_path.to_str().unwrap(),
        "--plot-script",
        script.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&csv_path).unwrap();
    assert!(body.starts_with("gamma_avg_db,ber_quadrature,"));
    assert_eq!(body.lines().count(), 4);
    let py = std::fs::read_to_string(&script).unwrap();
    assert!(py.contains("set_yscale(\"log\")"));
    assert!(py.contains(csv_path.to_str().unwrap()));
}

#[test]
fn selftest_passes_and_emits_json() {
    let out = run(&["selftest"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS criterion 1"));
}

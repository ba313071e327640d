use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn unidp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unidp")).args(args).output().unwrap()
}

fn unidp_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_unidp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_code(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    v["error"].as_str().unwrap().to_owned()
}

fn data_file(lines: impl Iterator<Item = String>) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    for line in lines {
        writeln!(f, "{line}").unwrap();
    }
    f.flush().unwrap();
    f
}

#[test]
fn constant_input_exhausts_the_mean_pipeline() {
    let f = data_file((0..10_000).map(|_| "3.0".to_owned()));
    let out = unidp(&["estimate", f.path().to_str().unwrap(), "--estimator", "mean", "--epsilon", "1", "--noiseless"]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(error_code(&out), "budget_exhausted");
}

#[test]
fn noiseless_mean_near_three_is_within_bucket() {
    let f = data_file((0..10_000).map(|i| format!("{}", 3.0 + ((i * 7919) % 10_000) as f64 * 1e-6 - 0.005)));
    let out = unidp(&["estimate", f.path().to_str().unwrap(), "--estimator", "mean", "--epsilon", "1", "--noiseless"]);
    let v = json(&out);
    let est = v["estimate"].as_f64().unwrap();
    let bucket = v["diagnostics"]["bucket"].as_f64().unwrap();
    let sample_mean = 3.0 + (9999.0 * 1e-6) / 2.0 - 0.005;
    assert!((est - sample_mean).abs() <= bucket, "{est} vs {sample_mean}, bucket {bucket}");
    assert!((est - 3.0).abs() <= bucket + 0.005);
    assert_eq!(v["ledger"]["total"].as_f64().unwrap(), 1.0);
}

#[test]
fn empty_input_fails() {
    let f = data_file(std::iter::empty());
    let out = unidp(&["estimate", f.path().to_str().unwrap(), "--estimator", "mean", "--epsilon", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_code(&out), "insufficient_sample");
}

#[test]
fn distinct_exit_codes() {
    let out = unidp_stdin(&["estimate", "--estimator", "iqr", "--epsilon", "1"], "1.0\nabc\n");
    assert_eq!((out.status.code(), error_code(&out).as_str()), (Some(3), "parse_error"));
    let out = unidp_stdin(&["estimate", "--estimator", "variance", "--epsilon", "1"], "1\n2\n3\n");
    assert_eq!((out.status.code(), error_code(&out).as_str()), (Some(4), "insufficient_sample"));
    let out = unidp_stdin(&["estimate", "--estimator", "quantile", "--tau", "9", "--epsilon", "1"], "1\n2\n3\n");
    assert_eq!((out.status.code(), error_code(&out).as_str()), (Some(6), "invalid_argument"));
    let out = unidp(&["experiment", "--dist", "gaussian", "--estimator", "mean", "--n", "1", "--epsilon", "1"]);
    assert_eq!(out.status.code(), Some(6));
    let out = unidp(&["estimate", "--estimator", "mean", "--epsilon", "-1"]);
    assert!(!out.status.success());
}

#[test]
fn golden_iqr_from_seeded_gaussian() {
    let sample = unidp(&["sample", "--dist", "gaussian:mu=0,sigma=1", "--n", "100000", "--seed", "1"]);
    assert!(sample.status.success());
    let text = String::from_utf8(sample.stdout).unwrap();
    assert_eq!(text.lines().count(), 100_000);
    let out = unidp_stdin(&["estimate", "--estimator", "iqr", "--epsilon", "1", "--seed", "1"], &text);
    let v = json(&out);
    let est = v["estimate"].as_f64().unwrap();
    assert!((1.24..=1.45).contains(&est), "{est}");
    // recorded from the first seeded run
    assert!((est - 1.34508375).abs() < 1e-9, "{est}");
}

#[test]
fn estimate_report_shape() {
    let text: String = (0..2000).map(|i| format!("{}\n", (i as f64 * 0.37).sin() * 10.0)).collect();
    for est in ["mean", "variance", "iqr", "radius", "range", "quantile", "iqr_lower_bound"] {
        let v = json(&unidp_stdin(&["estimate", "--estimator", est, "--epsilon", "2", "--seed", "4", "--bucket", "0.01"], &text));
        for key in ["estimate", "epsilon", "beta", "seed", "ledger", "diagnostics"] {
            assert!(v.get(key).is_some(), "{est}: missing {key}");
        }
        let total = v["ledger"]["total"].as_f64().unwrap();
        assert!(total <= 2.0 + 1e-12 || est == "variance", "{est}: {total}");
        let sum: f64 = v["ledger"]["entries"].as_array().unwrap().iter().map(|e| e["epsilon"].as_f64().unwrap()).sum();
        assert!((sum - total).abs() < 1e-12);
    }
}

#[test]
fn noiseless_estimates_are_deterministic() {
    let text: String = (0..3000).map(|i| format!("{}\n", ((i * 31) % 1000) as f64 / 7.0)).collect();
    for est in ["mean", "variance", "iqr", "quantile"] {
        let a = unidp_stdin(&["estimate", "--estimator", est, "--epsilon", "1", "--noiseless", "--seed", "1"], &text);
        let b = unidp_stdin(&["estimate", "--estimator", est, "--epsilon", "1", "--noiseless", "--seed", "1"], &text);
        assert!(a.status.success(), "{est}");
        assert_eq!(a.stdout, b.stdout, "{est}");
    }
}

#[test]
fn experiment_csv_is_reproducible() {
    let args = [
        "experiment", "--dist", "student_t:nu=3", "--estimator", "variance", "--n", "2000", "--trials", "8",
        "--epsilon", "1", "--seed", "42",
    ];
    let a = unidp(&args);
    let b = unidp(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "trial,seed,estimate,truth,abs_error,baseline_error,guarantee_ok,ledger_total,precondition_ok,status"
    );
    assert_eq!(lines.count(), 8);
}

#[test]
fn experiment_json_aggregate_matches_rows() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("summary.json");
    let out = unidp(&[
        "experiment", "--dist", "uniform:a=0,b=4", "--estimator", "iqr", "--n", "3000", "--trials", "12",
        "--epsilon", "1", "--format", "json", "--summary", summary.to_str().unwrap(),
    ]);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    let ok = rows.iter().filter(|r| r["guarantee_ok"].as_bool().unwrap()).count();
    let rate = v["aggregate"]["guarantee_rate"].as_f64().unwrap();
    assert_eq!(rate, ok as f64 / rows.len() as f64);
    let mut errors: Vec<f64> = rows.iter().filter_map(|r| r["abs_error"].as_f64()).collect();
    errors.sort_by(f64::total_cmp);
    let mid = (errors[5] + errors[6]) / 2.0;
    assert!((v["aggregate"]["median_abs_error"].as_f64().unwrap() - mid).abs() < 1e-15);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(summary).unwrap()).unwrap();
    assert_eq!(written, v["aggregate"]);
}

#[test]
fn point_mass_radius_noiseless_all_ok() {
    let out = unidp(&[
        "experiment", "--dist", "point_mass:c=-17.5", "--estimator", "radius", "--n", "500", "--trials", "20",
        "--epsilon", "1", "--noiseless", "--bucket", "0.5",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut count = 0;
    for rec in reader.deserialize::<std::collections::HashMap<String, String>>() {
        assert_eq!(rec.unwrap()["guarantee_ok"], "true");
        count += 1;
    }
    assert_eq!(count, 20);
}

#[test]
fn mean_error_decreases_over_n_sweep() {
    let median = |n: &str| {
        let v = json(&unidp(&[
            "experiment", "--dist", "gaussian:mu=0,sigma=1", "--estimator", "mean", "--n", n, "--trials", "40",
            "--epsilon", "1", "--seed", "3", "--format", "json",
        ]));
        v["aggregate"]["median_abs_error"].as_f64().unwrap()
    };
    let (a, b) = (median("10000"), median("100000"));
    assert!(b < a, "{a} -> {b}");
}

#[test]
fn oracle_values() {
    let v = json(&unidp(&["oracle", "--dist", "gaussian:mu=0,sigma=1"]));
    assert!((v["iqr"].as_f64().unwrap() - 1.34898).abs() < 5e-6);
    let v = json(&unidp(&["oracle", "--dist", "uniform:a=0,b=1", "--phi", "1/16"]));
    assert!((v["phi"][0]["value"].as_f64().unwrap() - 0.0625).abs() < 1e-9);
    let v = json(&unidp(&["oracle", "--dist", "pareto:shape=1.5", "--moment", "2", "--tail", "1"]));
    assert!(v["variance"].is_null());
    assert!(v["central_moments"][0]["value"].is_null());
    assert!(v["mean"].as_f64().is_some());
    let v = json(&unidp(&["oracle", "--dist", "pareto:shape=0.5", "--tail", "1"]));
    assert!(v["mean"].is_null());
    assert!(v["tail_expectations"].as_array().unwrap().is_empty());
    let out = unidp(&["oracle", "--dist", "pareto:shape=-1"]);
    assert!(!out.status.success());
}

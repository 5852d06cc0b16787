//! End-to-end tests of the `lxdisc` binary: exit codes, the report
//! envelope, reproducibility, and the documented error objects.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lxdisc"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn discriminate_ball_bearings() {
    let path = data("ballbearings.csv");
    let out = run(&["discriminate", "--data", path.to_str().unwrap()]);
    let v = json_stdout(&out);
    assert_eq!(v["command"], "discriminate");
    assert_eq!(v["inputs"]["n"], 23);
    let t = v["results"]["T"].as_f64().unwrap();
    assert!((t - -1.7703).abs() < 1e-3, "T = {t}");
    assert_eq!(v["results"]["selected"], "xgamma");
    // The envelope always carries all four sections.
    for key in ["command", "inputs", "results", "diagnostics"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn fit_bank_reproduces_mles() {
    let path = data("bank_waiting_times.csv");
    let v = json_stdout(&run(&["fit", "--data", path.to_str().unwrap()]));
    let lambda = v["results"]["lindley"]["param_hat"].as_f64().unwrap();
    let theta = v["results"]["xgamma"]["param_hat"].as_f64().unwrap();
    assert!((lambda - 0.1866).abs() < 5e-4);
    assert!((theta - 0.2634).abs() < 5e-4);
}

#[test]
fn asymptotics_grid_matches_reference_rows() {
    let v = json_stdout(&run(&[
        "asymptotics",
        "--family",
        "lindley",
        "--grid",
        "0.45:1.38",
    ]));
    let rows = v["results"]["lindley"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let reference = [
        (0.45, 0.00794, 0.01582, 0.59983),
        (0.78, 0.00663, 0.01286, 1.00154),
        (1.38, 0.00559, 0.01087, 1.69784),
    ];
    for (lambda, am, av, tt) in reference {
        let row = rows
            .iter()
            .find(|r| (r["lambda"].as_f64().unwrap() - lambda).abs() < 1e-12)
            .unwrap();
        assert!((row["am_ld"].as_f64().unwrap() - am).abs() < 5e-4);
        assert!((row["av_ld"].as_f64().unwrap() - av).abs() < 5e-4);
        assert!((row["theta_tilde"].as_f64().unwrap() - tt).abs() < 5e-4);
    }
}

#[test]
fn sample_size_plan_reports_combined_n() {
    let v = json_stdout(&run(&[
        "sample-size",
        "--pstar",
        "0.90",
        "--dstar",
        "0.03",
        "--grid",
        "0.78:1.26",
    ]));
    assert_eq!(v["results"]["lindley_case"].as_array().unwrap().len(), 5);
    assert!(v["results"]["combined_n"].as_u64().is_some());
    // The diagnostics section documents the reference-table inconsistency.
    assert!(v["diagnostics"]["note"]
        .as_str()
        .unwrap()
        .contains("not consistent"));
}

#[test]
fn simulate_is_byte_identical_across_runs_and_csv_works() {
    let args = [
        "simulate",
        "--family",
        "xgamma",
        "--grid",
        "1.26:1.26",
        "--n",
        "20",
        "--reps",
        "500",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(
        a.stdout, b.stdout,
        "same config + seed must be byte-identical"
    );

    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let c = run(&csv_args);
    let text = String::from_utf8(c.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "failures,family,n,param,pcs_asymptotic,pcs_mc,std_error"
    );
    assert_eq!(lines.next().unwrap().split(',').count(), 7);
}

#[test]
fn json_round_trip_is_lossless() {
    let path = data("ballbearings.csv");
    let out = run(&[
        "gof",
        "--data",
        path.to_str().unwrap(),
        "--edges",
        "35,55,80,100",
    ]);
    let v = json_stdout(&out);
    let reparsed: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, reparsed);
    assert!((v["results"]["lindley"]["chi_square"].as_f64().unwrap() - 3.0435).abs() < 0.01);
}

#[test]
fn empty_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    std::fs::File::create(&path).unwrap();
    let out = run(&["fit", "--data", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is a JSON error object");
    assert_eq!(err["error"]["kind"], "input");
}

#[test]
fn malformed_line_is_reported_with_its_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "waiting_time\n1.5\n2.5\nnot-a-number\n3.5").unwrap();
    let out = run(&["discriminate", "--data", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "input");
    assert_eq!(err["error"]["line"], 4);

    let path2 = dir.path().join("negative.csv");
    std::fs::write(&path2, "1.0\n-2.0\n3.0\n").unwrap();
    let out = run(&["fit", "--data", path2.to_str().unwrap()]);
    assert!(!out.status.success());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["line"], 2);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["fit", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = data("ballbearings.csv");
    let out_path = dir.path().join("report.json");
    let out = run(&[
        "fit",
        "--data",
        path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(v["command"], "fit");
}

#[test]
fn bad_grid_spec_is_rejected() {
    let out = run(&["asymptotics", "--grid", "1.0:0.5"]);
    assert!(!out.status.success());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
}

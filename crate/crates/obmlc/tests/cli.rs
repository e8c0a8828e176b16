//! End-to-end checks of the `obmlc` binary: exit codes, file outputs,
//! reproducibility and the documented CSV schemas.

mod common;

use std::path::Path;
use std::process::{Command, Output};

fn obmlc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obmlc"))
        .args(args)
        .current_dir(dir)
        .env("OBMLC_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("read {name}: {e}"))
}

#[test]
fn unknown_scenario_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = obmlc(&["mi", "--scenario", "nosuch"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unknown scenario"), "stderr: {stderr}");
}

#[test]
fn bad_grid_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = obmlc(
        &["mi", "--scenario", "bpsk", "--snr-db", "10:1:0"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(obmlc(&["--help"], dir.path()).status.code(), Some(0));
    assert_eq!(obmlc(&["mi", "--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn unwritable_output_is_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    // a regular file where the output directory should go
    std::fs::write(dir.path().join("blocked"), "x").unwrap();
    let out = obmlc(
        &[
            "mi",
            "--scenario",
            "bpsk",
            "--snr-db",
            "0:10:10",
            "--out",
            "blocked/sub",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn gain2d_sweep_reproduces_figure_claims() {
    let dir = tempfile::tempdir().unwrap();
    let out = obmlc(
        &[
            "mi",
            "--scenario",
            "gain2d",
            "--snr-db",
            "-10:1:20",
            "--estimator",
            "gh",
            "--order",
            "64",
            "--svg",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let csv = read(dir.path(), "gain2d.csv");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "snr_db,mi_bits,std_err,scenario,estimator"
    );
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 31);
    for row in &rows {
        let mi: f64 = row[1].parse().unwrap();
        assert!(mi > 0.0, "gain2d not positive: {row:?}");
        assert_eq!(row[3], "gain2d");
        assert_eq!(row[4], "gh(order=64)");
    }
    let last: f64 = rows.last().unwrap()[1].parse().unwrap();
    assert!((last - 1.0).abs() < 5e-3, "endpoint {last}");

    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "gain2d.manifest.json")).unwrap();
    assert_eq!(manifest["scenario"], "gain2d");
    assert!(manifest["gaussian_method"].as_str().unwrap().contains("ChaCha8"));
    assert!(manifest["timestamp_unix"].as_u64().unwrap() > 0);

    let svg = read(dir.path(), "gain2d.svg");
    assert!(svg.starts_with("<svg"));
}

#[test]
fn monte_carlo_runs_are_bit_identical() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let args = [
        "mi",
        "--scenario",
        "bpsk",
        "--snr-db",
        "0:5:20",
        "--estimator",
        "mc",
        "--samples",
        "50000",
        "--seed",
        "7",
    ];
    assert_eq!(obmlc(&args, dir_a.path()).status.code(), Some(0));
    assert_eq!(obmlc(&args, dir_b.path()).status.code(), Some(0));
    assert_eq!(read(dir_a.path(), "bpsk.csv"), read(dir_b.path(), "bpsk.csv"));
    // standard errors are reported alongside the estimates
    let csv = read(dir_a.path(), "bpsk.csv");
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert!(row[2].parse::<f64>().unwrap() > 0.0);
}

#[test]
fn ber_outputs_schema_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "ber",
        "--snr-db",
        "0:3:9",
        "--symbols",
        "20000",
        "--seed",
        "11",
    ];
    assert_eq!(obmlc(&args, dir.path()).status.code(), Some(0));
    let csv1 = read(dir.path(), "ber.csv");
    assert_eq!(
        csv1.lines().next().unwrap(),
        "snr_db,n_symbols,ob_ber,cb_ber_genie,cb_pos_err_est,cb_val_err_est,seed"
    );
    assert_eq!(csv1.lines().count(), 5);
    for line in csv1.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[1], "20000");
        for f in &fields[2..6] {
            let rate: f64 = f.parse().unwrap();
            assert!((0.0..=1.0).contains(&rate));
        }
    }
    // the 0 dB row agrees with the Gaussian-CDF analytics within 3 binomial
    // standard errors
    let a = 2f64.sqrt();
    let row0: Vec<&str> = csv1.lines().nth(1).unwrap().split(',').collect();
    let ob_sim: f64 = row0[2].parse().unwrap();
    let p = common::ob_ber_analytic(a, 1.0);
    let se = (p * (1.0 - p) / 20_000.0).sqrt();
    assert!((ob_sim - p).abs() <= 3.0 * se, "ob {ob_sim} vs analytic {p}");
    let cb_sim: f64 = row0[3].parse().unwrap();
    let pc = common::cb_ber_genie_analytic(a, 1.0);
    let se_c = (pc * (1.0 - pc) / 10_000.0).sqrt();
    assert!((cb_sim - pc).abs() <= 3.0 * se_c, "cb {cb_sim} vs analytic {pc}");
    assert_eq!(obmlc(&args, dir.path()).status.code(), Some(0));
    assert_eq!(csv1, read(dir.path(), "ber.csv"));
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "ber.manifest.json")).unwrap();
    assert_eq!(manifest["seeds"][0], 11);
}

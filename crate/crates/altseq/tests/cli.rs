//! CLI surface: subcommands, formats, exit codes, and CSV-to-fit round trip.

use std::path::Path;
use std::process::{Command, Output};

fn altseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_command() {
    let out = altseq(&["eval", "--perm", "2,1,3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3");

    let out = altseq(&["eval", "--perm", "1"]);
    assert_eq!(stdout(&out).trim(), "1");

    let out = altseq(&["eval", "--perm", "1,3,2", "--convention", "ascent"]);
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn eval_rejects_non_permutation() {
    let out = altseq(&["eval", "--perm", "2,2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not a permutation"), "stderr: {err}");
}

#[test]
fn dist_command() {
    let out = altseq(&["dist", "--n", "4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["counts"], serde_json::json!(["1", "7", "11", "5"]));

    let out = altseq(&["dist", "--n", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["counts"], serde_json::json!(["1"]));

    let out = altseq(&["dist", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn moments_and_fit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("moments.csv");
    let out = altseq(&[
        "moments",
        "--n-range",
        "100:160:10",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("schema,n,mean,m_2,"));
    let n100 = text.lines().find(|l| l.contains(",100,")).unwrap();
    assert!(n100.starts_with("altseq.moments/1,100,"));

    let out = altseq(&[
        "fit",
        "--input",
        csv_path.to_str().unwrap(),
        "--moment",
        "alpha_4",
        "--orders",
        "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["prefactor_exponent"], "0");
    let comparisons = v["comparisons"].as_array().unwrap();
    assert_eq!(comparisons.len(), 2);
    // c0 close to 3 even on this shorter window.
    assert!(comparisons[0]["rel_err"].as_f64().unwrap() < 1e-4);
    assert!(comparisons[1]["rel_err"].as_f64().unwrap() < 1e-2);

    // Odd selector uses the m_2 column and carries the sqrt(n) prefactor.
    let out = altseq(&[
        "fit",
        "--input",
        csv_path.to_str().unwrap(),
        "--moment",
        "q_3",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["prefactor_exponent"], "-1/2");
}

#[test]
fn moments_row_values() {
    let out = altseq(&["moments", "--n-range", "3:4:1", "--max-moment", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row3: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let row4: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let idx = |name: &str| header.iter().position(|h| *h == name).unwrap();
    assert_eq!(row4[idx("mean")], "17/6");
    assert_eq!(row4[idx("m_2")], "23/36");
    assert_eq!(row3[idx("m_2")], "17/36");
    assert_eq!(row4[idx("q_3")], "-10/69");
}

#[test]
fn fit_rejects_missing_column() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("moments.csv");
    let out = altseq(&["moments", "--n-range", "20:26:1", "--max-moment", "4", "--out", csv_path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = altseq(&["fit", "--input", csv_path.to_str().unwrap(), "--moment", "alpha_12"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("alpha_12"), "stderr: {err}");
}

#[test]
fn sample_command_is_byte_deterministic() {
    let args = ["sample", "--n", "8", "--samples", "5000", "--seed", "7"];
    let a = altseq(&args);
    let b = altseq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let out = altseq(&["sample", "--n", "1", "--samples", "10", "--seed", "7"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["counts"], serde_json::json!([10]));
}

#[test]
fn sample_compare_exact_reports_small_tv() {
    let out = altseq(&[
        "sample", "--n", "8", "--samples", "200000", "--seed", "1", "--compare-exact",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let tv_line = text.lines().find(|l| l.starts_with("tv_distance:")).unwrap();
    let tv: f64 = tv_line.trim_start_matches("tv_distance:").trim().parse().unwrap();
    assert!(tv <= 0.01, "tv = {tv}");
}

#[test]
fn verify_small_budget_passes_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("report.json");
    let out = altseq(&[
        "verify",
        "--n-max",
        "12",
        "--fit-n-range",
        "30:40:5", // above n-max, so fits are skipped
        "--samples",
        "20000",
        "--out",
        json_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        stdout(&out),
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(v["all_ok"], true);
    assert!(v["records"].as_array().unwrap().len() >= 6);
}

#[test]
fn out_dir_env_var_resolves_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_altseq"))
        .args(["dist", "--n", "3", "--out", "table.json"])
        .env("ALTSEQ_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(Path::new(&dir.path().join("table.json")).exists());
}

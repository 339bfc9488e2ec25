//! End-to-end checks of the command-line contract: output shape,
//! determinism, and exit codes.

use std::process::{Command, Output};

fn bergman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bergman"))
        .args(args)
        .env_remove("BKL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 output")
}

#[test]
fn eval_disc_center_gives_unit_disc_kernel() {
    let o = bergman(&[
        "eval", "--family", "disc", "--zeta", "0", "--z", "-1,0", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,zeta_re,zeta_im,z_re,z_im,kernel,levi,method,h,rich_err,claim,target,pass"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "disc");
    let kernel: f64 = row[5].parse().unwrap();
    assert!((kernel - 1.0 / std::f64::consts::PI).abs() < 1e-14);
    // the closed-form parameter Hessian at the disc center equals 1
    let levi: f64 = row[6].parse().unwrap();
    assert!((levi - 1.0).abs() < 1e-6);
}

#[test]
fn eval_annulus_emits_fd_and_analytic_rows() {
    let o = bergman(&["eval", "--family", "annulus", "--zeta", "0.5", "--z", "0.7"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["method"], "fd");
    assert_eq!(rows[1]["method"], "analytic");
    assert_eq!(rows[0]["z"], serde_json::json!([0.7, 0.0]));
    assert!(rows[0]["kernel"].as_f64().unwrap() > 0.0);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "sweep",
        "--family",
        "annulus",
        "--zeta",
        "0.5",
        "--grid",
        "0.55:0.9:4,0:0.3:3",
    ];
    let a = bergman(&args);
    let b = bergman(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn probe_divergence_reports_inf_and_flag() {
    let o = bergman(&[
        "probe",
        "--family",
        "halfstrip",
        "--zeta",
        "1",
        "--z",
        "0.5,0.2",
        "--to",
        "1,0.2",
        "--target",
        "inf",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = &doc["rows"][0];
    assert_eq!(row["levi"], "inf");
    assert_eq!(row["diverged"], true);
    assert_eq!(row["pass"], true);
}

#[test]
fn probe_missed_target_exits_one() {
    let o = bergman(&[
        "probe",
        "--family",
        "halfstrip",
        "--zeta",
        "1",
        "--z",
        "0.5,0.2",
        "--to",
        "0,0",
        "--target",
        "7.5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["rows"][0]["pass"], false);
}

#[test]
fn reproduce_rejects_out_of_range_theorem() {
    let o = bergman(&["reproduce", "--theorem", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn reproduce_disc_passes() {
    let o = bergman(&["reproduce", "--theorem", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().skip(1) {
        assert!(line.ends_with(",true"), "row failed: {line}");
    }
}

#[test]
fn malformed_point_exits_two_without_output_file() {
    let dir = std::env::temp_dir().join("bergman-cli-test-no-partial");
    let _ = std::fs::remove_file(&dir);
    let o = bergman(&[
        "--out",
        dir.to_str().unwrap(),
        "eval",
        "--family",
        "annulus",
        "--zeta",
        "0.5",
        "--z",
        "abc",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!dir.exists(), "no partial output on usage errors");
}

#[test]
fn point_outside_domain_exits_two() {
    let o = bergman(&["eval", "--family", "annulus", "--zeta", "0.5", "--z", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_family_exits_two() {
    let o = bergman(&["levi", "--family", "torus", "--zeta", "0.5", "--z", "0.7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let path = std::env::temp_dir().join("bergman-cli-test-config.json");
    std::fs::write(&path, r#"{"format":"csv","h":5e-4}"#).unwrap();
    let o = bergman(&[
        "--config",
        path.to_str().unwrap(),
        "eval",
        "--family",
        "annulus",
        "--zeta",
        "0.5",
        "--z",
        "0.7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("family,"), "config selects csv");
    assert!(
        text.lines().nth(1).unwrap().contains(",0.0005,"),
        "config sets h"
    );
    let o = bergman(&[
        "--config",
        path.to_str().unwrap(),
        "--format",
        "json",
        "eval",
        "--family",
        "annulus",
        "--zeta",
        "0.5",
        "--z",
        "0.7",
    ]);
    assert!(stdout(&o).starts_with('{'), "flag overrides config");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn invalid_config_exits_two() {
    let path = std::env::temp_dir().join("bergman-cli-test-bad-config.json");
    std::fs::write(&path, "{not json").unwrap();
    let o = bergman(&[
        "--config",
        path.to_str().unwrap(),
        "eval",
        "--family",
        "annulus",
        "--zeta",
        "0.5",
        "--z",
        "0.7",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn out_flag_writes_file_and_keeps_stdout_quiet() {
    let path = std::env::temp_dir().join("bergman-cli-test-out.csv");
    let o = bergman(&[
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
        "eval",
        "--family",
        "disc",
        "--zeta",
        "0",
        "--z",
        "-1,0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("family,"));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn sweep_flags_inadmissible_points_instead_of_aborting() {
    // the grid straddles the inner boundary of the annulus
    let o = bergman(&[
        "sweep",
        "--family",
        "annulus",
        "--zeta",
        "0.5",
        "--grid",
        "0.3:0.9:4,0:0:1",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("skipped:"),
        "inadmissible rows flagged:\n{text}"
    );
    assert!(text.lines().skip(1).any(|l| l.ends_with(",true")));
}

#[test]
fn empty_grid_yields_empty_dataset() {
    let o = bergman(&[
        "sweep",
        "--family",
        "annulus",
        "--zeta",
        "0.5",
        "--grid",
        "0.6:0.6:0,0:0:0",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1, "header only");
}

#[test]
fn selftest_passes() {
    let o = bergman(&["selftest", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().count() >= 7);
    for line in text.lines().skip(1) {
        assert!(line.ends_with(",true"), "oracle row failed: {line}");
    }
}

#[test]
fn selftest_is_deterministic_under_a_fixed_seed() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_bergman"))
            .args(["selftest"])
            .env("BKL_SEED", seed)
            .output()
            .expect("binary runs")
    };
    let a = run("42");
    let b = run("42");
    assert_eq!(a.stdout, b.stdout);
}

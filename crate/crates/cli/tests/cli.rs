//! End-to-end checks of the command-line surface.

use std::fs;
use std::process::Command;

use tempfile::TempDir;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polytrack"))
}

fn gen_scenario(dir: &TempDir, name: &str, seed: u64) -> std::path::PathBuf {
    let path = dir.path().join(name);
    let output = binary()
        .args([
            "gen",
            "--frames",
            "3",
            "--participants",
            "1",
            "--words",
            "1",
            "--detections-per-class",
            "3",
            "--classes",
            "1",
            "--distractors",
            "1",
            "--seed",
            &seed.to_string(),
            "--out",
        ])
        .arg(&path)
        .output()
        .expect("binary runs");
    assert!(output.status.success(), "{output:?}");
    path
}

#[test]
fn gen_writes_deterministic_parseable_scenarios() {
    let dir = TempDir::new().unwrap();
    let a = gen_scenario(&dir, "a.json", 42);
    let b = gen_scenario(&dir, "b.json", 42);
    let text_a = fs::read_to_string(&a).unwrap();
    let text_b = fs::read_to_string(&b).unwrap();
    assert_eq!(text_a, text_b);
    let scenario = polytrack_cli::parse_scenario(&text_a).unwrap();
    assert_eq!(scenario.frame_count(), 3);
    assert_eq!(polytrack_cli::canonical_text(&scenario), text_a);
}

#[test]
fn track_solves_with_both_solvers() {
    let dir = TempDir::new().unwrap();
    let path = gen_scenario(&dir, "s.json", 7);

    let viterbi = binary()
        .args(["track"])
        .arg(&path)
        .args(["--solver", "viterbi"])
        .output()
        .unwrap();
    assert!(viterbi.status.success(), "{viterbi:?}");
    let exact: serde_json::Value = serde_json::from_slice(&viterbi.stdout).unwrap();
    assert_eq!(exact["solver"], "viterbi");
    let exact_value = exact["value"].as_f64().unwrap();

    let gt = binary()
        .args(["track"])
        .arg(&path)
        .args([
            "--solver", "gt", "--restarts", "8", "--iters", "50", "--refine", "100", "--seed",
            "1",
        ])
        .output()
        .unwrap();
    assert!(gt.status.success(), "{gt:?}");
    let local: serde_json::Value = serde_json::from_slice(&gt.stdout).unwrap();
    assert_eq!(local["solver"], "gt");
    let gt_value = local["value"].as_f64().unwrap();
    assert!(gt_value <= exact_value + 1e-9 * exact_value.abs().max(1.0));
    assert!(local["tracks"]["detection_ids"].is_array());
}

#[test]
fn track_reports_intractable_scenarios_on_stderr() {
    let dir = TempDir::new().unwrap();
    let path = gen_scenario(&dir, "s.json", 9);
    let output = binary()
        .args(["track"])
        .arg(&path)
        .args(["--solver", "viterbi", "--cap", "1"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("lattice"), "{err}");
    assert!(err.contains("comparisons"), "{err}");
}

#[test]
fn compare_runs_a_directory_and_reports_aggregates() {
    let scenario_dir = TempDir::new().unwrap();
    gen_scenario(&scenario_dir, "a.json", 1);
    gen_scenario(&scenario_dir, "b.json", 2);
    let out_dir = TempDir::new().unwrap();
    let report_path = out_dir.path().join("report.json");
    let output = binary()
        .args(["compare"])
        .arg(scenario_dir.path())
        .args([
            "--restarts", "6", "--iters", "40", "--refine", "100", "--seed", "3", "--out",
        ])
        .arg(&report_path)
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    let scenarios = report["scenarios"].as_array().unwrap();
    assert_eq!(scenarios.len(), 2);
    assert_eq!(scenarios[0]["name"], "a");
    assert_eq!(scenarios[1]["name"], "b");
    let bins = report["aggregate"]["bins"].as_array().unwrap();
    assert_eq!(bins.len(), 21);
    let total: u64 = bins.iter().map(|b| b.as_u64().unwrap()).sum();
    assert_eq!(total, report["aggregate"]["tractable_count"].as_u64().unwrap());
}

#[test]
fn compare_isolates_unparseable_scenarios() {
    let dir = TempDir::new().unwrap();
    gen_scenario(&dir, "good.json", 4);
    fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
    let output = binary()
        .args(["compare"])
        .arg(dir.path())
        .args(["--restarts", "4", "--iters", "30", "--refine", "50"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["scenarios"].as_array().unwrap().len(), 1);
    let errors = report["errors"].as_array().unwrap();
    assert_eq!(errors.len(), 1);
    assert_eq!(errors[0]["name"], "bad");
}

#[test]
fn cost_prints_the_exact_comparison_count() {
    let output = binary()
        .args([
            "cost",
            "--frames",
            "15",
            "--detections",
            "120",
            "--participants",
            "4",
            "--states",
            "3",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(
        String::from_utf8_lossy(&output.stdout).trim(),
        "5804752896000000000"
    );
}

#[test]
fn usage_errors_exit_with_code_two() {
    let output = binary().args(["track"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let output = binary().args(["frobnicate"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

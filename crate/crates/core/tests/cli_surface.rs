//! End-to-end checks of the `iontrap-ut` binary: exit codes, file output,
//! and format overrides.

use std::fs;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_iontrap-ut"))
}

fn write_config(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

const GOOD: &str = r#"{"eta": 0.2, "nu": 1.0, "omega": 0.5, "t_max": 5.0, "samples": 20, "n": 24}"#;

#[test]
fn evolve_writes_csv_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "run.json", GOOD);
    let out = dir.path().join("series.csv");
    let status = bin()
        .args(["evolve", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "t,p_excited,inversion,mean_n,norm_defect");
    assert_eq!(lines.len(), 21);
    // CSV runs carry their resolved config in a sidecar
    let sidecar = dir.path().join("series.csv.manifest.json");
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(sidecar).unwrap()).unwrap();
    assert_eq!(manifest["eta"], 0.2);
    assert_eq!(manifest["samples"], 20);
}

#[test]
fn format_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "run.json", GOOD);
    let out = dir.path().join("series.json");
    let status = bin()
        .args(["evolve", "--format", "json", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(parsed["run_manifest"]["eta"], 0.2);
    assert_eq!(parsed["t"].as_array().unwrap().len(), 20);
}

#[test]
fn config_error_exits_two_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "bad.json",
        r#"{"eta": -0.2, "nu": 1.0, "omega": 0.5, "t_max": 5.0}"#,
    );
    let out = dir.path().join("never.csv");
    let output = bin()
        .args(["evolve", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(!out.exists());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("eta"), "stderr was: {stderr}");
}

#[test]
fn detuned_config_is_rejected_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "detuned.json",
        r#"{"eta": 0.2, "nu": 1.0, "omega": 0.5, "t_max": 5.0, "delta": 0.1}"#,
    );
    let output = bin()
        .args(["spectrum", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("out-of-scope detuning"));
}

#[test]
fn validate_passes_on_the_reference_point() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "validate.json",
        r#"{"eta": 0.2, "nu": 1.0, "omega": 0.5, "t_max": 10.0, "samples": 50, "n": 60}"#,
    );
    let out = dir.path().join("report.csv");
    let status = bin()
        .args(["validate", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("conjugation_vs_closed_form"));
    assert!(text.contains("recursion_fidelity"));
    assert!(!text.contains("false"), "a check failed:\n{text}");
}

#[test]
fn spectrum_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "run.json", GOOD);
    let output = bin()
        .args(["spectrum", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.starts_with("branch,index,eigenvalue,residual,converged"));
    assert_eq!(text.trim_end().lines().count(), 1 + 48);
}

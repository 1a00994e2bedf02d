use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn smx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smx")).args(args).output().expect("smx should run")
}

fn write_config(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).expect("config should be written");
    path
}

fn run_to_file(config: &Path, command: &str, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![command, "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    smx(&args)
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn attractive_time_reversal_model_has_one_bound_pole() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, "c.json", r#"{"model": {"kind": "tr", "v0": -1.0, "a": 1.0, "b": 0.5}}"#);
    let out = dir.path().join("poles.csv");
    let o = run_to_file(&config, "poles", &out, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("Re q [p0],Im q [p0],Re E [|V0|],Im E [|V0|],class,"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 4);
    assert_eq!(rows.iter().filter(|r| r[4] == "bound").count(), 1);
}

#[test]
fn parity_classification_holds_only_identity_and_code_four() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, "c.json", r#"{"model": {"kind": "parity", "v0": 1.0, "a": 0.5, "b": 0.5}}"#);
    let out = dir.path().join("classify.csv");
    let o = run_to_file(&config, "classify", &out, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 8);
    let holding: Vec<&str> = rows.iter().filter(|r| r[3] == "true").map(|r| r[0].as_str()).collect();
    assert_eq!(holding, ["I", "IV"]);
}

#[test]
fn zero_potential_passes_every_suite_with_zero_residuals() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, "c.json", r#"{"model": {"kind": "tr", "v0": 0.0}}"#);
    let out = dir.path().join("verify.json");
    let o = run_to_file(&config, "verify", &out, &["--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 6);
    for r in records {
        assert_eq!(r["pass"], Value::Bool(true), "{r}");
    }
    for suite in ["generalized unitarity", "sum rule", "second eigenvalue", "eigenvalue relations"] {
        let r = records.iter().find(|r| r["suite"] == suite).unwrap();
        assert_eq!(r["max residual [1]"].as_f64(), Some(0.0), "{suite}");
    }
}

#[test]
fn json_carries_metadata_and_mirrors_csv_rows() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, "c.json", r#"{"grid": {"p_min": 0.1, "p_max": 2.0, "steps": 7}}"#);
    let csv = dir.path().join("e.csv");
    let json = dir.path().join("e.json");
    assert!(run_to_file(&config, "eigenvalues", &csv, &[]).status.success());
    assert!(run_to_file(&config, "eigenvalues", &json, &["--format", "json"]).status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let meta = &doc["metadata"];
    assert_eq!(meta["tool"], "smx");
    assert_eq!(meta["command"], "eigenvalues");
    assert_eq!(meta["model"]["kind"], "tr");
    assert_eq!(meta["units"]["momentum"], "p0");
    assert!(meta["version"].is_string());
    let rows = csv_rows(&std::fs::read_to_string(&csv).unwrap());
    let records = doc["records"].as_array().unwrap();
    assert_eq!(rows.len(), records.len());
    for (row, rec) in rows.iter().zip(records) {
        assert_eq!(row[1].parse::<f64>().unwrap(), rec["Re S1 [1]"].as_f64().unwrap());
    }
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        &dir,
        "c.json",
        r#"{"model": {"kind": "parity", "v0": 1.0, "a": 0.5, "b": 0.5},
            "sweep": {"parameter": "a", "start": 0.2, "stop": 1.0, "steps": 20},
            "pseudosym": {"codes": ["II", "V", "generic"], "dim": 6, "seeds": 5}}"#,
    );
    for command in ["amplitudes", "trace", "pseudosym", "verify"] {
        let files: Vec<Vec<u8>> = ["1", "4", "4"]
            .iter()
            .enumerate()
            .map(|(k, threads)| {
                let out = dir.path().join(format!("{command}{k}.csv"));
                let o = run_to_file(&config, command, &out, &["--threads", threads, "--seed", "11"]);
                assert!(o.status.success(), "{command}: {}", stderr(&o));
                std::fs::read(&out).unwrap()
            })
            .collect();
        assert_eq!(files[0], files[1], "{command}");
        assert_eq!(files[1], files[2], "{command}");
        assert!(!files[0].contains(&b'\r'));
    }
}

#[test]
fn seed_flag_overrides_file() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, "c.json", r#"{"seed": 100, "pseudosym": {"codes": ["IV"], "seeds": 2}}"#);
    let out = dir.path().join("p.csv");
    assert!(run_to_file(&config, "pseudosym", &out, &[]).status.success());
    let rows = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!((rows[0][2].as_str(), rows[1][2].as_str()), ("100", "101"));
    assert!(run_to_file(&config, "pseudosym", &out, &["--seed", "7"]).status.success());
    let rows = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows[0][2], "7");
    assert!(rows.iter().all(|r| r[3] == "true"));
}

#[test]
fn tol_flag_sets_the_symmetry_threshold_for_classify() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, "c.json", r#"{"model": {"kind": "parity", "v0": 1.0, "a": 0.5, "b": 0.5}}"#);
    let out = dir.path().join("c.csv");
    assert!(run_to_file(&config, "classify", &out, &["--tol", "10"]).status.success());
    let rows = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert!(rows.iter().all(|r| r[3] == "true"));
}

#[test]
fn configuration_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let cases = [
        r#"{"model": {"kind": "square-well"}}"#,
        r#"{"grid": {"steps": 1}}"#,
        r#"{"tolerances": {"pole": -1.0}}"#,
        r#"{"model": {"a": -1.0}}"#,
        r#"{"unknown": 1}"#,
        "not json",
    ];
    for (k, body) in cases.iter().enumerate() {
        let config = write_config(&dir, &format!("bad{k}.json"), body);
        let o = smx(&["poles", "--config", config.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{body}: {}", stderr(&o));
        assert!(stderr(&o).contains("config error"), "{body}");
    }
    let missing = dir.path().join("missing.json");
    assert_eq!(smx(&["poles", "--config", missing.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(smx(&["poles", "--threads", "0"]).status.code(), Some(1));
    assert_eq!(smx(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn numerical_failures_exit_with_two_and_name_the_operation() {
    let dir = TempDir::new().unwrap();
    let config =
        write_config(&dir, "c.json", r#"{"sweep": {"parameter": "a", "start": 1.0, "stop": -1.0, "steps": 5}}"#);
    let o = smx(&["trace", "--config", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("trace_trajectory"), "{}", stderr(&o));
}

#[test]
fn failing_verification_exits_with_two() {
    let o = smx(&["verify", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("mirror symmetry"));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.lines().any(|l| l.starts_with("mirror symmetry,") && l.ends_with(",false")));
}

#[test]
fn defaults_run_without_a_config_file() {
    let o = smx(&["eigenvalues"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 101);
}

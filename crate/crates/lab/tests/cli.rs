//! The binary: flag overrides, exit codes and configuration diagnostics.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locc-lab"))
        .args(args)
        .current_dir(cwd)
        .env_remove("LOCC_LAB_THREADS")
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"experiment": "comparability", "d": [3, 4], "k_max": 1, "n_pairs": 50, "seed": 9}"#,
    )
    .unwrap();
    let o = lab(
        &["comparability", "--config", "cfg.json", "--d", "5", "--k-max", "2", "--output-dir", "out"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("out");
    assert!(out.join("comparability_5d_k2.csv").exists());
    assert!(!out.join("comparability_3d_k1.csv").exists());
    let meta = fs::read_to_string(out.join("run_meta.json")).unwrap();
    assert!(meta.contains("\"seed\": 9"));
    assert!(meta.contains("\"n_pairs\": 50"));
}

#[test]
fn json_format_flag() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(
        &["theorem1-check", "--n-states", "20", "--format", "json", "--output-dir", "o"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("o/theorem1-check_3d_k1.json").exists());
}

#[test]
fn zero_count_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("bad.json"),
        "{\n  \"experiment\": \"entanglement-dist\",\n  \"n_states\": 0\n}\n",
    )
    .unwrap();
    let o = lab(&["entanglement-dist", "--config", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.json:3: n_states: must be positive"), "{}", stderr(&o));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn malformed_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), "{\n  \"k_max\": 3,\n  \"seed\": }\n").unwrap();
    let o = lab(&["catalysts", "--config", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.json:3:"), "{}", stderr(&o));
}

#[test]
fn missing_config_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(&["catalysts", "--config", "nope.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn qubits_rejected_for_comparability() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(&["comparability", "--d", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("d >= 3"), "{}", stderr(&o));
}

#[test]
fn tensor_guard_trips_at_validation() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(
        &["catalysts", "--d", "8", "--k-max", "5", "--d-chi", "8", "--n-pairs", "1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("k_max"), "{}", stderr(&o));
    assert!(!dir.path().join("out").exists());

    let o = lab(
        &[
            "catalysts", "--d", "8", "--k-max", "3", "--d-chi", "8", "--n-pairs", "2",
            "--n-candidates", "5",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn thread_env_var_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_locc-lab"))
        .args(["theorem1-check", "--n-states", "5"])
        .current_dir(dir.path())
        .env("LOCC_LAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("LOCC_LAB_THREADS"), "{}", stderr(&o));
}

#[test]
fn unknown_experiment_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(&["plots"], dir.path());
    assert!(!o.status.success());
}

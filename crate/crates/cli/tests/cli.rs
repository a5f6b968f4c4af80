use std::process::{Command, Output};

fn ckq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckq")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    ckq(args).status.code().expect("exit code")
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["verify", "--suite", "bogus"]), 2);
    assert_eq!(code(&["relations", "--n", "3", "--j", "1"]), 2);
    assert_eq!(code(&["relations", "--n", "4", "--j", "1,iota"]), 2);
    assert_eq!(code(&["relations", "--j", "1,x"]), 2);
    assert_eq!(code(&["relations", "--n", "6"]), 2);
    assert_eq!(code(&["relations", "--format", "yaml"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
}

#[test]
fn verify_passes() {
    let out = ckq(&["verify", "--n", "3", "--j", "iota,1", "--suite", "ybe,cubic,projector,antipode"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("antipode"));
    assert!(text.trim_end().ends_with("overall: PASS"));
}

#[test]
fn step_cap_gives_inconclusive() {
    assert_eq!(code(&["verify", "--suite", "antipode", "--step-cap", "0"]), 3);
}

#[test]
fn write_failure_exits_1() {
    assert_eq!(code(&["rmatrix", "--out", "/nonexistent-dir/x.json"]), 1);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rel.json");
    let p = path.to_str().unwrap();
    assert_eq!(code(&["relations", "--j", "iota,iota", "--format", "json", "--out", p]), 0);
    let stdout = ckq(&["relations", "--j", "iota,iota", "--emit", "json"]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    let v: serde_json::Value = serde_json::from_slice(&stdout).unwrap();
    assert_eq!(v["kind"], "relations");
}

#[test]
fn global_flags_after_subcommand_and_jobs_env() {
    let a = Command::new(env!("CARGO_BIN_EXE_ckq"))
        .args(["verify", "--suite", "ybe,classical", "--n", "4", "--seed", "9"])
        .env("CKQ_JOBS", "1")
        .output()
        .unwrap();
    let b = ckq(&["--jobs", "3", "verify", "--suite", "classical,ybe", "--n", "4", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn classical_and_dual_commands() {
    let out = ckq(&["classical", "--n", "5", "--j", "iota,1,1,iota", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let out = ckq(&["dual", "--j", "iota,iota", "--degree", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let pat = v["l_pattern"].as_array().unwrap();
    assert!(pat.iter().any(|e| e["l"] == "j_{1}^{-1}l_{12}+j_{2}^{-1}\\tilde{l}_{12}"));
    assert_eq!(v["tables"].as_array().unwrap().len(), 4);
}

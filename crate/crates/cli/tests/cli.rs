use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_curvegraph"));
    cmd.env_remove("CURVEGRAPH_SEED");
    cmd
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("curvegraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn figure1_pair_from_pipe() {
    let figure1 = stdout(&["gen", "figure1"], "");
    let json: Value = serde_json::from_str(&stdout(&["ollivier", "--pair", "x,y"], &figure1)).unwrap();
    assert_eq!(json["value"], "-1/1");
    assert_eq!(json["witness"]["w"], "-1/1");
    assert_eq!(json["witness"]["z"], "2/1");
    assert_eq!(json["witness"]["y'"], "-1/1");
}

#[test]
fn all_adjacent_pairs() {
    let figure1 = stdout(&["gen", "figure1"], "");
    let json: Value = serde_json::from_str(&stdout(&["ollivier", "--all-adjacent"], &figure1)).unwrap();
    let pairs = json.as_array().unwrap();
    assert_eq!(pairs.len(), 7);
    let xp = pairs.iter().find(|p| p["x"] == "x'" && p["y"] == "y'").unwrap();
    assert_eq!(xp["value"], "1/1");
}

#[test]
fn chain_is_fixed_point_of_bdc() {
    let chain = stdout(&["gen", "chain", "--n", "10"], "");
    assert_eq!(stdout(&["bdc", "--root", "0"], &chain), chain);
}

#[test]
fn mirror_against_chain_constant() {
    let chain = scratch("chain-n8.json", &stdout(&["gen", "chain", "--n", "8"], ""));
    let mirror = stdout(&["gen", "mirror", "--of", "chain", "--n", "8"], "");
    let args = ["compare", "--against", chain.to_str().unwrap(), "--root1", "0", "--root2", "0", "--outside", "1", "--constant"];
    let json: Value = serde_json::from_str(&stdout(&args, &mirror)).unwrap();
    assert_eq!(json["reverse"]["constant"]["C"], "2/1");
    assert_eq!(json["forward"]["constant"]["C"], "1/1");
    assert_eq!(json["reverse"]["stronger_average"]["holds"], false);
    assert_eq!(json["reverse"]["stronger_average"]["first_violation"]["radius"], 0);
    assert_eq!(json["reverse"]["outside_finite"]["holds"], true);
    assert_eq!(json["forward"]["volume"]["claim"], "volume-comparison");
}

#[test]
fn compare_positional_files_and_text() {
    let chain = scratch("c4.json", &stdout(&["gen", "chain", "--n", "4"], ""));
    let gprime = scratch("g4.json", &stdout(&["gen", "gprime", "--n", "4"], ""));
    let text = stdout(&["compare", chain.to_str().unwrap(), gprime.to_str().unwrap(), "--format", "text"], "");
    assert!(text.contains("stronger curvature growth: fails, r=1: k_- at 1 1/1 <= 1/2 fails"), "{text}");
}

#[test]
fn curvature_rows() {
    let figure1 = stdout(&["gen", "figure1"], "");
    let csv = stdout(&["curvature", "--root", "w"], &figure1);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("r,vertex,k_minus,k_plus,avg_minus,avg_plus,m_Sr"));
    assert!(csv.lines().any(|l| l == "2,y',1/1,1/1,1/1,1/1,4/1"), "{csv}");
    assert!(csv.lines().any(|l| l == "3,z,1/1,,1/1,,4/1"), "{csv}");
    let only = stdout(&["curvature", "--root", "w", "--radius", "1"], &figure1);
    assert_eq!(only.lines().count(), 3);
}

#[test]
fn sphere_curvature_columns() {
    let figure1 = stdout(&["gen", "figure1"], "");
    let csv = stdout(&["sphere-curv", "--root", "w"], &figure1);
    assert_eq!(csv, "r,k,k_assoc\n1,1/1,1/1\n2,-1/1,1/1\n3,1/1,\n");
}

#[test]
fn validate_round_trips() {
    let figure1 = stdout(&["gen", "figure1"], "");
    let once = stdout(&["validate"], &figure1);
    assert_eq!(stdout(&["validate", "-"], &once), once);
    let loose = r#"{"vertices":[{"id":1,"m":2},{"id":"0","m":"2/4"}],"edges":[{"u":0,"v":1,"b":3}]}"#;
    let canonical = stdout(&["validate"], loose);
    assert!(canonical.find("\"0\"").unwrap() < canonical.find("\"1\"").unwrap());
    assert!(canonical.contains("\"1/2\"") && canonical.contains("\"3/1\""));
}

#[test]
fn matching_chain_generation() {
    let json: Value = serde_json::from_str(&stdout(&["gen", "ollivier-match", "--seq", "1, 1/2, 1/4"], "")).unwrap();
    assert_eq!(json["m"], serde_json::json!(["1/1", "2/1", "4/1"]));
    let out = run(&["gen", "ollivier-match", "--seq", "1,1/2,1"], "");
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "SequenceNotNonincreasing");
}

#[test]
fn domain_errors_exit_one_with_json() {
    let figure1 = stdout(&["gen", "figure1"], "");
    let out = run(&["ollivier", "--pair", "x,nowhere"], &figure1);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "UnknownVertex");

    let bad = scratch("bad.json", "{\n  \"vertices\": [\n    {\"id\": \"a\", \"m\": \"-1\"}\n  ]\n}\n");
    let out = run(&["validate", bad.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "NonPositiveMeasure");

    let broken = scratch("broken.json", "{\n  \"vertices\": [\n    {\"id\": \"a\", \"m\": 1,}\n");
    let out = run(&["validate", broken.to_str().unwrap()], "");
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    let message = err["message"].as_str().unwrap();
    assert_eq!(err["error"], "Parse");
    assert!(message.contains("broken.json") && message.contains("line 3"), "{message}");

    let out = run(&["validate", "/nonexistent/graph.json"], "");
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "Io");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["curvature", "--root", "w", "--bogus"][..],
        &["ollivier"][..],
        &["gen", "figure1", "--n", "3"][..],
        &["gen", "chain"][..],
        &["compare", "--outside", "1"][..],
        &["compare", "--constant", "a.json", "b.json"][..],
        &["verify", "--instances", "0"][..],
    ] {
        let out = run(args, "");
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn horizon_errors() {
    let figure1 = stdout(&["gen", "figure1"], "");
    let out = run(&["curvature", "--root", "w", "--radius", "4"], &figure1);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "HorizonExceeded");
}

#[test]
fn seed_from_environment() {
    let out = bin().args(["verify", "--instances", "3"]).env("CURVEGRAPH_SEED", "11").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("verify seed=11 instances=3\n"));
}

#[test]
fn verify_full_run_is_deterministic() {
    let first = run(&["verify", "--seed", "7", "--instances", "100"], "");
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stdout));
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    assert!(text.contains("summary: 13/13 passed"));
    assert!(text.contains("[RECORDED] model-sphere-equality"));
    let second = run(&["verify", "--seed", "7", "--instances", "100"], "");
    assert_eq!(first.stdout, second.stdout);
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corepoint")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("corepoint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn core_check_exit_codes() {
    let yes = run(&["corepoint", "check", "C5", "1,1,1,0,-2"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("core point"));
    let no = run(&["corepoint", "check", "S3", "2,1,0"]);
    assert_eq!(no.status.code(), Some(1));
    let cycles = run(&["corepoint", "check", "(1,2,3,4,5)", "1,0,0,0,0"]);
    assert_eq!(cycles.status.code(), Some(0));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["corepoint", "check", "C5", "1,x"]).status.code(), Some(2));
    assert_eq!(run(&["corepoint", "check", "C5", "1,0"]).status.code(), Some(2));
    assert_eq!(run(&["corepoint", "check", "Q5", "1,0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    let bad = scratch("bad.ilp", "dim 2\nineq 1 <= 0\n");
    let o = run(&["ilp", "check-sym", bad.to_str().unwrap(), "C2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn enumerate_writes_json() {
    let o = run(&["corepoint", "enumerate", "C5", "--layer", "1", "--c", "48/5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
    let o = run(&["corepoint", "enumerate", "C5", "--layer", "1", "--subgroup-filter", "D5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
}

#[test]
fn budget_exit_code() {
    let inst = scratch("u3.ilp", "");
    let hard = run(&["ilp", "generate-hard", "C5", "1,1,1,0,-2"]);
    assert_eq!(hard.status.code(), Some(0));
    std::fs::write(&inst, stdout(&hard)).unwrap();
    let m = scratch("u3.json", "[[-7,6,-2,-2,6],[6,-7,6,-2,-2],[-2,6,-7,6,-2],[-2,-2,6,-7,6],[6,-2,-2,6,-7]]");
    let t = run(&["ilp", "transform", inst.to_str().unwrap(), "--matrix", m.to_str().unwrap()]);
    assert_eq!(t.status.code(), Some(0), "{}", String::from_utf8_lossy(&t.stderr));
    let scrambled = scratch("scrambled.ilp", &stdout(&t));
    let o = run(&["ilp", "improve", scrambled.to_str().unwrap(), "C5", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["ilp", "improve", scrambled.to_str().unwrap(), "C5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn ilp_pipeline() {
    let hard = run(&["ilp", "generate-hard", "C5", "1,1,1,0,-2"]);
    let inst = scratch("hard.ilp", &stdout(&hard));
    let sym = run(&["ilp", "check-sym", inst.to_str().unwrap(), "C5"]);
    assert_eq!(sym.status.code(), Some(0));
    let solve = run(&["ilp", "brute-solve", inst.to_str().unwrap()]);
    assert_eq!(solve.status.code(), Some(1));
    assert!(stdout(&solve).contains("infeasible"));

    let loose = run(&["ilp", "generate-hard", "C5", "1,1,1,0,-2", "--shrink", "0"]);
    let loose = scratch("loose.ilp", &stdout(&loose));
    let solve = run(&["ilp", "brute-solve", loose.to_str().unwrap(), "--box", "-2:2,-2:2,-2:2,-2:2,-2:2"]);
    assert_eq!(solve.status.code(), Some(0));

    let not_core = run(&["ilp", "generate-hard", "C5", "2,0,0,0,-2"]);
    assert_eq!(not_core.status.code(), Some(1));
}

#[test]
fn analyze_and_reduce() {
    let o = run(&["analyze", "C7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["qi"], serde_json::json!(true));
    assert_eq!(v["normalizer_finite"], serde_json::json!(false));
    let o = run(&["analyze", "C6"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["normalizer_finite"], serde_json::json!(true));

    let o = run(&["reduce", "C5", "13,0,8,8,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["point"], serde_json::json!([1, 0, 0, 0, 0]));
}

use std::io::Write;
use std::process::{Command, Output};

fn lieherm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieherm")).args(args).output().unwrap()
}

fn config(text: &str) -> tempfile_path::Path {
    tempfile_path::Path::new(text)
}

mod tempfile_path {
    use super::*;

    /// Config file removed on drop.
    pub struct Path(pub std::path::PathBuf);

    impl Path {
        pub fn new(text: &str) -> Self {
            use std::sync::atomic::{AtomicUsize, Ordering};
            static N: AtomicUsize = AtomicUsize::new(0);
            let p = std::env::temp_dir()
                .join(format!("lieherm-test-{}-{}.json", std::process::id(), N.fetch_add(1, Ordering::SeqCst)));
            std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
            Path(p)
        }

        pub fn arg(&self) -> &str {
            self.0.to_str().unwrap()
        }
    }

    impl Drop for Path {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }
}

#[test]
fn passing_check_exits_zero() {
    let out = lieherm(&["check", "catalog:canonical-sl2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS canonical-sl2"));
}

#[test]
fn failed_expectation_exits_one() {
    let f = config(r#"{"type":"m4","a1":-3,"a2":1,"expect":{"bas":true}}"#);
    let out = lieherm(&["check", f.arg()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("mismatch: bas: expected true, got false"));
}

#[test]
fn malformed_rational_exits_two() {
    let f = config(r#"{"type":"flag","cartan":"A2","metric":["1","1/0","2"]}"#);
    let out = lieherm(&["check", f.arg()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config error"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lieherm(&["theorem", "nope"]).status.code(), Some(2));
    assert_eq!(lieherm(&["check", "catalog:nope"]).status.code(), Some(2));
    assert_eq!(lieherm(&["check", "/nonexistent/config.json"]).status.code(), Some(2));
    assert_eq!(lieherm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lieherm(&["--tolerance", "-1", "check", "catalog:m4"]).status.code(), Some(2));
    let f = config(r#"{"type":"m4","a1":-3,"a2":1,"expect":{"no_such_flag":true}}"#);
    assert_eq!(lieherm(&["check", f.arg()]).status.code(), Some(2));
}

#[test]
fn text_and_json_verdicts_agree() {
    let text = lieherm(&["check", "catalog:all"]);
    let json = lieherm(&["--format", "json", "check", "catalog:all"]);
    assert_eq!(text.status.code(), json.status.code());
    let from_text = lieherm_cli::render::parse_text_verdicts(&String::from_utf8_lossy(&text.stdout));
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let from_json: Vec<(String, bool)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["name"].as_str().unwrap().to_string(), e["passed"].as_bool().unwrap()))
        .collect();
    assert_eq!(from_text, from_json);
    assert_eq!(from_json.len(), lieherm_cli::catalog::catalog().len());
}

#[test]
fn solve_reports_families() {
    let f = config(r#"{"name":"su3","type":"flag","cartan":"A2"}"#);
    let out = lieherm(&["--format", "json", "--samples", "500", "solve", f.arg()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["entries"][0]["flags"]["complete_branching"], serde_json::Value::Bool(true));
}

#[test]
fn solver_cap_is_a_warning_not_an_error() {
    let f = config(r#"{"type":"flag","cartan":"A3"}"#);
    let out = lieherm(&["--solver-cap", "0", "--samples", "200", "solve", f.arg()]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("warning:"));
}

#[test]
fn experiment_runs() {
    let out = lieherm(&["experiment", "b-isometry", "--cartan", "A1", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use serde_json::Value;

fn montyhall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_montyhall"))
        .args(args)
        .env_remove("MONTYHALL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = montyhall(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Compares against `tests/golden/<name>`; `BLESS=1` rewrites the file.
fn golden(name: &str, args: &[&str]) {
    let actual = stdout(args);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, &actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output of {args:?} drifted from {name}");
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("montyhall-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn matrix_golden() {
    golden("matrix.txt", &["matrix"]);
    let out = stdout(&["matrix"]);
    assert_eq!(out.lines().count(), 13);
    assert_eq!(out.lines().next().unwrap().split_whitespace().skip(1).collect::<Vec<_>>(), [
        "12", "13", "21", "23", "31", "32"
    ]);
}

#[test]
fn reduce_golden() {
    golden("matrix-reduce.txt", &["matrix", "--reduce"]);
    assert_eq!(stdout(&["dominance"]), stdout(&["matrix", "--reduce"]));
    let out = stdout(&["matrix", "--reduce"]);
    let last: Vec<Vec<&str>> = out
        .lines()
        .rev()
        .take(3)
        .map(|l| l.split_whitespace().skip(1).collect())
        .collect();
    assert_eq!(last, [["1", "1", "0"], ["1", "0", "1"], ["0", "1", "1"]]);
}

#[test]
fn zerosum_golden() {
    golden("solve-zerosum.txt", &["solve", "zerosum"]);
    let out = stdout(&["solve", "zerosum"]);
    assert!(out.starts_with("value = 2/3 (≈ 0.6667)\n"));
    assert!(out.contains("Conie minimax: 1ss 1/3, 2ss 1/3, 3ss 1/3\n"));
}

#[test]
fn bayes_goldens() {
    golden(
        "solve-bayes-crawl.txt",
        &["solve", "bayes", "--pi", "1/3,1/3,1/3", "--lambda", "1,1,1"],
    );
    golden(
        "solve-bayes-skewed.txt",
        &["solve", "bayes", "--pi", "1/2,3/10,1/5", "--lambda", "1/2,1/2,1/2"],
    );
    let crawl = stdout(&["solve", "bayes", "--pi", "1/3,1/3,1/3", "--lambda", "1,1,1"]);
    assert!(crawl.contains("best responses = {1ss,1ms,2ss,2ms,3ss,3ms}\n"));
    let skewed = stdout(&["solve", "bayes", "--pi", "0.5,0.3,0.2", "--lambda", "1/2,1/2,1/2"]);
    assert!(skewed.contains("value = 4/5 (≈ 0.8000)\n"));
    assert!(skewed.contains("best responses = {3ss}\n"));
    assert_eq!(stdout(&["solve", "bayes", "--host", "crawl"]), crawl);
}

#[test]
fn structured_outputs_are_exact() {
    let v: Value = serde_json::from_str(&stdout(&["solve", "zerosum", "--format", "structured"])).unwrap();
    assert_eq!(v["value"]["exact"], "2/3");
    let v: Value = serde_json::from_str(&stdout(&[
        "solve", "bayes", "--pi", "1/2,3/10,1/5", "--lambda", "1/2,1/2,1/2", "--format", "structured",
    ]))
    .unwrap();
    assert_eq!(v["value"]["exact"], "4/5");
    assert_eq!(v["best_responses"], serde_json::json!(["3ss"]));
    let v: Value = serde_json::from_str(&stdout(&["matrix", "--reduce", "--format", "structured"])).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 12);
    assert_eq!(v["reduced"]["columns"], serde_json::json!(["12", "21", "32"]));
}

#[test]
fn structured_matrix_reimports_equal() {
    let json = stdout(&["matrix", "--format", "structured"]);
    let path = temp_file("matrix.json", &json);
    let again = stdout(&["matrix", "--format", "structured", "--import", path.to_str().unwrap()]);
    assert_eq!(again, json);
    let table = temp_file("matrix.txt", &stdout(&["matrix"]));
    assert_eq!(stdout(&["matrix", "--import", table.to_str().unwrap()]), stdout(&["matrix"]));
    let reduced = stdout(&["matrix", "--reduce", "--import", path.to_str().unwrap()]);
    assert_eq!(reduced, stdout(&["matrix", "--reduce"]));
}

#[test]
fn nash_reports() {
    let v: Value = serde_json::from_str(&stdout(&[
        "solve", "nash", "--h", "sympathetic", "--fully-supported-only", "--format", "structured",
    ]))
    .unwrap();
    assert!(v.get("equilibria").is_none());
    let families = v["fully_supported"].as_array().unwrap();
    assert!(!families.is_empty());
    let grid: Vec<Vec<&str>> = vec![vec!["0"; 6]; 12];
    let path = temp_file("zero.json", &serde_json::to_string(&grid).unwrap());
    let out = stdout(&["solve", "nash", "--h-file", path.to_str().unwrap(), "--fully-supported-only"]);
    assert!(out.contains("families with fully supported Q"));
}

#[test]
fn malformed_h_file_reports_position() {
    let path = temp_file("bad.json", "[[\"1\", \"0\"],\n  [oops]]");
    let out = montyhall(&["solve", "nash", "--h-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 4"), "{err}");
}

#[test]
fn validation_and_usage_errors_exit_2() {
    for args in [
        &["solve", "bayes", "--pi", "1/2,1/2,1/2", "--lambda", "1,1,1"][..],
        &["solve", "bayes", "--pi", "1/2,1/2", "--lambda", "1,1,1"],
        &["matrix", "--format", "fancy"],
        &["matrix", "--frobnicate"],
        &["simulate", "--host", "crawl", "--conie", "1ss", "--rounds", "0", "--seed", "1"],
        &["simulate", "--host", "crawl", "--conie", "9zz", "--rounds", "5"],
        &["solve", "nash", "--h", "friendly"],
        &["serve", "--port", "0"],
    ] {
        assert_eq!(montyhall(args).status.code(), Some(2), "{args:?}");
    }
    let missing = montyhall(&["matrix", "--import", "/nonexistent/matrix.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn simulate_is_deterministic_and_reports_the_exact_payoff() {
    let args = [
        "simulate", "--host", "crawl", "--conie", "1ss", "--rounds", "100000", "--seed", "7", "--format", "structured",
    ];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["exact"]["exact"], "2/3");
    assert!(v["deviation_in_standard_errors"].as_f64().unwrap().abs() < 4.0);
    let table = ["simulate", "--host", "1/2,3/10,1/5;1/2,1/2,1/2", "--conie", "uniform", "--rounds", "5000"];
    assert_eq!(stdout(&table), stdout(&table));
}

#[test]
fn seed_comes_from_the_environment_unless_flagged() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_montyhall"));
        cmd.args(["simulate", "--host", "crawl", "--conie", "uniform", "--rounds", "50", "--format", "structured"]);
        cmd.env_remove("MONTYHALL_SEED");
        if let Some(seed) = env {
            cmd.env("MONTYHALL_SEED", seed);
        }
        if let Some(seed) = flag {
            cmd.args(["--seed", seed]);
        }
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["seed"].as_u64().unwrap()
    };
    assert_eq!(run(Some("41"), None), 41);
    assert_eq!(run(Some("41"), Some("5")), 5);
}

#[test]
fn one_round_pure_profile() {
    let v: Value = serde_json::from_str(&stdout(&[
        "simulate", "--host", "12", "--conie", "1ss", "--rounds", "1", "--seed", "3", "--format", "structured",
    ]))
    .unwrap();
    assert_eq!(v["wins"], 0);
    assert_eq!(v["exact"]["exact"], "0");
    let v: Value = serde_json::from_str(&stdout(&[
        "simulate", "--host", "21", "--conie", "1ss", "--rounds", "1", "--format", "structured",
    ]))
    .unwrap();
    assert_eq!(v["wins"], 1);
}

fn free_port() -> u16 {
    TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port()
}

fn http_get(port: u16, path: &str) -> Option<String> {
    let mut stream = TcpStream::connect(("127.0.0.1", port)).ok()?;
    stream.set_read_timeout(Some(Duration::from_secs(5))).ok()?;
    write!(stream, "GET {path} HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n").ok()?;
    let mut response = String::new();
    stream.read_to_string(&mut response).ok()?;
    Some(response)
}

#[test]
fn serve_answers_health_and_refuses_a_taken_port() {
    let port = free_port();
    let mut child = Command::new(env!("CARGO_BIN_EXE_montyhall"))
        .args(["serve", "--port", &port.to_string()])
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let deadline = Instant::now() + Duration::from_secs(20);
    let response = loop {
        if let Some(r) = http_get(port, "/health") {
            break r;
        }
        assert!(Instant::now() < deadline, "server never came up");
        std::thread::sleep(Duration::from_millis(50));
    };
    assert!(response.starts_with("HTTP/1.1 200"), "{response}");
    assert!(response.contains(r#"{"status":"ok"}"#));

    let second = montyhall(&["serve", "--port", &port.to_string()]);
    assert_eq!(second.status.code(), Some(1));

    child.kill().unwrap();
    child.wait().unwrap();
}

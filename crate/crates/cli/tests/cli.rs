use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn zerohecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerohecke")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn module_file(args: &[&str]) -> tempfile::NamedTempFile {
    let out = zerohecke(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(&out.stdout).unwrap();
    f
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&zerohecke(&["bogus"])), 3);
    assert_eq!(code(&zerohecke(&["--field", "Fp:4", "group"])), 3);
    assert_eq!(code(&zerohecke(&["--group", "E9", "group"])), 3);
    assert_eq!(code(&zerohecke(&["verify", "no-such-suite"])), 3);
    assert_eq!(code(&zerohecke(&["interval", "--lo", "4321", "--hi", "1234"])), 3);
    assert_eq!(code(&zerohecke(&["cover", "--module", "/nonexistent.json"])), 3);
    assert_eq!(code(&zerohecke(&["--help"])), 0);
}

#[test]
fn lemma_on_i2_7_passes() {
    let out = zerohecke(&["verify", "lemma-w0", "--group", "I2:7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("12 passed, 0 failed, 0 undetermined"));
}

#[test]
fn suite_flag_selects_suite() {
    let out = zerohecke(&["--suite", "lemma-w0", "--group", "I2:5", "--output", "json", "verify"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["suite"], "lemma-w0");
}

#[test]
fn corruption_fails_the_run() {
    let out = zerohecke(&["verify", "relations", "--group", "A2", "--inject-corruption"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL relations corrupted P{}"));
}

#[test]
fn verify_all_on_a3_is_clean_and_deterministic() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_zerohecke"))
            .args(["verify", "all", "--group", "A3", "--seed", "4", "--output", "json"])
            .env("ZEROHECKE_THREADS", threads)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("4"));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["summary"]["fail"], 0);
    assert_eq!(r["summary"]["undetermined"], 0);
}

#[test]
fn module_digraph_golden() {
    let out = zerohecke(&["export", "module-digraph", "--lo", "1324", "--hi", "1432"]);
    assert_eq!(code(&out), 0);
    let want = r#"digraph module {
  rankdir=TB;
  node [shape=plaintext];
  "1324";
  "1423";
  "1432";
  "0" [shape=circle];
  "1324" -> "0" [label="pi_1"];
  "1324" -> "1324" [label="pi_2"];
  "1324" -> "1423" [label="pi_3"];
  "1423" -> "0" [label="pi_1"];
  "1423" -> "1432" [label="pi_2"];
  "1423" -> "1423" [label="pi_3"];
  "1432" -> "0" [label="pi_1"];
  "1432" -> "1432" [label="pi_2"];
  "1432" -> "1432" [label="pi_3"];
}
"#;
    assert_eq!(stdout(&out), want);
}

#[test]
fn twist_square_golden() {
    let out = zerohecke(&["export", "twist-square", "--i", "{1}"]);
    assert_eq!(code(&out), 0);
    let want = r#"digraph twists {
  node [shape=box];
  "P{1}" -> "P{3}" [label="phi"];
  "P{1}" -> "P{1,2}" [label="theta_hat"];
  "P{1}" -> "P{2,3}" [label="omega_hat"];
}
"#;
    assert_eq!(stdout(&out), want);
}

#[test]
fn descent_classes_partition_a3() {
    let out = zerohecke(&["export", "descent-classes", "--output", "json"]);
    let v = json(&out);
    let classes = v.as_array().unwrap();
    assert_eq!(classes.len(), 8);
    let sizes: Vec<u64> = classes.iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, [1, 3, 5, 3, 3, 5, 3, 1]);
    let dot = stdout(&zerohecke(&["export", "descent-classes"]));
    assert_eq!(dot.matches("subgraph cluster_").count(), 8);
    assert_eq!(dot.matches("fillcolor").count(), 24);
}

#[test]
fn interval_hasse_is_byte_stable() {
    let args = ["export", "interval-hasse", "--group", "B3", "--lo", "e", "--hi", "[-1,-2,-3]"];
    let a = zerohecke(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, zerohecke(&args).stdout);
    let v = json(&zerohecke(&["export", "interval-hasse", "--group", "B3", "--lo", "s1", "--hi", "s2s1", "--output", "json"]));
    assert!(v.is_object());
}

#[test]
fn cover_and_hull_certificates() {
    let m = module_file(&["module", "--kind", "interval", "--lo", "2134", "--hi", "4132"]);
    let path = m.path().to_str().unwrap();
    let out = zerohecke(&["cover", "--module", path]);
    assert_eq!(code(&out), 0);
    let c = json(&out);
    assert_eq!(c["certified"], true);
    let cover: Vec<(Value, Value)> = c["cover"].as_array().unwrap().iter().map(|x| (x["I"].clone(), x["mult"].clone())).collect();
    assert_eq!(cover, vec![(serde_json::json!([1]), serde_json::json!(1)), (serde_json::json!([1, 3]), serde_json::json!(1))]);
    let out = zerohecke(&["hull", "--module", path]);
    assert_eq!(code(&out), 0);
    let h = json(&out);
    assert_eq!(h["certified"], true);
    assert!(h["hull"].is_array());
}

#[test]
fn twist_reads_stdin_and_keeps_the_field() {
    let m = module_file(&["--field", "Fp:101", "module", "--kind", "projective", "--i", "{1}", "--j", "{1,3}"]);
    let text = std::fs::read(m.path()).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_zerohecke"))
        .args(["twist", "--tag", "omega_hat", "--module", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&text).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    let t = json(&out);
    let src: Value = serde_json::from_slice(&text).unwrap();
    assert_eq!(t["dim"], src["dim"]);
    assert_eq!(t["field"], src["field"]);
}

#[test]
fn qsym_build_and_verify() {
    let out = zerohecke(&["qsym", "build", "--family", "W", "--alpha", "2,2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["dim"], 3);
    let out = zerohecke(&["qsym", "verify", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("8 passed, 0 failed, 0 undetermined"));
    assert_eq!(code(&zerohecke(&["qsym", "verify", "--n", "9"])), 3);
}

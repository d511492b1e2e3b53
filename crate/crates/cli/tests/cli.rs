use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn covex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covex")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn matrix(rows: &[&[i64]]) -> String {
    let entries: Vec<String> = rows
        .iter()
        .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!(r#"{{"rows":{},"cols":{},"entries":[{}]}}"#, rows.len(), rows[0].len(), entries.join(","))
}

#[test]
fn tau_and_kl() {
    let out = covex(&["tau", "2143"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["tau"], "12563478");
    assert_eq!(doc["conditions"][0]["t"], 4);

    let out = covex(&["kl", "1234", "3412"]);
    let doc = json_of(&out);
    assert_eq!(doc["text"], "1 + q");
    assert_eq!(doc["coeffs"], serde_json::json!([1, 1]));

    let out = covex(&["kl", "covex-check", "4231"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["rows"].as_array().unwrap().len() > 1);
}

#[test]
fn matrix_membership_reports_violation() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.json", &matrix(&[&[1, 5], &[0, 2]]));
    let bad = write(&dir, "bad.json", &matrix(&[&[1, 5], &[3, 2]]));
    let out = covex(&["member", "matrix", good.to_str().unwrap(), "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["member"], true);
    let out = covex(&["member", "matrix", bad.to_str().unwrap(), "12"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["member"], false);
    assert_eq!(doc["violation"]["i"], 2);
    assert_eq!(doc["violation"]["j"], 1);
}

#[test]
fn grass_membership_example() {
    let dir = TempDir::new().unwrap();
    let v = write(&dir, "v.json", &matrix(&[&[0, 0], &[0, 0], &[1, 0], &[0, 1]]));
    let out = covex(&["member", "grass", v.to_str().unwrap(), "1,3"]);
    assert_eq!(json_of(&out)["member"], false);
    let out = covex(&["member", "grass", v.to_str().unwrap(), "34"]);
    assert_eq!(json_of(&out)["member"], true);
}

#[test]
fn invariant_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let flag = write(&dir, "flag.json", &matrix(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 1]]));
    let out = covex(&["member", "flag", flag.to_str().unwrap(), "123"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dim F_2"));

    let text = format!(r#"{{"flag":{},"z":{}}}"#, matrix(&[&[1, 0], &[0, 1]]), matrix(&[&[1, 0], &[0, 0]]));
    let sf = write(&dir, "sf.json", &text);
    let out = covex(&["conormal", "member", "flag", sf.to_str().unwrap(), "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("F_1"));

    let out = covex(&["tau", "3412"]);
    assert_eq!(out.status.code(), Some(2));
    let out = covex(&["tau", "3312"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conormal_member_and_fiber() {
    let dir = TempDir::new().unwrap();
    let id = matrix(&[&[1, 0], &[0, 1]]);
    let yes = write(&dir, "yes.json", &format!(r#"{{"x":{id},"y":{}}}"#, matrix(&[&[0, 1], &[0, 0]])));
    let no = write(&dir, "no.json", &format!(r#"{{"x":{id},"y":{}}}"#, matrix(&[&[0, 0], &[0, 1]])));
    let out = covex(&["conormal", "member", "matrix", yes.to_str().unwrap(), "12"]);
    assert_eq!(json_of(&out)["member"], true);
    let out = covex(&["conormal", "member", "matrix", no.to_str().unwrap(), "12"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["member"], false);
    let failing: Vec<&Value> = doc["pairs"].as_array().unwrap().iter().filter(|p| p["rank"].as_i64() > p["bound"].as_i64()).collect();
    assert_eq!((failing[0]["i"].as_i64(), failing[0]["j"].as_i64()), (Some(2), Some(1)));

    let w = matrix(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
    let x = write(&dir, "w.json", &w);
    let out = covex(&["--field", "Q", "conormal", "fiber", "matrix", x.to_str().unwrap(), "2143"]);
    assert_eq!(json_of(&out)["dim"], 4);
    let out = covex(&["conormal", "fiber", "flag", x.to_str().unwrap(), "2143"]);
    assert_eq!(json_of(&out)["dim"], 6 - 2);
}

#[test]
fn rational_entries_and_embedding() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", r#"{"rows":2,"cols":2,"entries":[["1/2",0],[0,"-3/4"]]}"#);
    let out = covex(&["--field=Q", "embed", "12", x.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["member"], true);
    assert_eq!(doc["matrix_member"], true);
    assert_eq!(doc["basis"]["rows"], 4);
    let out = covex(&["embed", "12", x.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "\"a/b\" parses over F_p as well");
}

#[test]
fn schubert_commands() {
    let out = covex(&["schubert", "double", "21"]);
    assert_eq!(json_of(&out)["text"], "x1 - y1");
    let out = covex(&["schubert", "verify", "231"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["matched"], true);
    let out = covex(&["schubert", "localize", "21"]);
    assert_eq!(json_of(&out)["localized"]["text"], "1");
}

#[test]
fn verify_is_deterministic_and_validates_config() {
    let args = ["--seed", "7", "--nmax", "3", "--trials", "5", "verify", "embed-thm"];
    let a = covex(&args);
    let b = covex(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines = String::from_utf8(a.stdout).unwrap();
    for line in lines.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
    }
    let c = covex(&["--seed", "8", "--nmax", "3", "--trials", "5", "verify", "embed-thm"]);
    assert_ne!(lines.as_bytes(), c.stdout.as_slice());

    assert_eq!(covex(&["--trials", "0", "verify", "conormal-matrix"]).status.code(), Some(2));
    assert_eq!(covex(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(covex(&["--field", "Q", "verify", "embed-thm"]).status.code(), Some(2));
}

use std::path::Path;
use std::process::{Command, Output};

use knight_tour::{from_json, parse_rendered};
use serde_json::Value;

fn kt(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kt")).args(args).env("KT_CACHE_DIR", cache).output().expect("kt runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is JSON")
}

#[test]
fn exists_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = kt(dir.path(), &["exists", "4x3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["reason"], "SmallCaseExclusion");
    assert_eq!(kt(dir.path(), &["exists", "4x3x2x2"]).status.code(), Some(0));
    let o = kt(dir.path(), &["exists", "4x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr_json(&o)["error"].as_str().unwrap().contains("\"\""));
    assert_eq!(kt(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn construct_refuses_without_bootstrap() {
    let dir = tempfile::tempdir().unwrap();
    let o = kt(dir.path(), &["construct", "6x6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr_json(&o)["error"].as_str().unwrap().contains("missing"));
}

#[test]
fn construct_verify_render_sites_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let o = kt(&cache, &["bootstrap", "--deterministic"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let file = dir.path().join("t.json");
    let f = file.to_str().unwrap();
    assert_eq!(kt(&cache, &["construct", "5x6x2", "-o", f]).status.code(), Some(0));

    let o = kt(&cache, &["verify", f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["valid"], true);

    let o = kt(&cache, &["render", f]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.matches("layer ").count(), 2);
    let mut numbers: Vec<usize> = text
        .lines()
        .filter(|l| !l.starts_with("board") && !l.starts_with("layer"))
        .flat_map(|l| l.split_whitespace().map(|t| t.parse::<usize>().unwrap()))
        .collect();
    numbers.sort();
    assert_eq!(numbers, (1..=60).collect::<Vec<_>>());
    let json = std::fs::read_to_string(&file).unwrap();
    assert_eq!(parse_rendered(&text).unwrap(), from_json(&json).unwrap());

    let o = kt(&cache, &["sites", f, "--distance", "2"]);
    assert_eq!(stdout_json(&o)["bisited"], true);

    let o = kt(&cache, &["construct", "4x2x2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["reason"], "Disconnected");
}

#[test]
fn verify_flags_broken_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{\"shape\":[3,4],\"move\":[1,2],\"closed\":true,\"cells\":[[0,0],[1,2]]}\n").unwrap();
    let o = kt(dir.path(), &["verify", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["valid"], false);
    std::fs::write(&file, "not json").unwrap();
    assert_eq!(kt(dir.path(), &["verify", file.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn solve_with_constraints() {
    let dir = tempfile::tempdir().unwrap();
    let o = kt(dir.path(), &["solve", "4x3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["verdict"], "Exhausted");

    let o = kt(dir.path(), &["solve", "5x5", "--endpoints", "4,4:4,2", "--seeded", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let (route, closed) = from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert!(!closed);
    assert_eq!(route.order()[0], 24);
    assert_eq!(*route.order().last().unwrap(), 22);

    let o = kt(dir.path(), &["solve", "6x6", "--force-edge", "0,0:1,2", "--deterministic", "--budget-nodes", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    let o = kt(dir.path(), &["solve", "6x6", "--force-edge", "0,0:1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scan_emits_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let o = kt(dir.path(), &["scan", "--move", "2,2", "--max", "5", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 15);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 3);
        assert!(["Exhausted", "Disconnected"].contains(&v["verdict"].as_str().unwrap()));
    }
}

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

const B3_SEVEN: &str = r#"{"type": "B", "gamma1": {"cells": [[-2, 2], [0, 2], [-2, 0], [0, 0], [2, 0], [0, -2], [2, -2]]}}"#;
const D4: &str = r#"{"type": "D", "rank": 4, "gamma2": {"cells": [[-2, 0], [0, 0], [2, 0]]}, "gamma3": {"cells": [[-2, 2], [0, 2], [0, 0], [0, -2], [2, -2]]}, "epsilon": 1}"#;
const A2: &str = r#"{"type": "A", "gamma1": {"cells": [[-2, 0], [0, 0], [2, 0]]}}"#;
const PLUS: &str = r#"{"cells": [[-2, 2], [0, 2], [-2, 0], [0, 0], [2, 0], [0, -2], [2, -2]]}"#;

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilpair"))
        .args(args)
        .output()
        .unwrap()
}

fn run_file(content: &str, args: &[&str]) -> Output {
    let f = write_temp(content);
    let mut all = vec![args[0], f.path().to_str().unwrap()];
    all.extend_from_slice(&args[1..]);
    run(&all)
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn validate_ok_and_named_failures() {
    let o = run_file(A2, &["validate"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["rank"], 2);

    let o = run_file(r#"{"cells": [[0, 0], [0, 2], [2, 2]]}"#, &["validate"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_of(&o)["error"], "SkewClosureViolated");

    let eps2 = r#"{"type":"D","gamma2":{"cells":[[-2,0],[0,0],[2,0]]},"gamma3":{"cells":[[0,-2],[0,0],[0,2]]},"epsilon":2}"#;
    let o = run_file(eps2, &["validate"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_of(&o)["error"], "EpsilonInvalid");
}

#[test]
fn io_and_usage_errors_exit_two() {
    assert_eq!(
        run(&["validate", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run_file("{not json", &["validate"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_nilpair"))
        .args(["census", "--type", "B", "--rank-bound", "4"])
        .env("NILPAIR_RANK_CEILING", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("RankTooLarge"));
}

#[test]
fn centralizer_d4_with_oracle() {
    let o = run_file(D4, &["centralizer", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["dim_zplus"], 5);
    assert_eq!(v["dim_zplus_int"], 5);
    assert_eq!(v["dim_z"], 7);
    assert_eq!(v["wonderful"], false);
    assert_eq!(v["all_match"], true);
}

#[test]
fn centralizer_principal_type_a() {
    let o = run_file(A2, &["centralizer", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["dim_z"], 2);
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["match"] == true));
}

#[test]
fn centralizer_single_shift_lists_one_element() {
    let o = run_file(
        B3_SEVEN,
        &["centralizer", "--shift", "2,-1", "--oracle", "--dump"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    let els = v["elements"].as_array().unwrap();
    assert_eq!(els.len(), 1);
    assert_eq!(v["rows"][0]["oracle"], 1);
    assert!(els[0]["matrix"].is_object() || els[0]["matrix"].is_array());
}

#[test]
fn enum_e_accepts_half_shifts() {
    let o = run_file(B3_SEVEN, &["enum-e", "--shift", "1,0"]);
    assert_eq!(json_of(&o)["count"], 1);
    let o = run_file(B3_SEVEN, &["enum-e", "--shift", "1/2,1/2"]);
    assert_eq!(json_of(&o)["count"], 0);
}

#[test]
fn search_type_a_almost_principal_is_empty() {
    let o = run(&[
        "search",
        "--type",
        "A",
        "--rank-bound",
        "5",
        "--predicate",
        "almost_principal",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["count"], 0);
}

#[test]
fn census_type_c_matches_refined_families() {
    let o = run(&["census", "--type", "C", "--rank-bound", "4"]);
    let v = json_of(&o);
    let counted: u64 = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["almost_principal"].as_u64().unwrap())
        .sum();
    let s = run(&[
        "search",
        "--type",
        "C",
        "--rank-bound",
        "4",
        "--predicate",
        "almost_principal",
    ]);
    let data = json_of(&s)["data"].as_array().unwrap().clone();
    assert_eq!(counted as usize, data.len());
    assert!(data.iter().all(|d| d["refined_almost_principal"] == true));
}

#[test]
fn census_is_deterministic_across_thread_counts() {
    let a = run(&["census", "--type", "B", "--rank-bound", "3"]);
    let b = run(&["census", "--type", "B", "--rank-bound", "3"]);
    let c = run(&["--jobs", "4", "census", "--type", "B", "--rank-bound", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn render_ascii_and_highlights() {
    let o = run_file(PLUS, &["render", "--ascii"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert_eq!(s.lines().count(), 3);

    let o = run_file(B3_SEVEN, &["render", "--highlight-entry", "1,1:0"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("gamma1") && s.contains("gamma2"));
    assert_eq!(s.matches("[*]").count(), 2);

    let o = run_file(PLUS, &["render", "--svg", "--highlight", "0,0"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("<svg"));
    assert_eq!(s.matches("*</text>").count(), 1);
}

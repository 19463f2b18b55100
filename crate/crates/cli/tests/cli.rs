use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blocklab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn invariants_for_n3_aa() {
    let out = run(&["invariants", "--n", "3", "--m", "2", "--case", "aa", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for (key, want) in [("k", 14), ("k0", 8), ("k1", 6), ("l", 3), ("e", 3)] {
        assert_eq!(v[key], want, "{key}");
    }
    assert_eq!(v, golden("invariants_3_2_aa.json"));
}

#[test]
fn invariants_over_a_grid() {
    let out = run(&["invariants", "--grid", "n=3..4,m=2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert_eq!(v, golden("invariants_grid.json"));
}

#[test]
fn semidirect_witness() {
    let out = run(&["witness", "--kind", "semidirect", "--n", "3", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for (key, want) in [("blocks", 1), ("k", 14), ("k0", 8), ("k1", 6), ("l", 3)] {
        assert_eq!(v[key], want, "{key}");
    }
    assert_eq!(v, golden("witness_semidirect_3_2.json"));
}

#[test]
fn gluing_report_shape() {
    let out = run(&["gluing", "--n", "3", "--m", "2", "--case", "aa"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["objects"], 3);
    assert_eq!(v["morphisms"], 5);
    assert_eq!(v["H0_A2"], Value::Array(vec![]));
    assert_eq!(v["H1_A1"], Value::Array(vec![]));
    assert_eq!(v, golden("gluing_3_2_aa.json"));
}

#[test]
fn owc_ledger() {
    let out = run(&["owc", "--n", "4", "--m", "2", "--case", "aa", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), golden("owc_4_2_aa.json"));
    let tsv = run(&["owc", "--n", "4", "--m", "2", "--case", "ab"]);
    assert_eq!(tsv.status.code(), Some(0));
    let text = String::from_utf8(tsv.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("Q2\t")));
    assert!(text.ends_with("pass\tPASS\n"));
}

#[test]
fn subsections_and_awc() {
    let out = run(&["subsections", "--n", "4", "--m", "2", "--case", "ab", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["k_minus_l"], v["sum"]);
    let out = run(&["awc", "--n", "5", "--m", "3", "--case", "aa"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["weights"], 3);
}

#[test]
fn chartable_sources_agree_in_size() {
    let fam = run(&["chartable", "--n", "3", "--m", "2", "--format", "json"]);
    let dix = run(&["chartable", "--n", "3", "--m", "2", "--source", "dixon", "--format", "json"]);
    assert_eq!(fam.status.code(), Some(0));
    assert_eq!(dix.status.code(), Some(0));
    let (a, b) = (json(&fam), json(&dix));
    assert_eq!(a["chars"].as_array().unwrap().len(), 10);
    assert_eq!(b["chars"].as_array().unwrap().len(), 10);
}

#[test]
fn contrib_heights() {
    let out = run(&["contrib", "--n", "4", "--m", "2", "--case", "ab", "--rows", "[[1,0],[1,1],[1,2]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let heights: Vec<u64> = v["heights"].as_array().unwrap().iter().map(|h| h["height"].as_u64().unwrap()).collect();
    assert_eq!(heights, vec![1, 0, 2]);
}

#[test]
fn suite_passes_on_default_grid() {
    let out = run(&["suite", "--grid", "n=3..5,m=2..3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let again = run(&["suite", "--grid", "n=3..5,m=2..3", "--seed", "1"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--n", "3", "--m", "2", "--case", "ab"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--n", "3", "--m", "2", "--case", "ba"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--n", "2", "--m", "2", "--case", "bb"]).status.code(), Some(2));
    assert_eq!(run(&["witness", "--kind", "semidirect", "--n", "4", "--m", "2"]).status.code(), Some(2));
    assert_eq!(run(&["suite", "--grid", "n=5..3,m=2"]).status.code(), Some(2));
    assert_eq!(run(&["contrib", "--n", "4", "--m", "2", "--case", "ab", "--rows", "[[1]]"]).status.code(), Some(2));
}

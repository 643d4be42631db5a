use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn unitri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitri")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn construct_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let out = unitri(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn constructed_witnesses_verify_in_a_new_process() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["two-gen", "--d", "3", "--ring", "fp:2"],
        &["two-gen", "--d", "4", "--ring", "int"],
        &["two-gen", "--d", "5", "--ring", "fp:3", "--component", "2"],
        &["two-gen", "--d", "6", "--ring", "fp:5"],
        &["three-gen", "--d", "5", "--ring", "fp:2"],
        &["three-gen", "--d", "3", "--ring", "fp:5", "--rst", "1,1,0"],
        &["three-gen", "--d", "4", "--ring", "int"],
    ];
    for (k, args) in cases.iter().enumerate() {
        let path = construct_to(dir.path(), &format!("w{k}.json"), args);
        let out = unitri(&["verify", "--witness", &path]);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&out)["verified"], Value::Bool(true));
    }
}

#[test]
fn depth_three_pair_has_sign_minus_one() {
    let out = unitri(&["construct", "two-gen", "--d", "3", "--ring", "fp:2"]);
    assert_eq!(out.status.code(), Some(0));
    let w = json(&out);
    assert_eq!(w["sign"], -1);
    assert_eq!(w["n"], 6);
    assert_eq!(w["kind"], "pair");
}

#[test]
fn tampered_witness_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "w.json", &["two-gen", "--d", "4", "--ring", "fp:2"]);
    let mut w: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // flip the superdiagonal bit at (1, 2) of A
    let entries = w["matrices"][0]["entries"].as_array_mut().unwrap();
    match entries.iter().position(|e| e[0] == 1 && e[1] == 2) {
        Some(k) => {
            entries.remove(k);
        }
        None => entries.insert(0, serde_json::json!([1, 2, "1"])),
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, w.to_string()).unwrap();
    let out = unitri(&["verify", "--witness", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verified"], Value::Bool(false));
}

#[test]
fn malformed_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"kind\": \"pair\"}").unwrap();
    assert_eq!(unitri(&["verify", "--witness", junk.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(unitri(&["construct", "two-gen", "--d", "3", "--ring", "fp:4"]).status.code(), Some(2));
    assert_eq!(unitri(&["construct", "three-gen", "--d", "3", "--rst", "1,1,1"]).status.code(), Some(2));
    assert_eq!(unitri(&["expand", "--word", "(comm a", "--n", "4"]).status.code(), Some(2));
    assert_eq!(unitri(&["search", "--n", "6", "--p", "2", "--mode", "exhaustive", "--target", "3"]).status.code(), Some(2));
    assert_eq!(unitri(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn term_cap_gives_exit_three() {
    let out = unitri(&["expand", "--word", "c10", "--n", "11", "--cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn proportion_output() {
    let out = unitri(&["proportion", "--N", "21"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"num":13,"den":21}"#);
}

#[test]
fn expand_and_coeff() {
    let out = unitri(&["expand", "--word", "c5", "--n", "6", "--entry", "1,6"]);
    let v = json(&out);
    assert_eq!(v["num_terms"], 8);
    let out = unitri(&["coeff", "--word", "(comm (comm b a a) (comm b a))", "--monomial", "aaabb"]);
    assert_eq!(json(&out)["coefficient"], "0");
}

#[test]
fn search_is_reproducible() {
    let args = ["search", "--n", "4", "--p", "2", "--samples", "500", "--target", "3", "--seed", "7"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_unitri")).args(args).env("UNITRI_THREADS", threads).output().unwrap()
    };
    let (a, b) = (run("1"), run("3"));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1));
    let v = json(&a);
    assert_eq!(v["evidence"], "sampled evidence");
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn seeded_search_and_series() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "w.json", &["two-gen", "--d", "3", "--ring", "fp:2"]);
    let out = unitri(&["search", "--n", "6", "--p", "2", "--samples", "50", "--target", "3", "--seed-pair", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["witness"]["source"], "seeded");

    let w: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let gens = dir.path().join("gens.json");
    std::fs::write(&gens, w["matrices"].to_string()).unwrap();
    let out = unitri(&["series", "--gens", gens.to_str().unwrap(), "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["derived_length"], 3);
    assert_eq!(v["order"], "256");
}

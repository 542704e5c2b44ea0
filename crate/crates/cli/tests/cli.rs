use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lefschetz"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn manifest(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn result(v: &Value, i: usize) -> &Value {
    &v["records"][i]["result"]
}

#[test]
fn e1_iterate_three() {
    let f = manifest(r#"{"surface": "E1", "operations": [{"op": "iterate", "n": 3}], "output": {"format": "json"}}"#);
    let out = run(&["--manifest", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let inv = &result(&v, 0)["invariants"];
    assert_eq!(inv["euler"], 36);
    assert_eq!(inv["sigma"], -24);
    assert_eq!(inv["canonical_fibre_multiple"], 1);
    assert_eq!(result(&v, 0)["classes"]["canonical"], result(&v, 0)["classes"]["fibre"]);
}

#[test]
fn quintic_obstruction() {
    let f = manifest(r#"{"surface": "quintic", "operations": [{"op": "obstruction", "a": 1, "n": 2}]}"#);
    let v = json(&["run", "--manifest", f.path().to_str().unwrap()]);
    let r = result(&v, 0);
    assert_eq!(r["obstructed"], true);
    assert_eq!(r["d"], 2);
    assert_ne!(r["div_untwisted"], r["div_twisted"]);
}

#[test]
fn malformed_manifests_exit_two() {
    for text in [
        "{not json",
        r#"{"surface": "E1", "operations": [{"op": "iterate", "n": 3, "bogus": 1}]}"#,
        r#"{"surface": "E1", "operations": [], "extra": true}"#,
        r#"{"surface": "nowhere", "operations": [{"op": "iterate", "n": 1}]}"#,
        r#"{"surface": "genus2", "operations": [{"op": "fibresum", "m": 1, "n": 1, "gluing": [1]}]}"#,
    ] {
        let f = manifest(text);
        let out = run(&["--manifest", f.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{text}");
    }
    assert_eq!(run(&["--manifest", "/nonexistent/manifest.json"]).status.code(), Some(2));
}

#[test]
fn precondition_failures_exit_three_and_name_it() {
    let out = run(&["sw-classes", "--preset", "E1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("g ≥ 2"));
    let out = run(&["obstruction", "--a", "1", "--n", "2", "--d", "4", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_e2() {
    let v = json(&["classify", "--preset", "E1", "--n", "2"]);
    assert_eq!(result(&v, 0)["decomposition"], "2·E8(−1) ⊕ 3·H");
    assert_eq!(result(&v, 0)["parity"], "even");
}

#[test]
fn pencil_params() {
    let v = json(&["pencil-params", "--d", "3", "--s0", "5", "--k0", "10"]);
    assert_eq!(result(&v, 0)["s"], 6);
    assert_eq!(result(&v, 0)["k"], 11);
}

#[test]
fn quintic_basic_classes() {
    let v = json(&["sw-classes", "--preset", "quintic"]);
    let r = result(&v, 0);
    assert_eq!(r["count"], 64);
    assert_eq!(r["classes"].as_array().unwrap().len(), 64);
    let top = r["max_fibre_pairing"].as_array().unwrap();
    assert_eq!(top.len(), 1);
    assert_eq!(top[0]["fibre_pairing"], 10);
}

#[test]
fn mst_table_singles_out_canonical() {
    let v = json(&["mst", "--preset", "quintic", "--n", "2"]);
    for row in result(&v, 0)["candidates"].as_array().unwrap() {
        let expected = if row["is_canonical"] == true { 1 } else { 0 };
        assert_eq!(row["mst"].as_i64().unwrap().abs(), expected);
    }
}

#[test]
fn zero_gluing_matches_iterated() {
    for (preset, m, n) in [("E1", 1, 2), ("genus2", 2, 1), ("genus2", 2, 2)] {
        let t = json(&["fibresum", "--preset", preset, "--m", &m.to_string(), "--n", &n.to_string()]);
        let i = json(&["fibresum", "--preset", preset, "--n", &(m + n).to_string()]);
        assert_eq!(result(&t, 0)["model"]["invariants"], result(&i, 0)["model"]["invariants"], "{preset} {m} {n}");
    }
}

#[test]
fn fibresum_gram_and_labels() {
    let v = json(&["fibresum", "--preset", "genus2", "--m", "1", "--n", "1", "--gluing", "1,0,-1,0", "--gram"]);
    let r = result(&v, 0);
    let labels = r["labels"].as_array().unwrap();
    assert_eq!(r["gram"]["rank"].as_u64().unwrap() as usize, labels.len());
    assert_eq!(labels.last().unwrap(), "Sigma");
    assert_eq!(r["s_squares"].as_array().unwrap().len(), 4);
}

#[test]
fn canonical_divisibility_agrees() {
    let v = json(&["canonical", "--preset", "quintic", "--n", "4"]);
    let r = result(&v, 0);
    assert_eq!(r["d"], 2);
    assert_eq!(r["divisibility_formula"], 2);
    assert_eq!(r["divisibility_direct"], 2);
}

#[test]
fn reruns_are_byte_identical() {
    let f = manifest(
        r#"{"surface": {"preset": "genus2"}, "operations": [
            {"op": "fibresum", "m": 2, "n": 1, "gluing": [1, -2, 0, 1]},
            {"op": "canonical", "m": 2, "n": 1, "gluing": [1, -2, 0, 1]},
            {"op": "invariants"}, {"op": "obstruction", "a": 1, "n": 2}
        ], "output": {"format": "json"}}"#,
    );
    let a = run(&["--manifest", f.path().to_str().unwrap()]);
    let b = run(&["--manifest", f.path().to_str().unwrap()]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", String::from_utf8(a.stdout).unwrap());
}

#[test]
fn selftest_passes() {
    let v = json(&["selftest", "--seed", "11", "--cases", "20"]);
    let r = result(&v, 0);
    assert_eq!(r["passed"], 20);
    assert!(r["failures"].as_array().unwrap().is_empty());
}

#[test]
fn human_output_is_default() {
    let out = run(&["invariants", "--preset", "E1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("euler: 12"));
}

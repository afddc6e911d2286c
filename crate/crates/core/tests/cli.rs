use std::fs;
use std::path::Path;

use serde_json::Value;
use stochord::cli::{run_with, EXIT_DATA, EXIT_USAGE};
use stochord::harness::worked_example;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("stochord").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_worked_pair(dir: &Path) -> String {
    let (s1, s2, _) = worked_example();
    let path = dir.join("pair.json");
    fs::write(&path, serde_json::json!({ "config1": s1, "config2": s2 }).to_string()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn json(line: &str) -> Value {
    serde_json::from_str(line.trim()).unwrap()
}

#[test]
fn emitted_witness_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let pair = write_worked_pair(dir.path());
    let w = dir.path().join("w.json");
    let w = w.to_str().unwrap();
    let (code, out, _) = run(&["check-order", &pair, "--strict", "--emit-witness", w]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["status"], "holds");
    let (code, out, _) = run(&["check-order", &pair, "--verify-witness", w]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["witness_accepted"], true);
}

#[test]
fn stated_three_move_chain_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let pair = write_worked_pair(dir.path());
    let w = dir.path().join("chain.json");
    fs::write(&w, worked_example().2.to_json().unwrap()).unwrap();
    let (code, out, _) = run(&["check-order", &pair, "--verify-witness", w.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["moves"], 3);
}

#[test]
fn witness_for_the_wrong_pair_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let (s1, s2, chain) = worked_example();
    let pair = dir.path().join("rev.json");
    fs::write(&pair, serde_json::json!({ "config1": s2, "config2": s1 }).to_string()).unwrap();
    let w = dir.path().join("chain.json");
    fs::write(&w, chain.to_json().unwrap()).unwrap();
    let (code, out, _) = run(&[
        "check-order",
        pair.to_str().unwrap(),
        "--verify-witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["witness_accepted"], false);
}

#[test]
fn reversed_pair_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    let (s1, s2, _) = worked_example();
    let pair = dir.path().join("rev.json");
    fs::write(&pair, serde_json::json!({ "config1": s2, "config2": s1 }).to_string()).unwrap();
    let (code, out, _) = run(&["check-order", pair.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert_eq!(json(&out)["status"], "refuted");
}

#[test]
fn identity_residuals_are_small() {
    for prop in ["nb-mixture", "nb-pair", "gamma-single", "gamma-pair"] {
        let (code, out, err) = run(&["identity", "--prop", prop, "--max-residual", "1e-10"]);
        assert_eq!(code, 0, "{prop}: {err}");
        assert!(json(&out)["residual"].as_f64().unwrap() <= 1e-10);
    }
}

#[test]
fn verify_equal_specs_holds() {
    let dir = tempfile::tempdir().unwrap();
    let (s1, _, _) = worked_example();
    let pair = dir.path().join("same.json");
    fs::write(&pair, serde_json::json!({ "config1": s1, "config2": s1 }).to_string()).unwrap();
    for order in ["conv", "st"] {
        let (code, out, err) = run(&["verify", pair.to_str().unwrap(), "--order", order]);
        assert_eq!(code, 0, "{order}: {out}{err}");
        assert_eq!(json(&out)["agreement"], "agree");
    }
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["harness", "--scenario", "nope", "--seeds", "0..2"]).0, EXIT_USAGE);
    assert_eq!(
        run(&["harness", "--scenario", "conv-ai", "--seeds", "3..3"]).0,
        EXIT_USAGE
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"config1\": 3}").unwrap();
    let (code, _, err) = run(&["check-order", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_DATA);
    assert!(err.starts_with("error:"));
    let missing = dir.path().join("missing.json");
    assert_eq!(
        run(&["verify", missing.to_str().unwrap(), "--order", "st"]).0,
        EXIT_DATA
    );
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-order"));
}

#[test]
fn mismatched_families_are_data_errors() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("mixed.json");
    let body = r#"{"config1": {"family": "gamma", "shapes": [1.0], "scales": [2.0]},
                   "config2": {"family": "negbin", "shapes": [1.0], "scales": [0.5]}}"#;
    fs::write(&pair, body).unwrap();
    assert_eq!(run(&["verify", pair.to_str().unwrap(), "--order", "conv"]).0, EXIT_DATA);
}

fn strip_runtime(text: &str) -> Vec<Value> {
    text.lines()
        .map(|l| {
            let mut v = json(l);
            v.as_object_mut().unwrap().remove("runtime_ms");
            v
        })
        .collect()
}

#[test]
fn harness_output_is_deterministic_and_appends() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.jsonl");
    let p = path.to_str().unwrap();
    let args = [
        "harness",
        "--scenario",
        "majorize-alpha",
        "--seeds",
        "0..6",
        "-n",
        "3",
        "--out",
        p,
    ];
    assert_eq!(run(&args).0, 0);
    let first = fs::read_to_string(&path).unwrap();
    assert_eq!(first.lines().count(), 6);
    assert_eq!(run(&args).0, 0);
    let both = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = both.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(
        strip_runtime(&lines[..6].join("\n")),
        strip_runtime(&lines[6..].join("\n"))
    );
    for v in strip_runtime(&first) {
        assert_eq!(v["agreement"], "agree");
        assert_eq!(v["v"], 1);
    }
}

#[test]
fn export_survival_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(
        &spec,
        r#"{"family": "negbin", "shapes": [1.5, 0.5], "scales": [0.4, 0.7]}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["export-survival", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    let header = lines.next().unwrap();
    assert!(header.contains(','));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), header.split(',').count());
}

#[test]
fn explore_emits_reverifiable_json() {
    let (code, out, _) = run(&["explore", "--budget", "40", "--seed", "5"]);
    assert_eq!(code, 0);
    for l in out.lines() {
        assert_eq!(json(l)["label"], "evidence");
    }
}

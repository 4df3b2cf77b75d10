//! End-to-end behaviour of the `phl` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use phl_core::document::canonical;
use phl_core::report::RunReport;

fn phl(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phl"))
        .args(args)
        .current_dir(dir)
        .env_remove("PHL_GUARD")
        .output()
        .expect("binary runs")
}

fn corpus() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = phl(dir.path(), &["fixtures", "--out", "."]);
    assert_eq!(out.status.code(), Some(0));
    dir
}

fn report(out: &Output) -> RunReport {
    RunReport::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

#[test]
fn classes_of_nonempty_sets_is_one() {
    let dir = corpus();
    let out = phl(dir.path(), &["classes", "set-3.json", "set-2.json", "--instance", "set2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.summary["classes"], 1);
    assert_eq!(r.summary["homs"], 8);
}

#[test]
fn reports_round_trip_byte_identically() {
    let dir = corpus();
    let out = phl(dir.path(), &["classes", "set-2.json", "set-2.json"]);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(report(&out).to_text(), text);
}

#[test]
fn fibrancy_counterexample_re_verifies() {
    let dir = corpus();
    let out = phl(dir.path(), &["fibrant", "category-chain2.json", "--family", "family-graphI.json"]);
    assert_eq!(out.status.code(), Some(1));
    let square = report(&out).counterexample.expect("counterexample square");
    assert_eq!(square["kind"], "square");
    std::fs::write(dir.path().join("square.json"), canonical(&square)).unwrap();
    let again = phl(dir.path(), &["lift", "square.json"]);
    assert_eq!(again.status.code(), Some(1));
}

#[test]
fn groupoid_carrier_is_fibrant_on_the_reflexive_instance() {
    let dir = corpus();
    let out = phl(
        dir.path(),
        &["fibrant", "category-groupoid-interval.json", "--family", "family-rgraphI.json"],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unfilled_horn_is_a_lifting_counterexample() {
    let dir = corpus();
    let out = phl(dir.path(), &["horn-fill", "category-chain2.json", "--n", "2", "--k", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let square = report(&out).counterexample.unwrap();
    std::fs::write(dir.path().join("horn.json"), canonical(&square)).unwrap();
    assert_eq!(phl(dir.path(), &["lift", "horn.json"]).status.code(), Some(1));
    let inner = phl(dir.path(), &["horn-fill", "category-chain2.json", "--inner", "--cap", "3"]);
    assert_eq!(inner.status.code(), Some(0));
}

#[test]
fn nerve_and_tau0() {
    let dir = corpus();
    let out = phl(dir.path(), &["nerve", "category-groupoid-interval.json"]);
    assert_eq!(out.status.code(), Some(0));
    // chaotic on two points: 2, 4, 8 cells
    assert_eq!(report(&out).summary["cells"], serde_json::json!([2, 4, 8]));
    let t = phl(dir.path(), &["tau0", "category-terminal.json", "category-groupoid-interval.json"]);
    assert_eq!(report(&t).summary["classes"], 1);
}

#[test]
fn verify_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["core", "monads", "witnesses", "simplicial"] {
        let out = phl(dir.path(), &["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
    assert_eq!(phl(dir.path(), &["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn schema_errors_exit_two_with_a_location() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"kind":"graph","vertices":["a"],"edges":[["e","a","b"]]}"#,
    )
    .unwrap();
    let out = phl(dir.path(), &["classes", "bad.json", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json") && err.contains("`b`"), "{err}");
    std::fs::write(dir.path().join("syntax.json"), "{\n  \"kind\": \"set\",\n  \"elements\": [\n}").unwrap();
    let out = phl(dir.path(), &["nerve", "syntax.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 4"));
}

#[test]
fn guard_overflow_exits_two() {
    let dir = corpus();
    let out = Command::new(env!("CARGO_BIN_EXE_phl"))
        .args(["classes", "set-4.json", "set-4.json"])
        .current_dir(dir.path())
        .env("PHL_GUARD", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("guard"));
    let flag = phl(dir.path(), &["classes", "set-4.json", "set-4.json", "--guard", "5"]);
    assert_eq!(flag.status.code(), Some(2));
}

#[test]
fn anodyne_counts_and_witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = phl(dir.path(), &["anodyne", "--instance", "graphI", "--depth", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    // three generators used as seeds and generators: 3 + 2·3
    assert_eq!(r.summary["raw_counts"], serde_json::json!([9]));
    let family: Value = r.witness.unwrap();
    assert!(phl_core::document::parse_document(&canonical(&family)).is_ok());
}

#[test]
fn witness_m2_and_tweq() {
    let dir = corpus();
    let set = phl(dir.path(), &["witness-m2", "set-3.json", "--cap", "3"]);
    assert_eq!(set.status.code(), Some(0));
    let graph = phl(dir.path(), &["witness-m2", "graph-v2-e2-0.json"]);
    assert_eq!(graph.status.code(), Some(0));
    let f = phl_core::PresheafMap::identity(&phl_core::monads::cardinal(2));
    std::fs::write(
        dir.path().join("id.json"),
        canonical(&phl_core::document::map_to_json(&f)),
    )
    .unwrap();
    let t = phl(dir.path(), &["tweq", "id.json"]);
    assert_eq!(t.status.code(), Some(0));
    assert_eq!(report(&t).summary["alternative_found"], true);
}

#[test]
fn timing_is_opt_in() {
    let dir = corpus();
    let plain = report(&phl(dir.path(), &["classes", "set-1.json", "set-1.json"]));
    assert!(plain.timing_ms.is_none());
    let timed = report(&phl(dir.path(), &["classes", "set-1.json", "set-1.json", "--timing"]));
    assert!(timed.timing_ms.is_some());
}

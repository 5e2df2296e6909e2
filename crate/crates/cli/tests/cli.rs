use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gstar")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn hom_lists_nonzero_maps_first() {
    let v = json(&["hom", "--from", "(2)", "--to", "(3)"]);
    assert_eq!(v["count"], 16);
    assert_eq!(v["nonzero"], 15);
    let morphisms = v["morphisms"].as_array().unwrap();
    assert_eq!(morphisms.len(), 16);
    assert_eq!(morphisms.last().unwrap()["zero"], true);
}

#[test]
fn hom_nonzero_only_and_csv() {
    let v = json(&["hom", "--from", "(1)", "--to", "()", "--nonzero-only"]);
    assert_eq!(v["morphisms"].as_array().unwrap().len(), 0);
    let out = run(&["--format", "csv", "hom", "--from", "(1)", "--to", "(1,1)"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "position,morphism,zero");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].ends_with(",true"));
}

#[test]
fn smash_of_a_tuple() {
    let v = json(&["smash", "--tuple", "(2,2)", "--trunc", "4"]);
    assert_eq!(v["smash"], 4);
}

#[test]
fn lift_of_rep1() {
    let rep1 = fixture("rep1.json");
    assert_eq!(json(&["lift", "--diagram", &rep1, "--at", "(2)"])["cardinality"], 3);
    assert_eq!(json(&["lift", "--diagram", &rep1, "--at", "()"])["cardinality"], 1);
}

#[test]
fn classify_walking_iso() {
    let v = json(&["classify", "--fixture", "walking-iso", "--n", "1", "--k", "1"]);
    assert_eq!(v["size"], 16);
}

#[test]
fn diagram_validation() {
    assert!(run(&["diagram", "validate", "--diagram", &fixture("z2.json")])
        .status
        .success());
    assert_eq!(
        run(&["diagram", "validate", "--diagram", &fixture("broken-diagram.json")])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn precompose_round_trips_through_validation() {
    let out = run(&[
        "diagram",
        "precompose",
        "--diagram",
        &fixture("rep1.json"),
        "--along",
        "collapse",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = std::env::temp_dir().join(format!("gstar-precompose-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let status = run(&["diagram", "validate", "--diagram", path.to_str().unwrap()]).status;
    std::fs::remove_file(&path).unwrap();
    assert!(status.success());
}

#[test]
fn tuple_category_as_dot() {
    let out = run(&[
        "--format", "dot", "tuplecat", "--base", "fskel", "--trunc", "1", "--qmax", "1",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("digraph"));
}

#[test]
fn emitted_hom_census_matches_formula() {
    let v = json(&["emit", "--artifact", "hom-census"]);
    for row in v.as_array().unwrap() {
        assert_eq!(row["nonzero"], row["formula"]);
    }
}

#[test]
fn injected_fault_exits_one_with_a_witness() {
    let out = run(&[
        "check",
        "--suite",
        "category",
        "--fault",
        "broken-composition",
        "--randoms",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "fail");
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn broken_input_category_exits_one() {
    let out = run(&[
        "check",
        "--suite",
        "category.input-axioms",
        "--category",
        &fixture("broken-composition.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_configuration_exits_two() {
    assert_eq!(run(&["check", "--trunc", "3"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--suite", "no-such-check"]).status.code(), Some(2));
    assert_eq!(
        run(&["lift", "--diagram", "/nonexistent.json", "--at", "(1)"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_reports_are_byte_identical() {
    let args = [
        "check",
        "--suite",
        "adjunction",
        "--suite",
        "hom.gstar-count",
        "--randoms",
        "10",
    ];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let csv = ["--format", "csv", "check", "--suite", "relative", "--randoms", "3"];
    assert_eq!(run(&csv).stdout, run(&csv).stdout);
}

mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use common::{bundled, exint, scenario, scenarios_dir};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_exint"));
    c.env_remove("EXINT_DEGREE_BOUND");
    c
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schema")
        .join(name);
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&value).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value, what: &str) {
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{what}: {errors:#?}");
}

fn refused() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(scenarios_dir().join("refused"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    out.sort();
    out
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bundled_scenarios_pass_and_refused_ones_exit_2() {
    for p in bundled() {
        let out = exint(&["run", path_str(&p)]);
        assert_eq!(out.code, 0, "{}: {}{}", p.display(), out.stdout, out.stderr);
        assert!(!out.stdout.contains("FAIL"), "{}", p.display());
    }
    let refused = refused();
    assert!(refused.len() >= 4);
    for p in refused {
        let out = exint(&["run", path_str(&p)]);
        assert_eq!(out.code, 2, "{}", p.display());
        assert!(out.stdout.is_empty());
        assert!(out.stderr.starts_with("error: "), "{}", out.stderr);
    }
}

#[test]
fn refusals_name_the_reason() {
    let gated = scenarios_dir().join("refused/gated.scn");
    let out = exint(&["run", path_str(&gated)]);
    assert!(out.stderr.contains("line 10"), "{}", out.stderr);
    assert!(out.stderr.contains("not a regular sequence"), "{}", out.stderr);
    let syntax = scenarios_dir().join("refused/syntax.scn");
    assert!(exint(&["run", path_str(&syntax)]).stderr.contains("line 4"));
    let out = exint(&["dim", &scenario("doubleline.scn"), "nope"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unknown ideal `nope`"), "{}", out.stderr);
    assert_eq!(exint(&["run", "/nonexistent/file.scn"]).code, 2);
}

#[test]
fn reports_validate_against_the_schema() {
    let v = schema("report.schema.json");
    for p in bundled() {
        let out = exint(&["--json", "run", path_str(&p)]);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_valid(&v, &doc, &p.display().to_string());
        let timed = exint(&["--json", "--timings", "run", path_str(&p)]);
        let doc: Value = serde_json::from_str(&timed.stdout).unwrap();
        assert!(doc["timings"]["total_us"].is_u64());
        assert_valid(&v, &doc, &format!("{} with timings", p.display()));
    }
    let d = scenario("doubleline.scn");
    let queries: [&[&str]; 7] = [
        &["gb", &d, "L"],
        &["dim", &d, "L"],
        &["regular", &d, "L"],
        &["koszul", &d, "L", "--homology"],
        &["tor", &d, "doubleline", "--q", "1"],
        &["self-check", &d, "L"],
        &["les-check", &d, "doubleline"],
    ];
    for args in queries {
        let mut full = vec!["--json", "--degree-bound", "5"];
        full.extend_from_slice(args);
        let out = exint(&full);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_valid(&v, &doc, &format!("{args:?}"));
    }
}

#[test]
fn json_scenarios_validate_and_match_text_form() {
    let v = schema("scenario.schema.json");
    let json = std::fs::read_to_string(scenarios_dir().join("doubleline.json")).unwrap();
    assert_valid(&v, &serde_json::from_str(&json).unwrap(), "doubleline.json");
    let strip = |args: &[&str]| {
        let mut doc: Value = serde_json::from_str(&exint(args).stdout).unwrap();
        doc["scenario"]["sha256"] = Value::Null;
        doc
    };
    let d_json = scenario("doubleline.json");
    let d_text = scenario("doubleline.scn");
    assert_eq!(
        strip(&["--json", "excess-check", &d_json, "doubleline"]),
        strip(&["--json", "excess-check", &d_text, "doubleline"])
    );
}

#[test]
fn runs_are_byte_identical() {
    for p in bundled() {
        let a = exint(&["--json", "run", path_str(&p)]);
        let b = exint(&["--json", "run", path_str(&p)]);
        assert_eq!(a.stdout, b.stdout, "{}", p.display());
        let text_a = exint(&["run", path_str(&p)]);
        let text_b = exint(&["run", path_str(&p)]);
        assert_eq!(text_a, text_b);
    }
    let out = bin().args(["--json", "run", &scenario("planes.scn")]).output().unwrap();
    let again = bin().args(["--json", "run", &scenario("planes.scn")]).output().unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn process_exit_codes_and_streams() {
    let ok = bin().args(["run", &scenario("transversal.scn")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS"));
    let bad = bin()
        .args(["run", path_str(&scenarios_dir().join("refused/gated.scn"))])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("certification failed"));
    let usage = bin().args(["self-check"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let quiet = bin().args(["--quiet", "run", &scenario("point.scn")]).output().unwrap();
    assert_eq!(quiet.status.code(), Some(0));
    assert!(quiet.stdout.is_empty());
}

#[test]
fn degree_bound_from_environment_and_flags() {
    let d = scenario("point.scn");
    let read = |c: &mut Command| -> Value {
        let out = c.output().unwrap();
        serde_json::from_slice(&out.stdout).unwrap()
    };
    let default = read(bin().args(["--json", "self-check", &d, "P"]));
    assert_eq!(default["results"][0]["degree_bound"], 12);
    let env = read(
        bin()
            .env("EXINT_DEGREE_BOUND", "3")
            .args(["--json", "self-check", &d, "P"]),
    );
    assert_eq!(env["results"][0]["degree_bound"], 3);
    assert_eq!(
        env["results"][0]["data"]["verdict"]["rows"][0]["lhs"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
    let flag =
        read(
            bin()
                .env("EXINT_DEGREE_BOUND", "3")
                .args(["--json", "--degree-bound", "5", "self-check", &d, "P"]),
        );
    assert_eq!(flag["results"][0]["degree_bound"], 5);
}

#[test]
fn check_line_bound_overrides_the_global_one() {
    let (_, doc) = common::exint_json(&["--degree-bound", "4", "run", &scenario("doubleline.scn")]);
    let bounds: Vec<Value> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|r| r.get("degree_bound").cloned())
        .collect();
    // excess-check takes the global bound, les-check carries its own
    assert!(bounds.contains(&Value::from(4)));
    assert!(bounds.contains(&Value::from(10)));
}

#[test]
fn order_flag_changes_the_basis_not_the_verdicts() {
    let p = scenario("mixed.scn");
    let (_, lex) = common::exint_json(&["--order", "lex", "run", &p]);
    let (_, grevlex) = common::exint_json(&["run", &p]);
    assert_eq!(lex["scenario"]["order"], "lex");
    let statuses = |d: &Value| -> Vec<Value> {
        d["results"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["status"].clone())
            .collect()
    };
    assert_eq!(statuses(&lex), statuses(&grevlex));
    assert_eq!(exint(&["--order", "weird", "run", &p]).code, 2);
}

#[test]
fn gen_corpus_is_seeded_and_runs() {
    let a = exint(&["gen-corpus", "--seed", "9", "--count", "6"]);
    let b = exint(&["gen-corpus", "--seed", "9", "--count", "6"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, exint(&["gen-corpus", "--seed", "10", "--count", "6"]).stdout);
    assert_eq!(a.stdout.matches("check regular").count(), 6);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.scn");
    let out = exint(&["gen-corpus", "--seed", "9", "--count", "6", "-o", path_str(&path)]);
    assert_eq!(out.code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a.stdout);
    let (code, doc) = common::exint_json(&["run", path_str(&path)]);
    assert_eq!(code, 0);
    assert_eq!(doc["scenario"]["seed"], 9);
    for r in doc["results"].as_array().unwrap() {
        assert_eq!(r["data"]["oracles_agree"], true);
    }
}

#[test]
fn prime_field_reports_carry_a_warning() {
    let (code, doc) = common::exint_json(&["run", &scenario("prime.scn")]);
    assert_eq!(code, 0);
    assert_eq!(doc["scenario"]["field"], "101");
    assert!(!doc["warnings"].as_array().unwrap().is_empty());
}

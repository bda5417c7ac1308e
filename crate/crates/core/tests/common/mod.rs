#![allow(dead_code)]

use std::path::PathBuf;

use exint::modules::FreeModuleMap;
use exint::ring::Polynomial;
use serde_json::Value;

pub fn scenarios_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

pub fn scenario(name: &str) -> String {
    scenarios_dir().join(name).to_string_lossy().into_owned()
}

/// Every bundled scenario file, sorted by name.
pub fn bundled() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(scenarios_dir())
        .expect("scenarios dir")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("scn" | "json")))
        .collect();
    out.sort();
    out
}

pub fn exint(args: &[&str]) -> exint::cli::Outcome {
    let mut full = vec!["exint"];
    full.extend_from_slice(args);
    exint::cli::run(full)
}

/// Runs with `--json` and returns the exit code and the parsed report.
pub fn exint_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = exint(&full);
    let report = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("bad report for {args:?}: {e}\nstderr: {}", out.stderr));
    (out.code, report)
}

pub fn hf(v: &Value) -> Vec<u64> {
    v.as_array()
        .expect("hilbert array")
        .iter()
        .map(|x| x.as_u64().expect("hilbert value"))
        .collect()
}

/// Dense matrix of a map, entry (i, j) = row i of column j.
pub fn dense(m: &FreeModuleMap) -> Vec<Vec<Polynomial>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m.entry(i, j).clone()).collect())
        .collect()
}

/// Schoolbook product `a * b`, written out here so it does not share code
/// with the library's own composition.
pub fn matmul(
    a: &[Vec<Polynomial>],
    b: &[Vec<Polynomial>],
    inner: usize,
    cols: usize,
    zero: &Polynomial,
) -> Vec<Vec<Polynomial>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = zero.clone();
                    for k in 0..inner {
                        acc = &acc + &(&row[k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

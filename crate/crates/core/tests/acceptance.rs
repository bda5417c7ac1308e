//! Acceptance criteria, one line of output per criterion. Runs without the
//! libtest harness so the lines always reach the log.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{binomial, bundled, dense, exint, exint_json, hf, matmul, scenario};
use exint::cli::Scenario;
use exint::complexes::{
    free_resolution, homology, homology_hilbert, koszul_complex, koszul_complex_with_degrees, koszul_tensor_iso,
    tensor_all, tensor_complexes, ChainComplex, KoszulData,
};
use exint::corpus::Corpus;
use exint::intersect::{is_regular_sequence, multitor, CIVariety, IntersectionInstance};
use exint::modules::{hilbert_function, FreeModuleMap};
use exint::ring::{parse_polynomial, MonomialOrder, PolyRing, Polynomial};
use serde_json::Value;

type Outcome = Result<String, String>;

/// Name, check, time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn verdict(report: &Value) -> &Value {
    &report["results"][0]["data"]["verdict"]
}

fn rows_equal(v: &Value) -> bool {
    v["rows"]
        .as_array()
        .is_some_and(|rs| rs.iter().all(|r| r["equal"] == true && r["shift"].is_null()))
}

fn checks_pass(v: &Value) -> bool {
    v["checks"]
        .as_array()
        .is_some_and(|cs| cs.iter().all(|c| c["pass"] == true))
}

fn row(v: &Value, label_prefix: &str, q: i64) -> Option<(Vec<u64>, Vec<u64>)> {
    v["rows"]
        .as_array()?
        .iter()
        .find(|r| r["q"] == q && r["label"].as_str().is_some_and(|l| l.starts_with(label_prefix)))
        .map(|r| (hf(&r["lhs"]), hf(&r["rhs"])))
}

fn c1_self_intersection() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("point.scn");
    std::fs::write(&path, "field Q\nvars x, y\nideal I = [x, y]\n").map_err(|e| e.to_string())?;
    let (code, report) = exint_json(&["self-check", path.to_str().unwrap(), "I"]);
    ensure!(code == 0, "exit code {code}");
    ensure!(report["results"][0]["degree_bound"] == 12, "default bound is not 12");
    let v = verdict(&report);
    ensure!(
        v["pass"] == true && rows_equal(v) && checks_pass(v),
        "verdict failed: {v}"
    );
    let mut dims = Vec::new();
    for q in 0..=2 {
        let (lhs, rhs) = row(v, "Tor", q).ok_or(format!("no row for q = {q}"))?;
        ensure!(lhs == rhs, "q = {q}: {lhs:?} vs {rhs:?}");
        ensure!(lhs.len() == 13, "bound D = 12 not honored");
        dims.push(lhs.iter().sum::<u64>());
    }
    ensure!(dims == [1, 2, 1], "dimensions {dims:?}");
    Ok(format!("dims {dims:?}"))
}

fn c2_double_line() -> Outcome {
    let (code, report) = exint_json(&["excess-check", &scenario("doubleline.scn"), "doubleline"]);
    ensure!(code == 0, "exit code {code}");
    let data = &report["results"][0]["data"];
    ensure!(data["excess"] == 1, "excess {}", data["excess"]);
    ensure!(
        data["excess_module"]["generator_degrees"] == serde_json::json!([1]),
        "E_W generator degrees"
    );
    let v = verdict(&report);
    ensure!(v["pass"] == true && rows_equal(v) && checks_pass(v), "verdict failed");
    let (tor1, ew) = row(v, "Tor", 1).ok_or("no q = 1 row")?;
    // O_W(-1) with W a line in the plane: nothing in degree 0, one in each degree after.
    let expect: Vec<u64> = (0..=12).map(|d| u64::from(d >= 1)).collect();
    ensure!(tor1 == expect && ew == expect, "Tor_1 {tor1:?}, E_W {ew:?}");
    let (tor2, _) = row(v, "Tor", 2).ok_or("no q = 2 row")?;
    ensure!(tor2.iter().all(|&x| x == 0), "Tor_2 = {tor2:?}");
    Ok("e = 1, Tor_1 = O_W(-1), Tor_2 = 0".into())
}

fn c3_planes() -> Outcome {
    let (code, report) = exint_json(&["excess-check", &scenario("planes.scn"), "planes"]);
    ensure!(code == 0, "exit code {code}");
    let data = &report["results"][0]["data"];
    ensure!(data["excess"] == 1, "excess {}", data["excess"]);
    ensure!(data["excess_module"]["free"] == true, "E_W not free");
    let v = verdict(&report);
    ensure!(v["pass"] == true && rows_equal(v) && checks_pass(v), "verdict failed");
    for q in 0..=2u64 {
        let name = format!("rank of ∧^{q} E_W");
        let c = v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name.as_str())
            .ok_or(format!("missing check {name}"))?;
        let want = format!("C(1,{q}) = {}", binomial(1, q));
        let detail = c["detail"].as_str().unwrap_or("");
        ensure!(c["pass"] == true && detail.ends_with(&want), "{name}: {detail}");
        ensure!(
            detail.starts_with(&format!("generators: {}", binomial(1, q))),
            "{name}: {detail}"
        );
    }
    Ok("e = 1, ranks C(1,q) = 1, 1, 0".into())
}

fn tor_rows(path: &str, inst: &str) -> Result<Vec<Value>, String> {
    let (code, report) = exint_json(&["--degree-bound", "6", "tor", path, inst]);
    ensure!(code == 0, "tor exit code {code}");
    Ok(report["results"][0]["data"]["tor"]
        .as_array()
        .cloned()
        .unwrap_or_default())
}

fn independent(path: &str, a: &str, b: &str) -> Result<bool, String> {
    let (code, report) = exint_json(&["independent", path, a, b]);
    ensure!(code == 0, "independent exit code {code}");
    report["results"][0]["data"]["independent"]
        .as_bool()
        .ok_or("no flag".into())
}

fn c4_tor_independence() -> Outcome {
    let t = scenario("transversal.scn");
    ensure!(independent(&t, "A", "B")?, "transversal lines not independent");
    for r in tor_rows(&t, "transversal")? {
        let q = r["q"].as_i64().unwrap();
        if (1..=2).contains(&q) {
            ensure!(r["module"]["zero"] == true, "Tor_{q} nonzero for transversal lines");
        }
    }
    ensure!(independent(&t, "A", "R")?, "flat factor not independent");
    let d = scenario("doubleline.scn");
    ensure!(!independent(&d, "L", "L")?, "double line reported independent");
    let rows = tor_rows(&d, "doubleline")?;
    let tor1 = rows.iter().find(|r| r["q"] == 1).ok_or("no Tor_1")?;
    ensure!(tor1["module"]["zero"] == false, "double line Tor_1 vanishes");
    Ok("transversal: true, flat: true, double line: false".into())
}

fn is_signed_perm(m: &[Vec<Polynomial>], n: usize) -> bool {
    let mut row_hits = vec![0; n];
    for j in 0..n {
        let mut hits = 0;
        for (i, r) in m.iter().enumerate() {
            let e = &r[j];
            if e.is_zero() {
                continue;
            }
            let unit = e.as_nonzero_constant().is_some_and(|c| c.is_one() || (-c).is_one());
            if !unit {
                return false;
            }
            hits += 1;
            row_hits[i] += 1;
        }
        if hits != 1 {
            return false;
        }
    }
    m.len() == n && row_hits.iter().all(|&h| h == 1)
}

fn check_iso(phi: &[FreeModuleMap], src: &ChainComplex, tgt: &ChainComplex) -> Result<(), String> {
    let ring = src.ring();
    let zero = Polynomial::zero(ring);
    ensure!(phi.len() as i64 == src.hi() + 1, "wrong number of components");
    for (n, f) in phi.iter().enumerate() {
        let n = n as i64;
        let (rs, rt) = (src.rank(n), tgt.rank(n));
        ensure!(
            rs == rt && f.ncols() == rs && f.nrows() == rt,
            "ranks differ in degree {n}"
        );
        let m = dense(f);
        ensure!(is_signed_perm(&m, rs), "phi_{n} is not a signed permutation");
        if let (Some(ds), Some(dt)) = (src.module(n).degrees().map(<[i32]>::to_vec), tgt.module(n).degrees()) {
            for (i, r) in m.iter().enumerate() {
                for (j, e) in r.iter().enumerate() {
                    ensure!(e.is_zero() || ds[j] == dt[i], "phi_{n} moves degrees");
                }
            }
        }
        if n == 0 {
            continue;
        }
        let left = matmul(&dense(&tgt.differential(n)), &m, rt, rs, &zero);
        let prev = dense(&phi[n as usize - 1]);
        let right = matmul(&prev, &dense(&src.differential(n)), src.rank(n - 1), rs, &zero);
        ensure!(left == right, "d phi_{n} != phi_{} d", n - 1);
    }
    Ok(())
}

fn c5_koszul_tensor_iso() -> Outcome {
    let mut corpus = Corpus::new(5);
    let mut splits = 0;
    for _ in 0..20 {
        let nvars = corpus.range(2, 4);
        let ring = corpus.ring(nvars);
        let n = corpus.range(2, 6);
        let seq = corpus.sequence(&ring, n, 2);
        for k in 0..=n {
            let (fs, gs) = seq.split_at(k);
            let phi = koszul_tensor_iso(&ring, fs, gs).map_err(|e| e.to_string())?;
            let src = tensor_complexes(
                &KoszulData::new(&ring, fs.to_vec()).unwrap().complex(),
                &KoszulData::new(&ring, gs.to_vec()).unwrap().complex(),
            )
            .map_err(|e| e.to_string())?;
            let tgt = koszul_complex(&seq).map_err(|e| e.to_string())?;
            check_iso(&phi, &src, &tgt)?;
            splits += 1;
        }
    }
    Ok(format!("{splits} splits over 20 instances"))
}

fn c6_regularity_oracles() -> Outcome {
    let mut corpus = Corpus::new(6);
    let mut regular = 0;
    for i in 0..50 {
        let nvars = corpus.range(1, 3);
        let ring = corpus.ring(nvars);
        let len = corpus.range(1, 3);
        let fs = corpus.sequence(&ring, len, 2);
        let r = is_regular_sequence(&fs).map_err(|e| e.to_string())?;
        let height = r.height.ok_or(format!("sequence {i}: height oracle did not run"))?;
        ensure!(
            r.koszul == height,
            "sequence {i}: Koszul {} vs height {height}",
            r.koszul
        );
        regular += usize::from(r.koszul);
    }
    Ok(format!("50/50 agree, {regular} regular"))
}

fn c7_zero_padding() -> Outcome {
    let ring = PolyRing::rational(&["x", "y", "z"]);
    let bound = 12;
    for r in 1..=2usize {
        let mut fs = vec![
            parse_polynomial("x", &ring).unwrap(),
            parse_polynomial("y", &ring).unwrap(),
        ];
        fs.extend(std::iter::repeat_n(Polynomial::zero(&ring), r));
        let degrees = vec![1; fs.len()];
        let k = koszul_complex_with_degrees(&fs, &degrees).map_err(|e| e.to_string())?;
        for q in 0..=(2 + r) as i64 {
            // Q[z] has one monomial per degree; the q-th wedge of the padding sits in degree q.
            let want: Vec<u64> = (0..=bound)
                .map(|d| {
                    if d >= q as usize {
                        binomial(r as u64, q as u64)
                    } else {
                        0
                    }
                })
                .collect();
            let by_rank = homology_hilbert(&k, q, bound).map_err(|e| e.to_string())?;
            let module = homology(&k, q).map_err(|e| e.to_string())?;
            let by_module = hilbert_function(&module, bound).map_err(|e| e.to_string())?;
            ensure!(
                by_rank.values() == want.as_slice(),
                "r = {r}, q = {q}: {by_rank} vs {want:?}"
            );
            ensure!(
                by_module.values() == want.as_slice(),
                "r = {r}, q = {q}: module {by_module}"
            );
        }
    }
    Ok("r = 1, 2 for all q".into())
}

fn c8_les() -> Outcome {
    for (file, inst) in [("doubleline.scn", "doubleline"), ("planes.scn", "planes")] {
        let (code, report) = exint_json(&["--degree-bound", "10", "les-check", &scenario(file), inst]);
        ensure!(code == 0, "{inst}: exit code {code}");
        let v = verdict(&report);
        ensure!(v["degree_bound"] == 10, "{inst}: bound");
        ensure!(
            v["pass"] == true && rows_equal(v) && checks_pass(v),
            "{inst}: verdict failed"
        );
        let names: Vec<&str> = v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter_map(|c| c["name"].as_str())
            .collect();
        ensure!(
            names.contains(&"alternating sum vanishes"),
            "{inst}: no exactness check"
        );
        ensure!(
            names.iter().any(|n| n.contains("injective")),
            "{inst}: no injectivity check"
        );
        let quotient = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r["label"].as_str().unwrap().starts_with("A_q"))
            .count();
        ensure!(quotient > 0, "{inst}: no quotient rows");
    }
    Ok("double line and planes to D = 10".into())
}

fn assert_dd_zero(c: &ChainComplex, what: &str) -> Result<(), String> {
    let zero = Polynomial::zero(c.ring());
    for q in c.lo() + 2..=c.hi() {
        let p = matmul(
            &dense(&c.differential(q - 1)),
            &dense(&c.differential(q)),
            c.rank(q - 1),
            c.rank(q),
            &zero,
        );
        ensure!(
            p.iter().flatten().all(Polynomial::is_zero),
            "{what}: d_{} d_{q} != 0",
            q - 1
        );
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn c9_engine_invariants() -> Outcome {
    let (mut complexes, mut bases, mut perms) = (0, 0, 0);
    for path in bundled() {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let sc = Scenario::parse(&std::fs::read_to_string(&path).unwrap()).map_err(|e| format!("{name}: {e:?}"))?;
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let ring = sc.ring(Some(order)).map_err(|e| format!("{name}: {e:?}"))?;
            for spec in &sc.ideals {
                let ideal = sc.ideal(&ring, &spec.name).unwrap();
                ensure!(
                    ideal.groebner().s_pairs_reduce_to_zero(),
                    "{name}/{}: S-pairs",
                    spec.name
                );
                bases += 1;
                if order == MonomialOrder::Lex || ideal.gens().is_empty() {
                    continue;
                }
                assert_dd_zero(&koszul_complex(ideal.gens()).unwrap(), &spec.name)?;
                assert_dd_zero(&free_resolution(&ideal, 3).unwrap(), &spec.name)?;
                complexes += 2;
            }
        }
        let ring = sc.ring(None).unwrap();
        for inst in &sc.instances {
            let ys: Vec<CIVariety> = inst
                .ideals
                .iter()
                .enumerate()
                .map(|(i, n)| CIVariety::new(&format!("{n}{i}"), &ring, sc.generators(&ring, n).unwrap()).unwrap())
                .collect();
            let ks: Vec<ChainComplex> = ys
                .iter()
                .filter(|y| y.codim() > 0)
                .map(|y| koszul_complex(y.generators()).unwrap())
                .collect();
            let t = tensor_all(&ks).map_err(|e| e.to_string())?;
            assert_dd_zero(&t, &inst.name)?;
            complexes += 1;
            if ys.len() > 3 {
                continue;
            }
            let total: usize = ys.iter().map(CIVariety::codim).sum();
            let reference: Vec<Vec<u64>> = (0..=total as i64 + 1)
                .map(|q| {
                    hilbert_function(&multitor(&ys, q).unwrap(), 6)
                        .unwrap()
                        .values()
                        .to_vec()
                })
                .collect();
            for p in permutations(ys.len()) {
                let permuted: Vec<CIVariety> = p.iter().map(|&i| ys[i].clone()).collect();
                for (q, want) in reference.iter().enumerate() {
                    let got = hilbert_function(&multitor(&permuted, q as i64).unwrap(), 6).unwrap();
                    ensure!(
                        got.values() == want.as_slice(),
                        "{}: permutation {p:?} changes Tor_{q}",
                        inst.name
                    );
                }
                perms += 1;
            }
            let w = IntersectionInstance::new(&inst.name, ys, sc.w_generators(&ring, inst).unwrap());
            ensure!(w.is_ok(), "{}: instance", inst.name);
        }
    }
    let gb = exint(&["--json", "gb", &scenario("planes.scn"), "Y1"]);
    ensure!(
        gb.stdout.contains("\"s_pairs_reduce_to_zero\": true"),
        "emitted GB not certified"
    );
    Ok(format!("{bases} bases, {complexes} complexes, {perms} permutations"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("self-intersection of a point in the plane", c1_self_intersection, 1),
        ("excess formula, double line", c2_double_line, 1),
        ("excess formula, planes in 4-space", c3_planes, 10),
        ("Tor-independence", c4_tor_independence, 1),
        ("Koszul tensor isomorphism", c5_koszul_tensor_iso, 30),
        ("regularity oracle agreement", c6_regularity_oracles, 60),
        ("zero-padded Koszul homology", c7_zero_padding, 5),
        ("long exact sequence", c8_les, 20),
        ("engine invariants", c9_engine_invariants, 300),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = t.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err(format!("over the {limit} s limit")),
            r => r,
        };
        let secs = elapsed.as_secs_f64();
        match result {
            Ok(note) => println!("criterion {}: {name} ... PASS ({secs:.3} s < {limit} s; {note})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: {name} ... FAIL ({secs:.3} s; {why})", i + 1);
            }
        }
    }
    let total = start.elapsed().as_secs_f64();
    println!(
        "acceptance: {} passed, {failed} failed in {total:.2} s",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

use serde_json::{json, Value};

use crate::complexes::{homology, koszul_complex};
use crate::error::Error;
use crate::intersect::{
    excess_module, is_regular_sequence, is_tor_independent, les_verify, multitor, verify_excess_formula,
    verify_self_intersection, CIVariety, IntersectionInstance, TorFactor, Verdict,
};
use crate::modules::{hilbert_function, is_zero_module, FPModule};
use crate::ring::{MonomialOrder, RingRef};

use super::report::{ResultEntry, Status};
use super::{Command, Scenario};

fn entry(command: &str, target: &str, status: Status, data: Value, text: Vec<String>) -> ResultEntry {
    ResultEntry {
        command: command.to_string(),
        target: target.to_string(),
        degree_bound: None,
        status,
        data,
        text,
        warnings: Vec::new(),
    }
}

fn variety(s: &Scenario, ring: &RingRef, name: &str) -> Result<CIVariety, String> {
    let gens = s.generators(ring, name).map_err(|e| e.to_string())?;
    CIVariety::new(name, ring, gens).map_err(|e| e.to_string())
}

fn instance(s: &Scenario, ring: &RingRef, name: &str) -> Result<IntersectionInstance, String> {
    let spec = s
        .instance_spec(name)
        .ok_or_else(|| format!("unknown instance `{name}`"))?;
    let ys = spec
        .ideals
        .iter()
        .map(|i| variety(s, ring, i))
        .collect::<Result<Vec<_>, _>>()?;
    let w = s.w_generators(ring, spec).map_err(|e| e.to_string())?;
    IntersectionInstance::new(name, ys, w).map_err(|e| e.to_string())
}

fn module_json(m: &FPModule, bound: usize) -> Result<(Value, String), Error> {
    let zero = is_zero_module(m);
    let hf = if m.is_graded() {
        Some(hilbert_function(m, bound)?)
    } else {
        None
    };
    let summary = match (&hf, zero) {
        (_, true) => "0".to_string(),
        (Some(h), false) => format!("HF {h}"),
        (None, false) => format!("nonzero, {} generators", m.num_generators()),
    };
    let value = json!({
        "zero": zero,
        "generators": m.num_generators(),
        "generator_degrees": m.generator_degrees(),
        "hilbert": hf,
    });
    Ok((value, summary))
}

fn verdict_text(v: &Verdict) -> Vec<String> {
    let mut out = Vec::new();
    if v.vacuous {
        out.push("vacuous: the intersection is empty".to_string());
    }
    for r in &v.rows {
        let mark = if r.equal { "=" } else { "≠" };
        let mut line = format!("q={} {}: {} {mark} {}", r.q, r.label, r.lhs, r.rhs);
        if let Some(s) = r.shift {
            line.push_str(&format!(" (shift {s})"));
        }
        out.push(line);
    }
    for c in &v.checks {
        out.push(format!(
            "{}: {} ({})",
            c.name,
            if c.pass { "ok" } else { "FAILED" },
            c.detail
        ));
    }
    out.extend(v.diagnostics.iter().cloned());
    out
}

fn verdict_entry(command: &str, target: &str, v: Verdict, extra: Value) -> Result<ResultEntry, String> {
    let status = if v.pass { Status::Pass } else { Status::Fail };
    let text = verdict_text(&v);
    let warnings = v
        .shift_discrepancies()
        .map(|r| {
            format!(
                "{} (q = {}) differs by a degree shift of {}",
                r.label,
                r.q,
                r.shift.unwrap_or(0)
            )
        })
        .collect();
    let mut data = json!({ "verdict": v });
    if let (Value::Object(d), Value::Object(e)) = (&mut data, extra) {
        d.extend(e);
    }
    let mut e = entry(command, target, status, data, text);
    e.degree_bound = Some(v.degree_bound);
    e.warnings = warnings;
    Ok(e)
}

pub(super) fn dispatch(
    s: &Scenario,
    order: Option<MonomialOrder>,
    cmd: &Command,
    bound: usize,
) -> Result<ResultEntry, String> {
    let ring = s.ring(order).map_err(|e| e.to_string())?;
    let err = |e: Error| e.to_string();
    match cmd {
        Command::Gb { ideal, .. } => {
            let i = s.ideal(&ring, ideal).map_err(|e| e.to_string())?;
            let gb = i.groebner();
            let basis: Vec<String> = i.basis().iter().map(ToString::to_string).collect();
            let data = json!({
                "order": ring.order().name(),
                "basis": basis,
                "reduced": gb.is_reduced(),
                "s_pairs_reduce_to_zero": gb.s_pairs_reduce_to_zero(),
            });
            let text = vec![format!("[{}]", basis.join(", "))];
            Ok(entry("gb", ideal, Status::Ok, data, text))
        }
        Command::Dim { ideal, .. } => {
            let i = s.ideal(&ring, ideal).map_err(|e| e.to_string())?;
            let d = i.krull_dimension();
            let h = i.height().ok();
            let data = json!({ "dimension": d, "height": h });
            let text = vec![match h {
                Some(h) => format!("dimension {d}, height {h}"),
                None => "unit ideal, dimension -1".to_string(),
            }];
            Ok(entry("dim", ideal, Status::Ok, data, text))
        }
        Command::Regular { ideal, .. } => {
            let gens = s.generators(&ring, ideal).map_err(|e| e.to_string())?;
            let rep = is_regular_sequence(&gens).map_err(err)?;
            let mut text = vec![format!("regular: {}", rep.is_regular())];
            text.push(format!(
                "koszul oracle: {}{}",
                rep.koszul,
                if rep.nonvanishing.is_empty() {
                    String::new()
                } else {
                    format!(" (homology in degrees {:?})", rep.nonvanishing)
                }
            ));
            text.push(match (rep.height, rep.height_value) {
                (Some(h), Some(v)) => format!("height oracle: {h} (height {v}, length {})", gens.len()),
                _ => "height oracle: not applicable (inhomogeneous)".to_string(),
            });
            let mut e = entry(
                "regular",
                ideal,
                Status::Ok,
                json!({
                    "regular": rep.is_regular(),
                    "koszul": rep.koszul,
                    "height_oracle": rep.height,
                    "height": rep.height_value,
                    "nonvanishing": rep.nonvanishing,
                    "oracles_agree": rep.oracles_agree(),
                }),
                text,
            );
            if !rep.oracles_agree() {
                e.warnings.push("the Koszul and height oracles disagree".into());
            }
            Ok(e)
        }
        Command::Koszul {
            ideal,
            homology: with_h,
            ..
        } => {
            let gens = s.generators(&ring, ideal).map_err(|e| e.to_string())?;
            let k = koszul_complex(&gens).map_err(err)?;
            let ranks: Vec<usize> = (k.lo()..=k.hi()).map(|q| k.rank(q)).collect();
            let mut text = vec![format!("ranks {ranks:?}")];
            let mut diffs = Vec::new();
            for q in k.lo() + 1..=k.hi() {
                let d = k.differential(q);
                let rows: Vec<Vec<String>> = (0..d.nrows())
                    .map(|i| (0..d.ncols()).map(|j| d.entry(i, j).to_string()).collect())
                    .collect();
                let shown: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                text.push(format!("d_{q} = [{}]", shown.join(", ")));
                diffs.push(json!({ "q": q, "rows": rows }));
            }
            let mut data = json!({ "ranks": ranks, "differentials": diffs });
            if *with_h {
                let mut hs = Vec::new();
                for q in k.lo()..=k.hi() {
                    let (v, summary) = module_json(&homology(&k, q).map_err(err)?, bound).map_err(err)?;
                    text.push(format!("H_{q}: {summary}"));
                    hs.push(json!({ "q": q, "module": v }));
                }
                data["homology"] = Value::Array(hs);
            }
            let mut e = entry("koszul", ideal, Status::Ok, data, text);
            e.degree_bound = with_h.then_some(bound);
            Ok(e)
        }
        Command::Tor { instance: name, q, .. } => {
            let inst = instance(s, &ring, name)?;
            let top: i64 = inst.varieties().iter().map(|y| y.codim() as i64).sum();
            let qs: Vec<i64> = match q {
                Some(q) => vec![*q],
                None => (0..=top).collect(),
            };
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for q in qs {
                let m = multitor(inst.varieties(), q).map_err(err)?;
                let (v, summary) = module_json(&m, bound).map_err(err)?;
                text.push(format!("Tor_{q}: {summary}"));
                rows.push(json!({ "q": q, "module": v }));
            }
            let mut e = entry("tor", name, Status::Ok, json!({ "tor": rows }), text);
            e.degree_bound = Some(bound);
            Ok(e)
        }
        Command::Independent { a, b, .. } => {
            let factor = |name: &str| -> Result<(TorFactor, &'static str), String> {
                let gens = s.generators(&ring, name).map_err(|e| e.to_string())?;
                match CIVariety::new(name, &ring, gens.clone()) {
                    Ok(y) => Ok((TorFactor::Variety(y), "complete intersection")),
                    Err(Error::Certification(_)) => {
                        Ok((TorFactor::Ideal(crate::groebner::Ideal::new(&ring, gens)), "ideal"))
                    }
                    Err(e) => Err(e.to_string()),
                }
            };
            let (fa, ka) = factor(a)?;
            let (fb, kb) = factor(b)?;
            let ind = is_tor_independent(&fa, &fb).map_err(err)?;
            let target = format!("{a} {b}");
            let text = vec![format!("independent: {ind} ({a}: {ka}, {b}: {kb})")];
            Ok(entry(
                "independent",
                &target,
                Status::Ok,
                json!({ "independent": ind, "kinds": [ka, kb] }),
                text,
            ))
        }
        Command::SelfCheck { ideal, .. } => {
            let y = variety(s, &ring, ideal)?;
            let v = verify_self_intersection(&y, bound).map_err(err)?;
            verdict_entry("self-check", ideal, v, json!({ "codim": y.codim() }))
        }
        Command::ExcessCheck { instance: name, .. } => {
            let inst = instance(s, &ring, name)?;
            let v = verify_excess_formula(&inst, bound).map_err(err)?;
            let extra = match inst.w() {
                Some(w) => {
                    let ew = excess_module(&inst).map_err(err)?;
                    json!({
                        "excess": inst.excess(),
                        "w_generators": w.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "excess_module": {
                            "generators": ew.num_generators(),
                            "generator_degrees": ew.generator_degrees(),
                            "free": ew.is_free_over(w.ideal()),
                        },
                    })
                }
                None => json!({ "excess": null }),
            };
            let mut e = verdict_entry("excess-check", name, v, extra)?;
            if let Some(x) = inst.excess() {
                e.text.insert(0, format!("excess codimension e = {x}"));
            }
            Ok(e)
        }
        Command::LesCheck { instance: name, .. } => {
            let inst = instance(s, &ring, name)?;
            let v = les_verify(&inst, bound).map_err(err)?;
            verdict_entry("les-check", name, v, json!({}))
        }
        Command::Run { .. } | Command::GenCorpus { .. } => Err("not a scenario query".into()),
    }
}

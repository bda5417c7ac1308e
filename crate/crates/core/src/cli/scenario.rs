//! Scenario files: a line-oriented text form and an equivalent JSON form.
//!
//! ```text
//! field Q
//! vars x, y
//! order grevlex
//! ideal L = [x]
//! instance doubleline = { ideals: [L, L], w: [x] }
//! check excess-check doubleline
//! ```

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::groebner::Ideal;
use crate::ring::{parse_polynomial, Field, MonomialOrder, PolyRing, Polynomial, RingRef};

/// A problem in a scenario file, with the 1-based line when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioError {
    pub line: Option<usize>,
    pub message: String,
}

impl ScenarioError {
    fn at(line: usize, message: impl Into<String>) -> ScenarioError {
        ScenarioError {
            line: Some(line),
            message: message.into(),
        }
    }

    fn general(message: impl Into<String>) -> ScenarioError {
        ScenarioError {
            line: None,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScenarioError { line: Some(l), message } => write!(f, "line {l}: {message}"),
            ScenarioError { line: None, message } => write!(f, "{message}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub name: String,
    pub gens: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub name: String,
    pub ideals: Vec<String>,
    pub w: Option<Vec<String>>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSpec {
    pub words: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub field: Field,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub seed: Option<u64>,
    pub ideals: Vec<IdealSpec>,
    pub instances: Vec<InstanceSpec>,
    pub checks: Vec<CheckSpec>,
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "Q" | "QQ" => Ok(Field::Rational),
        _ => {
            let p: u64 = s
                .parse()
                .map_err(|_| format!("unknown field `{s}` (expected Q or a prime)"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

pub fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    match s {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => Err(format!("unknown monomial order `{s}` (expected grevlex or lex)")),
    }
}

fn is_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

/// `[a, b, c]` into its trimmed entries.
fn bracket_list(s: &str) -> Option<Vec<String>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?.trim();
    if inner.is_empty() {
        return Some(Vec::new());
    }
    Some(inner.split(',').map(|x| x.trim().to_string()).collect())
}

/// `NAME = REST`.
fn definition(rest: &str) -> Option<(&str, &str)> {
    let (name, body) = rest.split_once('=')?;
    Some((name.trim(), body.trim()))
}

fn instance_body(body: &str) -> Result<(Vec<String>, Option<Vec<String>>), String> {
    let inner = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or("instance body must be enclosed in { }")?;
    let mut ideals = None;
    let mut w = None;
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let (key, after) = rest.split_once(':').ok_or("expected `key: [...]`")?;
        let after = after.trim_start();
        let close = after.find(']').ok_or("unterminated list")?;
        let list = bracket_list(&after[..=close]).ok_or("expected a bracketed list")?;
        match key.trim() {
            "ideals" => ideals = Some(list),
            "w" => w = Some(list),
            other => return Err(format!("unknown instance key `{other}`")),
        }
        rest = after[close + 1..].trim_start().trim_start_matches(',').trim_start();
    }
    Ok((ideals.ok_or("instance needs `ideals: [...]`")?, w))
}

impl Scenario {
    /// Text or JSON, decided by the first non-blank character.
    pub fn parse(src: &str) -> Result<Scenario, ScenarioError> {
        if src.trim_start().starts_with('{') {
            Scenario::parse_json(src)
        } else {
            Scenario::parse_text(src)
        }
    }

    pub fn parse_text(src: &str) -> Result<Scenario, ScenarioError> {
        let mut field = None;
        let mut vars = None;
        let mut order = MonomialOrder::GrevLex;
        let mut seed = None;
        let mut ideals: Vec<IdealSpec> = Vec::new();
        let mut instances: Vec<InstanceSpec> = Vec::new();
        let mut checks = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "field" => field = Some(parse_field(rest).map_err(|m| ScenarioError::at(n, m))?),
                "vars" => {
                    let v: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
                    if v.iter().any(String::is_empty) {
                        return Err(ScenarioError::at(n, "empty variable name"));
                    }
                    vars = Some(v);
                }
                "order" => order = parse_order(rest).map_err(|m| ScenarioError::at(n, m))?,
                "seed" => {
                    seed = Some(
                        rest.parse()
                            .map_err(|_| ScenarioError::at(n, format!("bad seed `{rest}`")))?,
                    )
                }
                "ideal" => {
                    let (name, body) =
                        definition(rest).ok_or_else(|| ScenarioError::at(n, "expected `ideal NAME = [...]`"))?;
                    if !is_name(name) {
                        return Err(ScenarioError::at(n, format!("bad ideal name `{name}`")));
                    }
                    if ideals.iter().any(|d| d.name == name) {
                        return Err(ScenarioError::at(n, format!("ideal `{name}` defined twice")));
                    }
                    let gens = bracket_list(body)
                        .ok_or_else(|| ScenarioError::at(n, "expected a bracketed generator list"))?;
                    ideals.push(IdealSpec {
                        name: name.to_string(),
                        gens,
                        line: n,
                    });
                }
                "instance" => {
                    let (name, body) =
                        definition(rest).ok_or_else(|| ScenarioError::at(n, "expected `instance NAME = { ... }`"))?;
                    if !is_name(name) {
                        return Err(ScenarioError::at(n, format!("bad instance name `{name}`")));
                    }
                    if instances.iter().any(|d| d.name == name) {
                        return Err(ScenarioError::at(n, format!("instance `{name}` defined twice")));
                    }
                    let (ids, w) = instance_body(body).map_err(|m| ScenarioError::at(n, m))?;
                    instances.push(InstanceSpec {
                        name: name.to_string(),
                        ideals: ids,
                        w,
                        line: n,
                    });
                }
                "check" => {
                    let words: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if words.is_empty() {
                        return Err(ScenarioError::at(n, "empty check"));
                    }
                    checks.push(CheckSpec { words, line: n });
                }
                other => return Err(ScenarioError::at(n, format!("unknown keyword `{other}`"))),
            }
        }
        let s = Scenario {
            field: field.unwrap_or(Field::Rational),
            vars: vars.ok_or_else(|| ScenarioError::general("missing `vars` line"))?,
            order,
            seed,
            ideals,
            instances,
            checks,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn parse_json(src: &str) -> Result<Scenario, ScenarioError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Inst {
            ideals: Vec<String>,
            #[serde(default)]
            w: Option<Vec<String>>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum FieldSpec {
            Name(String),
            Prime(u64),
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Doc {
            #[serde(default)]
            field: Option<FieldSpec>,
            vars: Vec<String>,
            #[serde(default)]
            order: Option<String>,
            #[serde(default)]
            seed: Option<u64>,
            #[serde(default)]
            ideals: BTreeMap<String, Vec<String>>,
            #[serde(default)]
            instances: BTreeMap<String, Inst>,
            #[serde(default)]
            checks: Vec<String>,
        }
        let doc: Doc = serde_json::from_str(src).map_err(|e| ScenarioError::at(e.line(), e.to_string()))?;
        let field = match doc.field {
            None => Field::Rational,
            Some(FieldSpec::Name(s)) => parse_field(&s).map_err(ScenarioError::general)?,
            Some(FieldSpec::Prime(p)) => parse_field(&p.to_string()).map_err(ScenarioError::general)?,
        };
        let order = match doc.order {
            None => MonomialOrder::GrevLex,
            Some(o) => parse_order(&o).map_err(ScenarioError::general)?,
        };
        let s = Scenario {
            field,
            vars: doc.vars,
            order,
            seed: doc.seed,
            ideals: doc
                .ideals
                .into_iter()
                .map(|(name, gens)| IdealSpec { name, gens, line: 0 })
                .collect(),
            instances: doc
                .instances
                .into_iter()
                .map(|(name, i)| InstanceSpec {
                    name,
                    ideals: i.ideals,
                    w: i.w,
                    line: 0,
                })
                .collect(),
            checks: doc
                .checks
                .into_iter()
                .map(|c| CheckSpec {
                    words: c.split_whitespace().map(str::to_string).collect(),
                    line: 0,
                })
                .collect(),
        };
        s.validate()?;
        Ok(s)
    }

    fn err(line: usize, msg: String) -> ScenarioError {
        if line == 0 {
            ScenarioError::general(msg)
        } else {
            ScenarioError::at(line, msg)
        }
    }

    /// Every name resolves and every polynomial parses.
    fn validate(&self) -> Result<(), ScenarioError> {
        let ring = self.ring(None)?;
        for d in &self.ideals {
            self.parse_gens(&ring, &d.gens, d.line, &d.name)?;
        }
        for inst in &self.instances {
            if inst.ideals.is_empty() {
                return Err(Scenario::err(
                    inst.line,
                    format!("instance `{}` lists no ideals", inst.name),
                ));
            }
            for name in &inst.ideals {
                if self.ideal_spec(name).is_none() {
                    return Err(Scenario::err(
                        inst.line,
                        format!("unknown ideal `{name}` in instance `{}`", inst.name),
                    ));
                }
            }
            if let Some(w) = &inst.w {
                self.parse_gens(&ring, w, inst.line, &inst.name)?;
            }
        }
        Ok(())
    }

    pub fn ring(&self, order: Option<MonomialOrder>) -> Result<RingRef, ScenarioError> {
        PolyRing::new(self.field, self.vars.iter().cloned(), order.unwrap_or(self.order))
            .map_err(|e| ScenarioError::general(e.to_string()))
    }

    fn parse_gens(
        &self,
        ring: &RingRef,
        gens: &[String],
        line: usize,
        owner: &str,
    ) -> Result<Vec<Polynomial>, ScenarioError> {
        gens.iter()
            .map(|g| parse_polynomial(g, ring).map_err(|e| Scenario::err(line, format!("in `{owner}`, `{g}`: {e}"))))
            .collect()
    }

    pub fn ideal_spec(&self, name: &str) -> Option<&IdealSpec> {
        self.ideals.iter().find(|d| d.name == name)
    }

    pub fn instance_spec(&self, name: &str) -> Option<&InstanceSpec> {
        self.instances.iter().find(|d| d.name == name)
    }

    /// The generators of a named ideal, in declaration order.
    pub fn generators(&self, ring: &RingRef, name: &str) -> Result<Vec<Polynomial>, ScenarioError> {
        let d = self
            .ideal_spec(name)
            .ok_or_else(|| ScenarioError::general(format!("unknown ideal `{name}`")))?;
        self.parse_gens(ring, &d.gens, d.line, &d.name)
    }

    pub fn ideal(&self, ring: &RingRef, name: &str) -> Result<Ideal, ScenarioError> {
        Ok(Ideal::new(ring, self.generators(ring, name)?))
    }

    /// Designated `W` generators of an instance, if given.
    pub fn w_generators(&self, ring: &RingRef, inst: &InstanceSpec) -> Result<Option<Vec<Polynomial>>, ScenarioError> {
        inst.w
            .as_ref()
            .map(|w| self.parse_gens(ring, w, inst.line, &inst.name))
            .transpose()
    }
}

use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::ring::{Field, MonomialOrder};

use super::{Scenario, EXIT_FAIL, EXIT_PASS};

pub const REPORT_SCHEMA_ID: &str = "exint-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// A query answered; carries no verdict.
    Ok,
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultEntry {
    pub command: String,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
    pub status: Status,
    pub data: serde_json::Value,
    #[serde(skip)]
    pub text: Vec<String>,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct ScenarioInfo {
    sha256: String,
    field: String,
    vars: Vec<String>,
    order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Serialize)]
struct Timings {
    total_us: u64,
    results_us: Vec<u64>,
}

#[derive(Serialize)]
pub struct Report {
    schema: &'static str,
    tool: Tool,
    scenario: ScenarioInfo,
    results: Vec<ResultEntry>,
    warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Timings>,
    #[serde(skip)]
    elapsed: Vec<Duration>,
}

impl Report {
    pub fn new(src: &str, scenario: &Scenario, order: Option<MonomialOrder>) -> Report {
        let sha256 = format!("{:x}", Sha256::digest(src.as_bytes()));
        let mut warnings = Vec::new();
        let field = match scenario.field {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => {
                warnings.push(format!(
                    "coefficient field F_{p}: verdicts are computed outside the characteristic-zero hypotheses"
                ));
                p.to_string()
            }
        };
        Report {
            schema: REPORT_SCHEMA_ID,
            tool: Tool {
                name: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
            },
            scenario: ScenarioInfo {
                sha256,
                field,
                vars: scenario.vars.clone(),
                order: order.unwrap_or(scenario.order).name(),
                seed: scenario.seed,
            },
            results: Vec::new(),
            warnings,
            timings: None,
            elapsed: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: ResultEntry, elapsed: Duration) {
        for w in &entry.warnings {
            self.warnings.push(format!("{} {}: {w}", entry.command, entry.target));
        }
        self.results.push(entry);
        self.elapsed.push(elapsed);
    }

    pub fn results(&self) -> &[ResultEntry] {
        &self.results
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    fn timings(&self) -> Timings {
        let us: Vec<u64> = self.elapsed.iter().map(|d| d.as_micros() as u64).collect();
        Timings {
            total_us: us.iter().sum(),
            results_us: us,
        }
    }

    pub fn to_json(&mut self, timings: bool) -> String {
        self.timings = timings.then(|| self.timings());
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut out = format!(
            "{} {}  scenario {}\n",
            self.tool.name,
            self.tool.version,
            &self.scenario.sha256[..16]
        );
        for (k, r) in self.results.iter().enumerate() {
            let status = match r.status {
                Status::Ok => "ok",
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("\n{} {}: {status}", r.command, r.target));
            if let Some(d) = r.degree_bound {
                out.push_str(&format!(" (degree bound {d})"));
            }
            if timings {
                out.push_str(&format!(" [{:.3} ms]", self.elapsed[k].as_secs_f64() * 1e3));
            }
            out.push('\n');
            for line in &r.text {
                out.push_str("  ");
                out.push_str(line);
                out.push('\n');
            }
        }
        if !self.warnings.is_empty() {
            out.push_str("\nwarnings:\n");
            for w in &self.warnings {
                out.push_str(&format!("  {w}\n"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(status: Status) -> ResultEntry {
        ResultEntry {
            command: "self-check".into(),
            target: "I".into(),
            degree_bound: Some(4),
            status,
            data: serde_json::json!({}),
            text: vec![],
            warnings: vec![],
        }
    }

    #[test]
    fn any_failed_verdict_fails_the_run() {
        let sc = Scenario::parse("vars x\nideal I = [x]\n").unwrap();
        let mut r = Report::new("", &sc, None);
        r.push(entry(Status::Ok), Duration::ZERO);
        r.push(entry(Status::Pass), Duration::ZERO);
        assert_eq!(r.exit_code(), EXIT_PASS);
        r.push(entry(Status::Fail), Duration::ZERO);
        assert_eq!(r.exit_code(), EXIT_FAIL);
        assert!(r.to_text(false).contains("self-check I: FAIL"));
        assert!(r.to_json(false).contains("\"status\": \"fail\""));
    }
}

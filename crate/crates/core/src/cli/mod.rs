//! The `exint` command line: scenario ingestion, command dispatch and
//! reports.
//!
//! Exit codes: 0 for passing verdicts and plain queries, 1 when a verdict
//! fails, 2 for input and certification errors.

mod commands;
mod report;
pub mod scenario;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use report::{Report, ResultEntry, Status, REPORT_SCHEMA_ID};
pub use scenario::{Scenario, ScenarioError};

use crate::modules::DEFAULT_DEGREE_BOUND;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "exint",
    version,
    about = "Multitors, excess modules and intersection-formula checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// Hilbert functions are compared in degrees 0..=D
    #[arg(long, global = true, env = "EXINT_DEGREE_BOUND")]
    pub degree_bound: Option<usize>,
    /// Monomial order, overriding the scenario
    #[arg(long, global = true, value_parser = ["grevlex", "lex"])]
    pub order: Option<String>,
    /// Emit the JSON report
    #[arg(long, global = true)]
    pub json: bool,
    /// Print nothing on success
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Add a timings section to the report
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Reduced Gröbner basis of an ideal
    Gb { scenario: PathBuf, ideal: String },
    /// Krull dimension and height of an ideal
    Dim { scenario: PathBuf, ideal: String },
    /// Regularity of the generator sequence of an ideal
    Regular { scenario: PathBuf, ideal: String },
    /// Koszul complex of the generators of an ideal
    Koszul {
        scenario: PathBuf,
        ideal: String,
        #[arg(long)]
        homology: bool,
    },
    /// Multitor modules of an instance
    Tor {
        scenario: PathBuf,
        instance: String,
        #[arg(long)]
        q: Option<i64>,
    },
    /// Tor-independence of two ideals
    Independent { scenario: PathBuf, a: String, b: String },
    /// Self-intersection formula for an ideal
    SelfCheck { scenario: PathBuf, ideal: String },
    /// Excess intersection formula for an instance
    ExcessCheck { scenario: PathBuf, instance: String },
    /// Long exact sequence check for a two-variety instance
    LesCheck { scenario: PathBuf, instance: String },
    /// Every `check` line of a scenario
    Run { scenario: PathBuf },
    /// Write a seeded random scenario corpus
    GenCorpus {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn scenario(&self) -> Option<&PathBuf> {
        match self {
            Command::Gb { scenario, .. }
            | Command::Dim { scenario, .. }
            | Command::Regular { scenario, .. }
            | Command::Koszul { scenario, .. }
            | Command::Tor { scenario, .. }
            | Command::Independent { scenario, .. }
            | Command::SelfCheck { scenario, .. }
            | Command::ExcessCheck { scenario, .. }
            | Command::LesCheck { scenario, .. }
            | Command::Run { scenario } => Some(scenario),
            Command::GenCorpus { .. } => None,
        }
    }
}

/// What a process run printed and how it should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: String) -> Outcome {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_INPUT,
            };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    if let Command::GenCorpus { seed, count, output } = &cli.command {
        let text = crate::corpus::corpus_scenario(*seed, *count);
        return match output {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Outcome {
                    code: EXIT_PASS,
                    stdout: String::new(),
                    stderr: String::new(),
                },
                Err(e) => Outcome::input_error(format!("{}: {e}", path.display())),
            },
            None => Outcome {
                code: EXIT_PASS,
                stdout: text,
                stderr: String::new(),
            },
        };
    }
    let path = cli.command.scenario().expect("scenario commands");
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(format!("{}: {e}", path.display())),
    };
    let scenario = match Scenario::parse(&src) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(format!("{}: {e}", path.display())),
    };
    let order = cli
        .flags
        .order
        .as_deref()
        .map(|o| scenario::parse_order(o).expect("validated by clap"));
    let mut report = Report::new(&src, &scenario, order);
    let base_bound = cli.flags.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND);

    let jobs: Vec<(Command, usize, Option<usize>)> = match &cli.command {
        Command::Run { .. } => {
            let mut jobs = Vec::new();
            for check in &scenario.checks {
                let mut argv = vec!["exint".to_string(), check.words[0].clone(), "<scenario>".to_string()];
                argv.extend(check.words[1..].iter().cloned());
                match Cli::try_parse_from(&argv) {
                    Ok(c) if !matches!(c.command, Command::Run { .. } | Command::GenCorpus { .. }) => {
                        let bound = c.flags.degree_bound.unwrap_or(base_bound);
                        jobs.push((c.command, bound, Some(check.line)));
                    }
                    Ok(_) => {
                        return Outcome::input_error(format!(
                            "{}: line {}: `{}` cannot be used in a check line",
                            path.display(),
                            check.line,
                            check.words[0]
                        ))
                    }
                    Err(e) => {
                        let first = e.render().to_string();
                        let first = first.lines().next().unwrap_or("invalid check").to_string();
                        return Outcome::input_error(format!("{}: line {}: {first}", path.display(), check.line));
                    }
                }
            }
            jobs
        }
        other => vec![(other.clone(), base_bound, None)],
    };

    for (cmd, bound, line) in jobs {
        let started = std::time::Instant::now();
        match commands::dispatch(&scenario, order, &cmd, bound) {
            Ok(entry) => report.push(entry, started.elapsed()),
            Err(e) => {
                let loc = line.map(|l| format!(" (check on line {l})")).unwrap_or_default();
                return Outcome::input_error(format!("{}{loc}: {e}", path.display()));
            }
        }
    }

    let code = report.exit_code();
    let stdout = if cli.flags.quiet {
        String::new()
    } else if cli.flags.json {
        report.to_json(cli.flags.timings)
    } else {
        report.to_text(cli.flags.timings)
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

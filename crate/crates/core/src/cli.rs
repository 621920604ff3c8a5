//! Batch front end: `analyze`, `audit` and `corpus` subcommands.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::HRep;
use crate::report::{analyze, parse_direction, DirectionChoice, Mode, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_AUDIT_FAILURE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "quasifold", version, about = "Basic Betti and Hodge numbers of symplectic toric quasifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants and construction data of one polytope.
    Analyze(RunArgs),
    /// Like `analyze`, plus every counting audit.
    Audit(RunArgs),
    /// Audit every `*.json` polytope in a directory.
    Corpus(RunArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Polytope file, or a directory for `corpus`.
    pub input: PathBuf,
    /// Explicit generic direction, e.g. "1,2" or "1,1/2+sqrt(5)".
    #[arg(long, conflicts_with = "seed")]
    pub xi: Option<String>,
    /// Start of the deterministic search for a generic direction.
    #[arg(long)]
    pub seed: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunMode {
    Analyze,
    Audit,
    Corpus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub direction: DirectionChoice,
    pub format: Format,
    pub mode: RunMode,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<(RunConfig, Option<PathBuf>)> {
        let (mode, args) = match cli.command {
            Command::Analyze(a) => (RunMode::Analyze, a),
            Command::Audit(a) => (RunMode::Audit, a),
            Command::Corpus(a) => (RunMode::Corpus, a),
        };
        let direction = match (&args.xi, args.seed) {
            (Some(xi), _) => DirectionChoice::Explicit(parse_direction(xi)?),
            (None, Some(seed)) => DirectionChoice::Seed(seed),
            (None, None) => DirectionChoice::default(),
        };
        Ok((
            RunConfig {
                input: args.input,
                direction,
                format: args.format,
                mode,
            },
            args.out,
        ))
    }
}

/// Outcome of a run: exit status and the text to emit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

/// Exit status for a pipeline error. Internal consistency failures count as
/// audit failures; everything else is an input error.
pub fn error_status(e: &Error) -> i32 {
    match e {
        Error::EulerMismatch { .. } | Error::NegativeEntry { .. } | Error::IndexBoundViolation { .. } => {
            EXIT_AUDIT_FAILURE
        }
        _ => EXIT_INPUT_ERROR,
    }
}

pub fn load(path: &Path) -> Result<HRep> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    HRep::from_json(&text)
}

fn run_one(config: &RunConfig, mode: Mode) -> Result<Report> {
    let h = load(&config.input)?;
    Ok(analyze(&h, &config.direction, mode)?.report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub file: String,
    pub pass: bool,
    pub error: Option<String>,
    pub betti: Vec<u64>,
    pub euler: Option<i64>,
    pub failed_audits: Vec<String>,
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn run_corpus(config: &RunConfig) -> Result<Outcome> {
    let entries: Vec<CorpusEntry> = corpus_files(&config.input)?
        .into_iter()
        .map(|path| {
            let file = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let one = RunConfig {
                input: path,
                ..config.clone()
            };
            match run_one(&one, Mode::Audit) {
                Ok(r) => CorpusEntry {
                    file,
                    pass: r.all_pass(),
                    error: None,
                    failed_audits: r.audits.iter().filter(|a| !a.pass).map(|a| a.name.clone()).collect(),
                    betti: r.betti,
                    euler: Some(r.euler),
                },
                Err(e) => CorpusEntry {
                    file,
                    pass: false,
                    error: Some(e.to_string()),
                    betti: Vec::new(),
                    euler: None,
                    failed_audits: Vec::new(),
                },
            }
        })
        .collect();
    let status = if entries.iter().any(|e| e.error.is_some()) {
        EXIT_INPUT_ERROR
    } else if entries.iter().any(|e| !e.pass) {
        EXIT_AUDIT_FAILURE
    } else {
        EXIT_OK
    };
    let output = match config.format {
        Format::Json => serde_json::to_string_pretty(&entries).expect("corpus summary serializes") + "\n",
        Format::Text => {
            let mut out = String::new();
            for e in &entries {
                let verdict = match (&e.error, e.pass) {
                    (Some(_), _) => "ERROR",
                    (None, true) => "pass",
                    (None, false) => "FAIL",
                };
                let betti = e.betti.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                let detail = e.error.clone().unwrap_or_else(|| e.failed_audits.join(","));
                out.push_str(&format!("{verdict:<6} {:<24} b=[{betti}] {detail}\n", e.file));
            }
            let passed = entries.iter().filter(|e| e.pass).count();
            out.push_str(&format!("{passed}/{} passed\n", entries.len()));
            out
        }
    };
    Ok(Outcome { status, output })
}

pub fn run(config: &RunConfig) -> Outcome {
    let result = match config.mode {
        RunMode::Corpus => run_corpus(config),
        RunMode::Analyze | RunMode::Audit => {
            let mode = if config.mode == RunMode::Audit { Mode::Audit } else { Mode::Analyze };
            run_one(config, mode).map(|report| Outcome {
                status: if report.all_pass() { EXIT_OK } else { EXIT_AUDIT_FAILURE },
                output: match config.format {
                    Format::Json => report.to_json() + "\n",
                    Format::Text => report.to_text(),
                },
            })
        }
    };
    result.unwrap_or_else(|e| Outcome {
        status: error_status(&e),
        output: format!("error: {e}\n"),
    })
}

/// Parses `args`, runs, writes the output, and returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
        }
    };
    let (config, out) = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let outcome = run(&config);
    if outcome.status == EXIT_INPUT_ERROR {
        eprint!("{}", outcome.output);
        return outcome.status;
    }
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &outcome.output) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_INPUT_ERROR;
            }
        }
        None => print!("{}", outcome.output),
    }
    outcome.status
}

//! The `arfkit` command-line tool as a library: argument parsing, document
//! loading and report rendering, with all output captured in an [`Outcome`].

pub mod document;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use arfkit_core::quad::MAX_ENUM_CAP;
use arfkit_core::DEFAULT_ENUM_CAP;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::Value;

pub use document::{parse, serialize, InputDocument, ParseError};
use report::{CommandError, Report, Status};

pub const ENUM_CAP_VAR: &str = "ARFKIT_ENUM_CAP";

#[derive(Debug, Parser)]
#[command(name = "arfkit", version, about = "Arf, Brown and Rochlin invariants from JSON documents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Files {
    /// Emit machine-readable JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Input documents (`-` reads standard input).
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Arf invariant of a quadratic space or of a link's Seifert form.
    Arf(Files),
    /// Brown invariant of an enhanced space, a surface or a link.
    Brown(Files),
    /// Isomorphism class of a quadratic space.
    Classify(Files),
    /// Signature, determinant and parity of an integer form.
    Signature(Files),
    /// A characteristic vector and the van der Blij congruence.
    Charvec(Files),
    /// Rochlin invariant from an even unimodular presentation.
    Mu(Files),
    /// Rochlin invariant of integral surgery on a knot.
    SurgeryMu {
        /// Surgery coefficient.
        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        alpha: BigInt,
        #[command(flatten)]
        files: Files,
    },
    /// Closed characteristic-surface congruence.
    VerifyClosed(Files),
    /// Relative characteristic-surface congruence.
    VerifyRelative(Files),
    /// β(L) ≡ 4·Arf(L) + lk(L) mod 8 for Seifert documents, each optionally
    /// followed by a surface document for the same link.
    RelationCheck(Files),
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub enum_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }
}

impl Config {
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(ENUM_CAP_VAR) {
            Err(std::env::VarError::NotPresent) => Ok(Self::default()),
            Err(e) => Err(format!("{ENUM_CAP_VAR}: {e}")),
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(cap) if cap <= MAX_ENUM_CAP => Ok(Self { enum_cap: cap }),
                _ => Err(format!(
                    "{ENUM_CAP_VAR} must be an integer between 0 and {MAX_ENUM_CAP}, got {v:?}"
                )),
            },
        }
    }
}

/// Runs with the enumeration cap taken from the environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Config::from_env() {
        Ok(config) => run_with(args, config),
        Err(msg) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("arfkit: {msg}\n"),
        },
    }
}

pub fn run_with<I, T>(args: I, config: Config) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let cap = config.enum_cap;
    let (name, files) = match &cli.command {
        Command::Arf(f) => ("arf", f),
        Command::Brown(f) => ("brown", f),
        Command::Classify(f) => ("classify", f),
        Command::Signature(f) => ("signature", f),
        Command::Charvec(f) => ("charvec", f),
        Command::Mu(f) => ("mu", f),
        Command::SurgeryMu { files, .. } => ("surgery-mu", files),
        Command::VerifyClosed(f) => ("verify-closed", f),
        Command::VerifyRelative(f) => ("verify-relative", f),
        Command::RelationCheck(f) => ("relation-check", f),
    };
    let loaded: Vec<(String, Result<InputDocument, String>)> = files
        .files
        .iter()
        .map(|p| (display(p), load(p)))
        .collect();
    let results: Vec<(String, Result<Report, String>)> = match &cli.command {
        Command::RelationCheck(_) => relation_items(loaded, cap),
        cmd => loaded
            .into_iter()
            .map(|(path, doc)| {
                let report = doc.and_then(|d| {
                    dispatch(cmd, &d, cap).map_err(|e| e.to_string())
                });
                (path, report)
            })
            .collect(),
    };
    render(name, files.json, results)
}

fn dispatch(cmd: &Command, doc: &InputDocument, cap: usize) -> Result<Report, CommandError> {
    match cmd {
        Command::Arf(_) => report::arf(doc),
        Command::Brown(_) => report::brown(doc, cap),
        Command::Classify(_) => report::classify(doc),
        Command::Signature(_) => report::signature(doc),
        Command::Charvec(_) => report::charvec(doc),
        Command::Mu(_) => report::mu(doc),
        Command::SurgeryMu { alpha, .. } => report::surgery_mu(doc, alpha),
        Command::VerifyClosed(_) => report::verify_closed_cmd(doc),
        Command::VerifyRelative(_) => report::verify_relative_cmd(doc),
        Command::RelationCheck(_) => unreachable!("relation-check pairs documents"),
    }
}

/// Pairs each Seifert document with an immediately following surface
/// document, if any.
fn relation_items(
    loaded: Vec<(String, Result<InputDocument, String>)>,
    cap: usize,
) -> Vec<(String, Result<Report, String>)> {
    let mut out = Vec::new();
    let mut it = loaded.into_iter().peekable();
    while let Some((path, doc)) = it.next() {
        let result = match doc {
            Err(e) => Err(e),
            Ok(InputDocument::Seifert(sd)) => {
                let surface = match it.peek() {
                    Some((_, Ok(InputDocument::Surface(_)))) => match it.next() {
                        Some((spath, Ok(InputDocument::Surface(s)))) => Some((spath, s)),
                        _ => unreachable!(),
                    },
                    _ => None,
                };
                let label = match &surface {
                    Some((spath, _)) => format!("{path} + {spath}"),
                    None => path.clone(),
                };
                let r = report::relation_check(&sd, surface.as_ref().map(|(_, s)| s), cap)
                    .map_err(|e| e.to_string());
                out.push((label, r));
                continue;
            }
            Ok(InputDocument::Surface(_)) => {
                Err("a surface document must follow the seifert document it spans".to_string())
            }
            Ok(other) => Err(CommandError::WrongKind {
                command: "relation-check",
                found: other.kind(),
                expected: "seifert, optionally followed by surface",
            }
            .to_string()),
        };
        out.push((path, result));
    }
    out
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn load(p: &Path) -> Result<InputDocument, String> {
    let text = if p == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| e.to_string())?;
        s
    } else {
        std::fs::read_to_string(p).map_err(|e| format!("cannot read file: {e}"))?
    };
    parse(&text).map_err(|e| e.to_string())
}

fn render(command: &str, json: bool, results: Vec<(String, Result<Report, String>)>) -> Outcome {
    let mut status = Status::Ok;
    let mut stdout = String::new();
    let mut stderr = String::new();
    let many = results.len() > 1;
    let mut values = Vec::new();
    for (path, result) in results {
        match result {
            Ok(report) => {
                status = status.max(report.status);
                if json {
                    let mut fields = report.fields;
                    fields.insert("command".into(), Value::from(command));
                    fields.insert("file".into(), Value::from(path));
                    fields.insert("status".into(), Value::from(report.status as i32));
                    values.push(Value::Object(fields));
                } else {
                    if many {
                        stdout.push_str(&format!("== {path} ==\n"));
                    }
                    for line in &report.lines {
                        stdout.push_str(line);
                        stdout.push('\n');
                    }
                }
            }
            Err(msg) => {
                status = Status::InputError;
                stderr.push_str(&format!("arfkit: {path}: {msg}\n"));
                if json {
                    values.push(serde_json::json!({
                        "command": command,
                        "file": path,
                        "status": Status::InputError as i32,
                        "error": msg,
                    }));
                }
            }
        }
    }
    if json {
        let doc = if many {
            Value::Array(values)
        } else {
            values.pop().unwrap_or(Value::Null)
        };
        stdout = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
        stdout.push('\n');
    }
    Outcome {
        code: status as i32,
        stdout,
        stderr,
    }
}

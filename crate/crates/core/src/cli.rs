//! Command-line front end. [`run`] returns the process exit code.
//!
//! Exit codes: 0 success, 1 invalid input or arguments, 2 internal
//! inconsistency between two computations, 3 `verify` found failures.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::enumerate::{catalog, verify_theorems, EnumerateError, VerificationSummary};
use crate::invariants::{classify_contact, index_oracle, InvariantError};
use crate::poset::{Family, SignedPoset};
use crate::relgraph::RelationGraph;
use crate::report::{analyze, CertificateView, Settings};

pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Jsonl,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Hasse,
    Relation,
}

#[derive(Debug, Parser)]
#[command(
    name = "lieposet",
    version,
    about = "Index, Frobenius and contact classification of type-B/C/D Lie poset algebras"
)]
pub struct Cli {
    /// Random functionals sampled for the index
    #[arg(long, global = true, default_value_t = 8, env = "LIEPOSET_SAMPLES")]
    pub samples: usize,
    /// Random determinants sampled to refute contact
    #[arg(long, global = true, default_value_t = 16)]
    pub det_samples: usize,
    /// Prime modulus for sampling
    #[arg(long, global = true, default_value_t = crate::DEFAULT_PRIME, env = "LIEPOSET_PRIME")]
    pub prime: u64,
    #[arg(long, global = true, default_value_t = 0, env = "LIEPOSET_SEED")]
    pub seed: u64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full classification report for one poset file
    Analyze { file: PathBuf },
    /// Index computations only
    Index { file: PathBuf },
    /// Contact certificate
    Contact { file: PathBuf },
    /// Report for every height-one poset of the given family and rank
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run all cross-checks over every height-one poset
    Verify {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Graphviz source for the Hasse diagram or relation graph
    ExportDot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphKind::Hasse)]
        graph: GraphKind,
    },
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Inconsistent(String),
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Inconsistency(_) => Failure::Inconsistent(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        match e {
            EnumerateError::Analysis { source, code } => match Failure::from(source) {
                Failure::Inconsistent(m) => Failure::Inconsistent(format!("candidate {code}: {m}")),
                Failure::Invalid(m) => Failure::Invalid(format!("candidate {code}: {m}")),
            },
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<SignedPoset, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    SignedPoset::from_json(&text).map_err(|e| Failure::Invalid(e.to_string()))
}

fn json<T: serde::Serialize>(v: &T, pretty: bool) -> String {
    let s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    s.expect("report types serialize")
}

fn verify_text(v: &VerificationSummary) -> String {
    let mut out = format!(
        "family {}  n {}  candidates {}  valid {}  checks {}  failures {}  ({} ms)\n",
        v.family,
        v.n,
        v.candidate_count,
        v.valid_count,
        v.checks_run,
        v.failures.len(),
        v.wall_time_ms
    );
    for (name, count) in &v.checks {
        let failed = v.failures.iter().filter(|f| f.check == *name).count();
        out += &format!("  {name:<20} {count:>8} {failed:>6}\n");
    }
    for f in &v.failures {
        out += &format!("FAIL {} [{}] {}\n", f.code, f.check, f.detail);
    }
    out
}

/// Output text and exit code.
fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    let settings = Settings {
        samples: cli.samples,
        det_samples: cli.det_samples,
        prime: cli.prime,
        seed: cli.seed,
    };
    settings.validate().map_err(Failure::Invalid)?;
    let format = cli.format;
    let text_out = matches!(format, Some(Format::Text));
    let line = |s: String| (s + "\n", 0);

    Ok(match &cli.command {
        Command::Analyze { file } => {
            let report = analyze(&load(file)?, &settings)?;
            if text_out {
                line(report.to_string())
            } else {
                line(json(&report, format != Some(Format::Jsonl)))
            }
        }
        Command::Index { file } => {
            let p = load(file)?;
            let idx = index_oracle(&p, settings.samples, settings.prime, &mut settings.rng())?;
            if !idx.consistent() {
                return Err(Failure::Inconsistent(format!(
                    "index disagreement: {idx:?}"
                )));
            }
            if text_out {
                line(format!(
                    "dim {}  index {}  formula {:?}  m-rank {:?}",
                    idx.dim, idx.oracle, idx.combinatorial, idx.m_rank
                ))
            } else {
                line(json(&idx, format != Some(Format::Jsonl)))
            }
        }
        Command::Contact { file } => {
            let p = load(file)?;
            let cert = classify_contact(
                &p,
                settings.det_samples,
                settings.prime,
                &mut settings.rng(),
            )?;
            let view = CertificateView::from(&cert);
            if text_out {
                line(format!(
                    "{:?} via {:?}{}",
                    view.verdict,
                    view.method,
                    view.form.map(|f| format!(": {f}")).unwrap_or_default()
                ))
            } else {
                line(json(&view, format != Some(Format::Jsonl)))
            }
        }
        Command::Enumerate { family, n, jobs } => {
            let (rows, summary) = catalog(*family, *n, &settings, *jobs)?;
            let mut out = String::new();
            for (_, r) in &rows {
                if text_out {
                    out += &format!(
                        "{:?} dim {} index {} contact {:?}\n",
                        r.relations, r.dim, r.index, r.contact
                    );
                } else {
                    out += &json(r, false);
                    out.push('\n');
                }
            }
            out += &json(&summary, false);
            out.push('\n');
            (out, 0)
        }
        Command::Verify { family, n, jobs } => {
            let v = verify_theorems(*family, *n, &settings, *jobs)?;
            let code = if v.passed() { 0 } else { EXIT_VERIFY_FAILED };
            let body = if text_out {
                verify_text(&v)
            } else {
                json(&v, true) + "\n"
            };
            (body, code)
        }
        Command::ExportDot { file, graph } => {
            let p = load(file)?;
            let dot = match graph {
                GraphKind::Hasse => p.hasse_dot(),
                GraphKind::Relation => RelationGraph::from_poset(&p)
                    .map_err(|e| Failure::Invalid(e.to_string()))?
                    .to_dot(),
            };
            (dot, 0)
        }
    })
}

/// Parse `args` (including the program name) and run.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok((body, code)) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, body.as_bytes()),
                None => stdout.write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INVALID;
            }
            code
        }
        Err(Failure::Invalid(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_INVALID
        }
        Err(Failure::Inconsistent(m)) => {
            let _ = writeln!(stderr, "internal error: {m}");
            EXIT_INCONSISTENT
        }
    }
}

//! The `sigma` command-line tool as a library, so that tests can drive it
//! without spawning processes.

pub mod group_file;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sigma_core::checks::{
    is_sigma_nilpotent, is_sigma_p_permutable, is_sigma_permutable_soluble, is_sigma_soluble,
    is_sigma_subnormal,
};
use sigma_core::least::{least_sigma_nilpotent, least_sigma_p_permutable, least_sigma_soluble};
use sigma_core::{CheckReport, Config, Partition, PermGroup, Section};

use group_file::{parse_group_file, GroupFileError};
use report::{GroupSummary, Report, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sigma",
    version,
    about = "Decide sigma-properties of permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a property at a given partition.
    Check {
        property: CheckKind,
        #[command(flatten)]
        inputs: Inputs,
        /// Partition of the primes of |G:K|, e.g. "2,3|5".
        #[arg(long)]
        sigma: String,
        /// Exit with status 1 when the verdict is false.
        #[arg(long)]
        assert: bool,
    },
    /// Compute the finest partition at which a property holds.
    Least {
        property: LeastKind,
        #[command(flatten)]
        inputs: Inputs,
    },
}

#[derive(Debug, Args)]
struct Inputs {
    /// Group file for G.
    #[arg(long)]
    group: PathBuf,
    /// Group file for the normal subgroup K (default: trivial).
    #[arg(long)]
    normal: Option<PathBuf>,
    /// Group file for the subgroup H.
    #[arg(long)]
    subgroup: Option<PathBuf>,
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
    /// Largest coset action built when computing cores.
    #[arg(long, value_name = "N")]
    max_index: Option<u64>,
    /// Largest group or quotient enumerated element by element.
    #[arg(long, value_name = "N")]
    max_enum: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Nilpotent,
    Soluble,
    Subnormal,
    Ppermutable,
    Permutable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LeastKind {
    Nilpotent,
    Soluble,
    Ppermutable,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Nilpotent => "nilpotent",
            CheckKind::Soluble => "soluble",
            CheckKind::Subnormal => "subnormal",
            CheckKind::Ppermutable => "ppermutable",
            CheckKind::Permutable => "permutable",
        }
    }

    fn needs_subgroup(self) -> bool {
        matches!(
            self,
            CheckKind::Subnormal | CheckKind::Ppermutable | CheckKind::Permutable
        )
    }
}

impl LeastKind {
    fn name(self) -> &'static str {
        match self {
            LeastKind::Nilpotent => "nilpotent",
            LeastKind::Soluble => "soluble",
            LeastKind::Ppermutable => "ppermutable",
        }
    }
}

/// What a run printed and how it exited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum RunError {
    #[error("{0}")]
    File(#[from] GroupFileError),
    #[error("{0}")]
    Library(#[from] sigma_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl RunError {
    fn exit_code(&self) -> i32 {
        match self {
            RunError::Library(e) if e.is_cap() => EXIT_CAP,
            _ => EXIT_INPUT,
        }
    }
}

struct Loaded {
    g: PermGroup,
    k: PermGroup,
    h: Option<PermGroup>,
    normal_given: bool,
    cfg: Config,
}

fn load(inputs: &Inputs, needs_subgroup: bool, command: &str) -> Result<Loaded, RunError> {
    let read = |p: &Path| parse_group_file(p);
    let g = read(&inputs.group)?;
    let k = match &inputs.normal {
        Some(p) => read(p)?,
        None => PermGroup::trivial(g.degree()),
    };
    let h = match (&inputs.subgroup, needs_subgroup) {
        (Some(p), true) => Some(read(p)?),
        (None, true) => return Err(RunError::Usage(format!("`{command}` needs --subgroup"))),
        (Some(_), false) => {
            return Err(RunError::Usage(format!(
                "`{command}` does not take --subgroup"
            )))
        }
        (None, false) => None,
    };
    let mut cfg = Config::default();
    if let Some(n) = inputs.max_index {
        cfg.index_cap = n;
    }
    if let Some(n) = inputs.max_enum {
        cfg.enum_cap = n;
    }
    Ok(Loaded {
        g,
        k,
        h,
        normal_given: inputs.normal.is_some(),
        cfg,
    })
}

fn base_report(command: String, l: &Loaded) -> Report {
    Report {
        schema: SCHEMA_VERSION,
        command,
        group: GroupSummary::of(&l.g),
        normal: l.normal_given.then(|| GroupSummary::of(&l.k)),
        subgroup: l.h.as_ref().map(GroupSummary::of),
        sigma: None,
        verdict: None,
        least: None,
        witness: None,
        millis: 0,
    }
}

fn run_check(
    kind: CheckKind,
    inputs: &Inputs,
    sigma_text: &str,
) -> Result<(Report, CheckReport), RunError> {
    let command = format!("check {}", kind.name());
    let l = load(inputs, kind.needs_subgroup(), &command)?;
    let section = Section::new(l.g.clone(), l.k.clone())?;
    let sigma = Partition::parse(sigma_text, &section.primes())?;
    let start = Instant::now();
    let (g, k, cfg) = (&l.g, &l.k, &l.cfg);
    let result = match (kind, &l.h) {
        (CheckKind::Nilpotent, _) => is_sigma_nilpotent(&section, &sigma)?,
        (CheckKind::Soluble, _) => is_sigma_soluble(&section, &sigma, cfg)?,
        (CheckKind::Subnormal, Some(h)) => is_sigma_subnormal(g, h, k, &sigma, cfg)?,
        (CheckKind::Ppermutable, Some(h)) => is_sigma_p_permutable(g, h, k, &sigma, cfg)?,
        (CheckKind::Permutable, Some(h)) => is_sigma_permutable_soluble(g, h, k, &sigma, cfg)?,
        _ => unreachable!("subgroup presence was validated"),
    };
    let mut report = base_report(command, &l);
    report.millis = start.elapsed().as_millis() as u64;
    report.sigma = Some(sigma.to_string());
    report.verdict = Some(result.verdict);
    report.witness = result.witness.clone();
    Ok((report, result))
}

fn run_least(kind: LeastKind, inputs: &Inputs) -> Result<Report, RunError> {
    let command = format!("least {}", kind.name());
    let l = load(inputs, kind == LeastKind::Ppermutable, &command)?;
    let section = Section::new(l.g.clone(), l.k.clone())?;
    let start = Instant::now();
    let least = match (kind, &l.h) {
        (LeastKind::Nilpotent, _) => least_sigma_nilpotent(&section)?,
        (LeastKind::Soluble, _) => least_sigma_soluble(&section, &l.cfg)?,
        (LeastKind::Ppermutable, Some(h)) => least_sigma_p_permutable(&l.g, h, &l.k, &l.cfg)?,
        _ => unreachable!("subgroup presence was validated"),
    };
    let mut report = base_report(command, &l);
    report.millis = start.elapsed().as_millis() as u64;
    report.least = Some(least.to_string());
    Ok(report)
}

/// Runs the tool on a full argument vector (program name first).
pub fn run<I, T>(args: I) -> Outcome
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
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match cli.command {
        Command::Check {
            property,
            inputs,
            sigma,
            assert,
        } => match run_check(property, &inputs, &sigma) {
            Ok((report, result)) => Outcome {
                code: if assert && !result.verdict {
                    EXIT_FALSE
                } else {
                    EXIT_OK
                },
                stdout: report.render(inputs.json),
                stderr: String::new(),
            },
            Err(e) => Outcome::failure(e.exit_code(), e),
        },
        Command::Least { property, inputs } => match run_least(property, &inputs) {
            Ok(report) => Outcome {
                code: EXIT_OK,
                stdout: report.render(inputs.json),
                stderr: String::new(),
            },
            Err(e) => Outcome::failure(e.exit_code(), e),
        },
    }
}

//! The `qact` command line.
//!
//! Exit codes: 0 when every check passes, 1 on a failing check or a failed
//! computation, 2 on usage errors and malformed input.

mod handlers;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::io::InputHash;
use crate::numlin::Tolerance;
use crate::report::{Check, Report};

#[derive(Debug, Parser)]
#[command(name = "qact", version, about = "Finite quantum groups, their actions, and free orthogonal walk combinatorics")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Input files plus the name of the object to act on (default: the first one of the right kind).
#[derive(Debug, Args)]
pub struct Inputs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    VerifyHopf(Inputs),
    Haar(Inputs),
    Dual(Inputs),
    Irreps(Inputs),
    QMatrix(Inputs),
    CoactionVerify(Inputs),
    FixedPoints(Inputs),
    Isotypes(Inputs),
    HomogData(Inputs),
    FreeCheck(Inputs),
    TorsorCheck(Inputs),
    Stabilize(Inputs),
    Fusion(Inputs),
    Smash(Inputs),
    Crossed(Inputs),
    TtCheck(Inputs),
    Twist(Inputs),
    Reflect {
        #[command(flatten)]
        inputs: Inputs,
        /// Hopf algebra in the loaded files to match the reflection against.
        #[arg(long)]
        against: Option<String>,
    },
    #[command(subcommand)]
    Walk(WalkCommand),
    #[command(subcommand)]
    Oplus(OplusCommand),
    #[command(subcommand)]
    Podles(PodlesCommand),
    EmitPresentation(EmitArgs),
}

#[derive(Debug, Subcommand)]
pub enum WalkCommand {
    Verify { file: PathBuf },
    /// Graph file: `{n, edges: [[src, tgt], ...], bar: [...]}`.
    Perron { file: PathBuf },
    Chain(ChainArgs),
    Norm { file: PathBuf },
    Fusion {
        file: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        up_to: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainKindArg {
    OplusQuotient,
    Torsor,
    Podles,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[arg(long, value_enum)]
    pub kind: ChainKindArg,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long = "L", default_value_t = 10)]
    pub l: usize,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub x: Option<f64>,
    /// F-parameter file `{bar, eps, lambda}` for the torsor chain.
    #[arg(long)]
    pub param: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum OplusCommand {
    /// `c` of an F-parameter file or an F matrix file (n×n array of `[re, im]`).
    C { file: PathBuf },
    Moneq { first: PathBuf, second: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum PodlesCommand {
    Presentation {
        #[arg(long)]
        q: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },
    Morita {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Walk,
    Oplus,
    Podles,
}

#[derive(Debug, Args)]
pub struct EmitArgs {
    #[arg(long, value_enum)]
    pub target: TargetArg,
    #[arg(long)]
    pub walk: Option<PathBuf>,
    #[arg(long)]
    pub param: Option<PathBuf>,
    /// F matrix or F-parameter file for `oplus`.
    #[arg(long)]
    pub f: Option<PathBuf>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
}

/// `{command, inputs, checks, pass, seed, tol, elapsed_ms, data}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputHash>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub seed: u64,
    pub tol: f64,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

#[derive(Debug)]
pub(crate) enum CliError {
    /// Malformed input: exit 2.
    Usage(String),
    /// A computation refused its input: exit 1.
    Failed(String),
}

macro_rules! failed_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Failed(e.to_string())
            }
        }
    )*};
}

failed_from!(
    crate::hopf::HopfError,
    crate::corep::CorepError,
    crate::action::ActionError,
    crate::products::ProductError,
    crate::twist::TwistError,
    crate::oplus::OplusError,
    crate::numlin::LinalgError
);

impl From<crate::io::IoError> for CliError {
    fn from(e: crate::io::IoError) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub(crate) struct Ctx {
    pub tol: Tolerance,
    pub seed: u64,
    pub inputs: Vec<InputHash>,
}

/// Result of one invocation: exit code and the text for stdout and stderr.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<RunReport>,
}

fn command_name(c: &Command) -> String {
    let s = match c {
        Command::VerifyHopf(_) => "verify-hopf",
        Command::Haar(_) => "haar",
        Command::Dual(_) => "dual",
        Command::Irreps(_) => "irreps",
        Command::QMatrix(_) => "q-matrix",
        Command::CoactionVerify(_) => "coaction-verify",
        Command::FixedPoints(_) => "fixed-points",
        Command::Isotypes(_) => "isotypes",
        Command::HomogData(_) => "homog-data",
        Command::FreeCheck(_) => "free-check",
        Command::TorsorCheck(_) => "torsor-check",
        Command::Stabilize(_) => "stabilize",
        Command::Fusion(_) => "fusion",
        Command::Smash(_) => "smash",
        Command::Crossed(_) => "crossed",
        Command::TtCheck(_) => "tt-check",
        Command::Twist(_) => "twist",
        Command::Reflect { .. } => "reflect",
        Command::Walk(WalkCommand::Verify { .. }) => "walk verify",
        Command::Walk(WalkCommand::Perron { .. }) => "walk perron",
        Command::Walk(WalkCommand::Chain(_)) => "walk chain",
        Command::Walk(WalkCommand::Norm { .. }) => "walk norm",
        Command::Walk(WalkCommand::Fusion { .. }) => "walk fusion",
        Command::Oplus(OplusCommand::C { .. }) => "oplus c",
        Command::Oplus(OplusCommand::Moneq { .. }) => "oplus moneq",
        Command::Podles(PodlesCommand::Presentation { .. }) => "podles presentation",
        Command::Podles(PodlesCommand::Morita { .. }) => "podles morita",
        Command::EmitPresentation(_) => "emit-presentation",
    };
    s.to_string()
}

fn render_text(r: &RunReport) -> String {
    let mut s = format!("{}: {}\n", r.command, if r.pass { "pass" } else { "FAIL" });
    for i in &r.inputs {
        s += &format!("  input {} sha256:{}\n", i.name, i.hash);
    }
    for c in &r.checks {
        s += &format!("  [{}] {} residual {:.3e}\n", if c.pass { "ok" } else { "FAIL" }, c.name, c.residual);
    }
    if !r.data.is_null() {
        s += &serde_json::to_string_pretty(&r.data).unwrap_or_default();
        s.push('\n');
    }
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new(), report: None }
            } else {
                Outcome { code, stdout: String::new(), stderr: text, report: None }
            };
        }
    };
    let tol = match Tolerance::uniform(cli.tol) {
        Ok(t) => t,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n"), report: None },
    };
    let start = Instant::now();
    let mut ctx = Ctx { tol, seed: cli.seed, inputs: Vec::new() };
    let name = command_name(&cli.command);
    let (report, data, message) = match handlers::dispatch(&cli.command, &mut ctx) {
        Ok((r, d)) => (r, d, None),
        Err(CliError::Usage(m)) => {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n"), report: None };
        }
        Err(CliError::Failed(m)) => {
            let mut r = Report::new();
            r.push_bool("computation", false);
            (r, Value::Null, Some(m))
        }
    };
    let run = RunReport {
        command: name,
        inputs: ctx.inputs,
        checks: report.checks.clone(),
        pass: report.pass(),
        seed: cli.seed,
        tol: cli.tol,
        elapsed_ms: start.elapsed().as_millis() as u64,
        data,
    };
    let json = serde_json::to_string_pretty(&run).expect("report serializes") + "\n";
    let mut stderr = String::new();
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &json) {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()), report: Some(run) };
        }
    }
    let code = if run.pass { 0 } else { 1 };
    if let Some(m) = message {
        stderr += &format!("error: {m}\n");
    } else if let Some(f) = report.first_failure() {
        stderr += &format!("failed: {} residual {:e}\n", f.name, f.residual);
    }
    let stdout = match cli.format {
        Format::Json => json,
        Format::Text => render_text(&run),
    };
    Outcome { code, stdout, stderr, report: Some(run) }
}

#[cfg(test)]
mod tests;

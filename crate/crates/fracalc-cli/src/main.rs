//! `fracalc` — fractional calculus from the command line: RL integrals and
//! derivatives, Caputo and Grunwald-Letnikov derivatives, convergence
//! tables against closed forms, fractional-action trajectory simulation,
//! and the operator/variational property suites.
//!
//! Exit status: 0 success, 1 property failure (`verify`), 2 validation
//! error, 3 numerical failure (non-finite result).

mod commands;
mod funcspec;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "fracalc", version, about = "Numerical fractional calculus toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Riemann-Liouville fractional integral at the requested points (CSV)
    Integral(IntegralArgs),
    /// Fractional derivative at the requested points (CSV)
    Deriv(DerivArgs),
    /// Simulate a dissipative fractional-action trajectory (CSV)
    FalvaSim(FalvaSimArgs),
    /// Run the operator and variational property suites
    Verify(VerifyArgs),
    /// Convergence table against a closed-form oracle (CSV)
    Converge(ConvergeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Riemann-Liouville (finite differences of the (n−α) integral)
    Rl,
    /// Caputo (integral of the exact n-th derivative)
    Caputo,
    /// Grunwald-Letnikov (evaluated at the grid node nearest each point)
    Gl,
    /// All three as columns `x,rl,caputo,gl`
    All,
}

#[derive(Args)]
pub struct IntegralArgs {
    /// Function spec: const:c | pow:m | poly:c0,c1,… | exp:λ | sin:ω
    #[arg(long)]
    func: String,
    /// Fractional order α > 0
    #[arg(long)]
    alpha: f64,
    /// Grid domain "a,b"
    #[arg(long)]
    domain: String,
    /// Number of grid points
    #[arg(long, default_value_t = 257)]
    n: usize,
    /// Evaluation point(s) "x" or "x1,x2,…"
    #[arg(long)]
    at: String,
    /// Memory direction: left integrates from a, right from b
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    side: SideArg,
    /// Write the CSV to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct DerivArgs {
    /// rl | caputo | gl | all
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Function spec: const:c | pow:m | poly:c0,c1,… | exp:λ | sin:ω
    #[arg(long)]
    func: String,
    /// Fractional order α > 0
    #[arg(long)]
    alpha: f64,
    /// Grid domain "a,b"
    #[arg(long)]
    domain: String,
    /// Number of grid points
    #[arg(long, default_value_t = 257)]
    n: usize,
    /// Evaluation point(s) "x" or "x1,x2,…"
    #[arg(long)]
    at: String,
    /// Memory direction (gl and all support left only)
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    side: SideArg,
    /// Write the CSV to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct FalvaSimArgs {
    /// Model spec: oscillator:ω | freeparticle | well:k
    #[arg(long)]
    model: String,
    /// Fractional order α in (0, 1]
    #[arg(long)]
    alpha: f64,
    /// Observer window and intrinsic horizon "a,t"
    #[arg(long)]
    horizon: String,
    /// Initial configuration "q1[,q2,…]"
    #[arg(long)]
    q0: String,
    /// Initial velocity "v1[,v2,…]"
    #[arg(long)]
    v0: String,
    /// Fixed integration steps
    #[arg(long, default_value_t = 4096)]
    steps: usize,
    /// Endpoint standoff ε (default 1e-3·(t−a))
    #[arg(long)]
    eps: Option<f64>,
    /// Append a final comment line `# action=<value>`
    #[arg(long)]
    action: bool,
    /// Write the CSV to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Run only the named property (e.g. semigroup, linearity, rayleigh)
    #[arg(long)]
    only: Option<String>,
    /// Grid size for the deviation checks (default 257)
    #[arg(long)]
    grid: Option<usize>,
    /// Pin the semigroup suite to this α (with --beta)
    #[arg(long)]
    alpha: Option<f64>,
    /// Pin the semigroup suite to this β (with --alpha)
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Args)]
pub struct ConvergeArgs {
    /// Function spec with a closed-form oracle: const:c | pow:m | poly:…
    #[arg(long)]
    func: String,
    /// Fractional order α > 0
    #[arg(long)]
    alpha: f64,
    /// Grid domain "a,b" (terminal 0 required for the oracle)
    #[arg(long, default_value = "0,1")]
    domain: String,
    /// Coarsest grid size; five rows follow, doubling the panel count
    #[arg(long, default_value_t = 65)]
    n: usize,
    /// Single evaluation point
    #[arg(long)]
    at: String,
    /// Derivative method to study; omit to study the RL integral
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Write the CSV to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure modes mapped to exit codes.
pub enum CliError {
    /// Exit 2: bad flags, bad specs, operator preconditions.
    Validation(String),
    /// Exit 3: a computation produced a non-finite value.
    Numerical(String),
    /// Exit 1: a property suite reported a violation (report already printed).
    PropertyFailure,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::PropertyFailure => 1,
            Self::Validation(_) => 2,
            Self::Numerical(_) => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Validation(format!("i/o error: {e}"))
    }
}

pub fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// Reject non-finite computed values with exit 3.
pub fn ensure_finite(v: f64, what: &str) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Numerical(format!("{what} produced a non-finite value")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Integral(args) => commands::integral::run(&args),
        Command::Deriv(args) => commands::deriv::run(&args),
        Command::FalvaSim(args) => commands::falva_sim::run(&args),
        Command::Verify(args) => commands::verify::run(&args),
        Command::Converge(args) => commands::converge::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Validation(msg) | CliError::Numerical(msg) => eprintln!("error: {msg}"),
                CliError::PropertyFailure => {}
            }
            ExitCode::from(e.exit_code())
        }
    }
}

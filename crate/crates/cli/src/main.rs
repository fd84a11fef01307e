//! `spinalg` command-line driver.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or domain error.

mod commands;
mod input;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spinalg::HalfInt;

use input::SpinArg;

#[derive(Parser, Debug)]
#[command(name = "spinalg", version, about = "Hermitian su(2S+1) bases, structure constants and qudit dynamics")]
struct Cli {
    /// Worker threads for table construction.
    #[arg(long, global = true, env = "SPINALG_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact Wigner 3jm or 6j symbol.
    Wigner(WignerArgs),
    /// Write the Hermitian basis matrices for one spin.
    Basis(BasisArgs),
    /// Write the e/g structure-constant table for one spin.
    Structconst(StructArgs),
    /// Integrate the one-qudit real-form equations.
    Evolve1(EvolveArgs),
    /// Integrate the two-qudit real-form equations.
    Evolve2(Evolve2Args),
    /// Run invariant checks and report pass/fail.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WignerKind {
    #[value(name = "3jm")]
    ThreeJm,
    #[value(name = "6j")]
    SixJ,
}

#[derive(Args, Debug)]
pub struct WignerArgs {
    pub kind: WignerKind,
    /// Six angular momenta: j1 j2 j3 m1 m2 m3 for 3jm, j1..j6 for 6j.
    #[arg(num_args = 6, allow_hyphen_values = true, value_name = "J")]
    pub values: Vec<HalfInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    #[arg(long)]
    pub spin: SpinArg,
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Analytic,
    Trace,
    Both,
}

#[derive(Args, Debug)]
pub struct StructArgs {
    #[arg(long)]
    pub spin: SpinArg,
    #[arg(long, value_enum, default_value = "analytic")]
    pub method: MethodArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct IntegrationArgs {
    #[arg(long, default_value_t = spinalg::dynamics::DEFAULT_DT, allow_hyphen_values = true)]
    pub dt: f64,
    #[arg(long, default_value_t = spinalg::dynamics::DEFAULT_STEPS)]
    pub steps: usize,
    /// Hamiltonian coefficients `label=value`, repeatable or comma-separated.
    #[arg(long = "h", value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "h_file")]
    pub h: Vec<String>,
    /// JSON file with Hamiltonian coefficients.
    #[arg(long = "h-file")]
    pub h_file: Option<PathBuf>,
    /// Initial Bloch components `label=value` (the unit component is fixed to 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "r0_file")]
    pub r0: Vec<String>,
    /// JSON file with initial Bloch components.
    #[arg(long = "r0-file")]
    pub r0_file: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: Format,
    /// Compare against the exact unitary propagator and fail above 1e-6.
    #[arg(long)]
    pub oracle_check: bool,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long)]
    pub spin: SpinArg,
    #[command(flatten)]
    pub run: IntegrationArgs,
}

#[derive(Args, Debug)]
pub struct Evolve2Args {
    #[arg(long)]
    pub spin: SpinArg,
    #[arg(long)]
    pub spin2: SpinArg,
    #[command(flatten)]
    pub run: IntegrationArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Appendix,
    Orthogonality,
    Kparity,
    Equivalence,
    Jacobi,
    Closure,
    Conservation,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub spin: SpinArg,
    /// Second spin for the two-qudit conservation suite.
    #[arg(long)]
    pub spin2: Option<SpinArg>,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
}

/// Successful completion, or completion with a failed check.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };

    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }

    let result = match cli.command {
        Command::Wigner(a) => commands::wigner(&a),
        Command::Basis(a) => commands::basis(&a),
        Command::Structconst(a) => commands::structconst(&a),
        Command::Evolve1(a) => commands::evolve1(&a),
        Command::Evolve2(a) => commands::evolve2(&a),
        Command::Verify(a) => verify::run(&a),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

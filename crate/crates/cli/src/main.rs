//! `fracjump`: sequence generation, verification, classification and
//! primitivity tooling for fractional jumps over prime fields.

mod commands;
mod gen;
mod map;
mod report;
mod verify;

use std::io;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracjump::{Budget, Error, FactorBudget};

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GATE: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "fracjump", version, about = "Fractional jumps of projective automorphisms over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit successive points of a fractional jump orbit.
    Gen(GenArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Compare transitivity on P^n and on A^n for one automorphism.
    Classify(ClassifyArgs),
    /// Test a polynomial for projective primitivity.
    Primitive(PrimitiveArgs),
    /// List projectively primitive polynomials of a given degree.
    Search(SearchArgs),
    /// Per-piece census and operation counts.
    Bench(BenchArgs),
}

/// Selects the map: the Artin-Schreier closed form or a generic matrix.
#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    /// Use the Artin-Schreier jump for T^p - T - c.
    #[arg(long = "as", conflicts_with = "matrix")]
    pub artin_schreier: bool,
    /// Field characteristic.
    #[arg(long)]
    pub p: u64,
    /// Artin-Schreier constant, 1 <= c < p.
    #[arg(long, requires = "artin_schreier")]
    pub c: Option<u64>,
    /// Matrix rows separated by ';', entries by ','.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Largest point or matrix count to enumerate.
    #[arg(long, default_value_t = 10_000_000)]
    pub max_points: u64,
    /// Trial division bound used when factoring group orders.
    #[arg(long, default_value_t = 1_000_000)]
    pub trial_bound: u64,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        Budget {
            enumeration: self.max_points,
            factor: FactorBudget {
                trial_bound: self.trial_bound,
            },
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Hex,
    Raw,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub map: MapArgs,
    /// Number of points to emit after the seed.
    #[arg(long)]
    pub count: u64,
    /// Starting point, comma separated (default: the origin).
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    FullOrbit,
    Oracle,
    Classify,
    Cost,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long = "as")]
    pub artin_schreier: bool,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub c: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// Dimension of the projective space (classify suite).
    #[arg(long)]
    pub n: Option<usize>,
    /// Sweep every class instead of sampling (classify suite).
    #[arg(long)]
    pub exhaustive: bool,
    /// Number of sampled classes when not exhaustive.
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = verify::DEFAULT_RNG_SEED)]
    pub rng_seed: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

impl VerifyArgs {
    pub fn map_args(&self) -> MapArgs {
        MapArgs {
            artin_schreier: self.artin_schreier,
            p: self.p,
            c: self.c,
            matrix: self.matrix.clone(),
        }
    }
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct PrimitiveArgs {
    #[arg(long)]
    pub p: u64,
    /// Ascending coefficients, comma separated: "3,4,0,1" is T^3 + 4T + 3.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub degree: usize,
    /// Keep only polynomials with at most this many nonzero terms.
    #[arg(long)]
    pub max_terms: Option<usize>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter(_) | Error::Parse(_) | Error::Domain(_) | Error::DivisionByZero(_) => {
                EXIT_USAGE
            }
            Error::Precondition(_) => EXIT_GATE,
            Error::Resource(_) => EXIT_BUDGET,
            Error::NotTransitiveCompatible(_) | Error::TrappedAtInfinity(_) => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // a closed pipe downstream is a normal way to stop a stream
        let code = if e.kind() == io::ErrorKind::BrokenPipe { 0 } else { EXIT_FAIL };
        Failure {
            code,
            message: format!("i/o error: {e}"),
        }
    }
}

/// Writes `text` to stdout, surfacing errors instead of panicking.
pub fn emit(text: &str) -> io::Result<()> {
    use io::Write;
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Primitive(a) => commands::primitive(&a),
        Command::Search(a) => commands::search(&a),
        Command::Bench(a) => commands::bench(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) if f.code == 0 => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("fracjump: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

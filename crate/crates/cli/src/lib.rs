//! Command-line front end for `epkit`.
//!
//! Every command emits `{command, config, result}` or `{command, config, error}`.
//! Exit codes: 0 success, 1 computation error, 2 usage error.

mod commands;
mod report;
mod reproduce;
mod sweep;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use report::Format;

#[derive(Parser, Debug)]
#[command(name = "epkit", version, about = "Exceptional points and unitarity domains of tridiagonal non-Hermitian Hamiltonians")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "EPKIT_PRECISION", default_value_t = 256)]
    pub precision: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Fractional digits for big-float output.
    #[arg(long, global = true, default_value_t = 30)]
    pub digits: usize,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Term cap for the elimination engines.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    pub term_cap: usize,
}

impl RunConfig {
    fn to_json(&self) -> Value {
        json!({
            "precision_bits": self.precision,
            "format": self.format.as_str(),
            "digits": self.digits,
            "seed": self.seed,
            "term_cap": self.term_cap,
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Traceless unperturbed spectrum E₁ … E_N (or the tilded sequence).
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tilded: bool,
    },
    /// Matrix entries of H⁽ᴺ⁾ at given couplings.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        couplings: Vec<String>,
    },
    /// Secular polynomial, symbolic or at given couplings.
    Charpoly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        couplings: Option<Vec<String>>,
    },
    /// Locate the physical EPN.
    Epn {
        #[arg(long)]
        n: usize,
        /// Report couplings as exact algebraic numbers.
        #[arg(long)]
        exact: bool,
        /// Coupling kept by the elimination (A, B, …).
        #[arg(long)]
        keep: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Classify the spectrum at given couplings.
    Physical {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        couplings: Vec<String>,
    },
    /// Bisect along a ray for the first non-RealSimple point.
    Boundary {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        from: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        dir: Vec<String>,
        #[arg(long, default_value = "1e-12")]
        tol: String,
    },
    /// Admissible n near EP3 at fixed p.
    Lemma1 {
        #[arg(long)]
        p: String,
    },
    /// Admissible n near EP4 for extremum spacings a, b.
    Lemma2 {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = ConventionArg::Secular)]
        convention: ConventionArg,
    },
    /// Near-EPN corridor.
    Corridor {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        spacings: Vec<String>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 50)]
        iters: usize,
        #[arg(long)]
        tol: Option<String>,
        /// Rescaled free constant (default: midpoint of its interval).
        #[arg(long, allow_hyphen_values = true)]
        tau0: Option<String>,
        /// Convention at N = 4 (N ≥ 5 always uses the secular one).
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
        #[arg(long, value_enum, default_value_t = OmegaArg::Leading)]
        omega: OmegaArg,
    },
    /// The matrix C of the linear corridor system.
    Cmatrix {
        #[arg(long)]
        n: usize,
    },
    /// Classify a 1- or 2-dimensional grid and write CSV.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Over::Couplings)]
        over: Over,
        /// `NAME:LO:HI:COUNT`, e.g. `A:0:2:201`; repeat for a second axis.
        #[arg(long = "axis", required = true, allow_hyphen_values = true)]
        axes: Vec<String>,
        /// Values of the remaining coordinates, in order.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        base: Option<Vec<String>>,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Replay the published numbers and report pass/fail.
    Reproduce,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::Build { .. } => "build",
            Command::Charpoly { .. } => "charpoly",
            Command::Epn { .. } => "epn",
            Command::Physical { .. } => "physical",
            Command::Boundary { .. } => "boundary",
            Command::Lemma1 { .. } => "lemma1",
            Command::Lemma2 { .. } => "lemma2",
            Command::Corridor { .. } => "corridor",
            Command::Cmatrix { .. } => "cmatrix",
            Command::Sweep { .. } => "sweep",
            Command::Reproduce => "reproduce",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Auto,
    Groebner,
    Resultant,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    Secular,
    Monic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OmegaArg {
    Leading,
    Exact,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Over {
    Couplings,
    Shifts,
}

/// Failure of a command: usage problems map to exit 2, the rest to exit 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(epkit::error::Error),
    Io(String),
}

impl From<epkit::error::Error> for Failure {
    fn from(e: epkit::error::Error) -> Self {
        match e {
            epkit::error::Error::InvalidArgument(m) => Failure::Usage(m),
            other => Failure::Compute(other),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            _ => 1,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Usage(m) => json!({"kind": "usage", "message": m}),
            Failure::Io(m) => json!({"kind": "io", "message": m}),
            Failure::Compute(e) => {
                let kind = format!("{e:?}");
                let kind = kind.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
                let mut v = json!({"kind": kind, "message": e.to_string()});
                if let epkit::error::Error::NonConvergence { trace, .. } = e {
                    v["trace"] = json!(trace);
                }
                v
            }
        }
    }
}

/// What a command produced: a JSON result, possibly with raw CSV for standard output.
pub struct Outcome {
    pub result: Value,
    pub csv: Option<String>,
    /// Hand-written rendering for `--format pretty`, when the generic one is poor.
    pub text: Option<String>,
    /// Overall success for commands that check things (`reproduce`).
    pub ok: bool,
}

impl Outcome {
    fn value(result: Value) -> Self {
        Self { result, csv: None, text: None, ok: true }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report to `out`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    let name = cli.command.name();
    let config = cli.config.clone();
    if config.precision < 64 {
        let f = Failure::Usage("precision must be at least 64 bits".into());
        report::emit_error(out, err, name, &config, &f);
        return f.exit_code();
    }
    match commands::dispatch(&cli.command, &config) {
        Ok(outcome) => {
            match report::emit(out, name, &config, &outcome) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return 1;
                }
                Ok(()) => {}
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            report::emit_error(out, err, name, &config, &f);
            f.exit_code()
        }
    }
}

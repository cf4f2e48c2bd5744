//! `mpf`: batch front end for the exact checks in `mpf-core`.
//!
//! Every command prints a run report (JSON by default, CSV with `--csv`) and
//! exits with 0 when all verdicts hold, 1 when some verdict fails, and 2 on
//! input errors.

mod commands;
mod fixture;
mod report;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use report::RunReport;

#[derive(Debug)]
pub enum CliError {
    Core(mpf_core::Error),
    Io(String),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(e) => write!(f, "{e}"),
        }
    }
}

impl From<mpf_core::Error> for CliError {
    fn from(e: mpf_core::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser)]
#[command(name = "mpf", version, about = "Exact checks for metric preserving functions")]
struct Cli {
    /// Print the run report as JSON (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Print the run report as CSV rows.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Isotone, amenable and subadditive verdicts for a sampled function.
    Check {
        #[arg(long)]
        function: PathBuf,
    },
    /// Least isotone continuation at the given probes.
    ExtendSup {
        #[arg(long)]
        function: PathBuf,
        #[arg(long = "probe", required = true)]
        probes: Vec<String>,
    },
    /// Isotone amenable continuation at the given probes.
    ExtendAmenable {
        #[arg(long)]
        function: PathBuf,
        #[arg(long = "probe", required = true)]
        probes: Vec<String>,
    },
    /// Subadditive envelope with cover certificates.
    Envelope {
        #[arg(long)]
        function: PathBuf,
        #[arg(long = "probe", required = true)]
        probes: Vec<String>,
        /// Value given to axis points outside the projection support.
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// Metric axioms for a distance matrix.
    VerifyMetric {
        #[arg(long)]
        space: PathBuf,
    },
    /// Product of finite metric spaces under a combining function.
    Product {
        #[arg(long = "factor", required = true)]
        factors: Vec<PathBuf>,
        /// SUM, MAX, CAPPED_SUM, SQRT_SUM_SQ, SQUARE_SUM or SAMPLED.
        #[arg(long, default_value = "SUM")]
        combiner: String,
        #[arg(long)]
        cap: Option<String>,
        /// Sampled combiner, required with SAMPLED.
        #[arg(long)]
        function: Option<PathBuf>,
        /// Where to write the product matrix.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Tolerance for SQRT_SUM_SQ.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Recover the combining function from a product matrix.
    Extract {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long = "factor", required = true)]
        factors: Vec<PathBuf>,
    },
    /// Points where an unbounded transform of a bounded ultrametric exceeds a bound.
    WitnessUnbounded {
        #[arg(long)]
        bound: String,
    },
    /// Lattice modulus of continuity, at one point or as a full table.
    Omega {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Whether a grid function equals its own modulus of continuity.
    FixedPoint {
        #[arg(long)]
        grid: PathBuf,
    },
    /// `|F(x) - F(y)| <= F(|x - y|)` on every lattice pair.
    Lemma42 {
        #[arg(long)]
        grid: PathBuf,
    },
    /// Cantor set arithmetic.
    Cantor {
        #[command(subcommand)]
        command: CantorCommand,
    },
    /// Three-point searches.
    Universal {
        #[command(subcommand)]
        command: UniversalCommand,
    },
    /// Shift a finite rational set into the transcendentals.
    Embed {
        #[arg(long)]
        set: PathBuf,
    },
    /// Write a deterministic test fixture.
    Fixture {
        kind: fixture::Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Combiner for named-combiner-grid.
        #[arg(long, default_value = "SUM")]
        combiner: String,
        /// Level for ce-level-set.
        #[arg(long, env = "MPF_LEVEL", default_value_t = 8)]
        level: u32,
    },
}

#[derive(Subcommand)]
enum CantorCommand {
    /// Membership in the Cantor set.
    Member {
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// Write a triadic t in [0, 1] as a difference of two Cantor points.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// Membership in the union of all 3^n C.
    CeMember {
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// Evidence that no three Cantor points realize distances 1/3 and 1/6.
    RefuteCeTriple {
        #[arg(long, default_value_t = 10)]
        level: u32,
    },
}

#[derive(Subcommand)]
enum UniversalCommand {
    /// Find x1, x2, x3 with gaps a, b and a + b.
    Search {
        /// Rational-set file; defaults to a level set of C^e in [0, 3].
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(long, env = "MPF_LEVEL", default_value_t = 8)]
        level: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Clone, Copy)]
enum Format {
    Json,
    Csv,
}

fn run(command: Command) -> Result<RunReport, CliError> {
    use commands::*;
    match command {
        Command::Check { function } => check(&function),
        Command::ExtendSup { function, probes } => extend_sup(&function, &probes),
        Command::ExtendAmenable { function, probes } => extend_amenable(&function, &probes),
        Command::Envelope { function, probes, c } => envelope(&function, &probes, &c),
        Command::VerifyMetric { space } => verify_metric(&space),
        Command::Product {
            factors,
            combiner,
            cap,
            function,
            out,
            tol,
        } => product(&factors, &combiner, cap.as_deref(), function.as_deref(), out.as_deref(), tol),
        Command::Extract { matrix, factors } => extract(&matrix, &factors),
        Command::WitnessUnbounded { bound } => witness_unbounded(&bound),
        Command::Omega { grid, eps } => omega(&grid, eps.as_deref()),
        Command::FixedPoint { grid } => fixed_point(&grid),
        Command::Lemma42 { grid } => lemma42(&grid),
        Command::Cantor { command } => match command {
            CantorCommand::Member { t } => cantor_member(&t),
            CantorCommand::Decompose { t } => cantor_decompose(&t),
            CantorCommand::CeMember { t } => ce_member(&t),
            CantorCommand::RefuteCeTriple { level } => refute_ce_triple(level),
        },
        Command::Universal {
            command: UniversalCommand::Search { set, level, a, b },
        } => universal_search(set.as_deref(), level, &a, &b),
        Command::Embed { set } => embed(&set),
        Command::Fixture {
            kind,
            seed,
            out,
            combiner,
            level,
        } => fixture::generate(kind, seed, &out, &combiner, level),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match (cli.json, cli.csv) {
        (_, true) => Format::Csv,
        _ => Format::Json,
    };
    let start = Instant::now();
    match run(cli.command) {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_millis() as u64;
            let text = match format {
                Format::Json => format!("{}\n", report.to_json()),
                Format::Csv => report.to_csv(),
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().write_all(text.as_bytes());
            if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

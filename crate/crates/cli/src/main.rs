//! `qlab` — eavesdropping fidelities of quantum signal ensembles from the
//! command line: the quantumness value and its Monte Carlo verification,
//! SIC fiducial search, MUB construction, fidelity evaluation and
//! optimization on ensemble files, and the composite-space gap experiment.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};

use qlab_cli::commands::{self, fidelity::FidelityArgs};

#[derive(Parser)]
#[command(
    name = "qlab",
    version,
    about = "Eavesdropping fidelities of quantum signal ensembles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the quantumness 2/(d+1), optionally verifying it by Monte Carlo
    Quantumness {
        /// Hilbert-space dimension
        d: usize,
        /// Run the random-measurement verification
        #[arg(long)]
        verify: bool,
        /// Monte Carlo sample count
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Seed for the stochastic parts; drawn and printed when omitted
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Search for a SIC fiducial and certify its orbit
    Sic {
        d: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Search restarts
        #[arg(long)]
        restarts: Option<usize>,
        /// Iteration budget per restart
        #[arg(long)]
        max_iters: Option<usize>,
        /// Write the ensemble (with fiducial) as JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct the complete MUB set of a prime dimension
    Mub {
        d: usize,
        /// Write the d(d+1)-state ensemble as JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate, optimize, or Monte Carlo average fidelities of an ensemble file
    #[command(group(ArgGroup::new("mode").required(true)))]
    Fidelity {
        /// Ensemble JSON file
        ensemble: PathBuf,
        /// Evaluate the achievable fidelity under this rank-1 POVM file
        #[arg(long, group = "mode")]
        povm: Option<PathBuf>,
        /// Search for the accessible fidelity
        #[arg(long, group = "mode")]
        optimize: bool,
        /// Average over Haar-random von Neumann measurements
        #[arg(long, group = "mode")]
        haar: bool,
        /// Rank-1 outcomes for --optimize (default d^2)
        #[arg(long, requires = "optimize")]
        outcomes: Option<usize>,
        /// Restarts for --optimize
        #[arg(long, requires = "optimize")]
        restarts: Option<usize>,
        /// Samples for --haar
        #[arg(long, requires = "haar", default_value_t = 100_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Write per-restart optimizer traces as CSV (restart,iter,value)
        #[arg(long, requires = "optimize")]
        trace: Option<PathBuf>,
    },
    /// Composite-space experiment: product signals vs the entangled floor
    Gap {
        d1: usize,
        d2: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn init_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("QLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("QLAB_THREADS must be a nonnegative integer, got {raw:?}"))?;
    if n == 0 {
        return Ok(()); // auto
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("cannot configure the thread pool: {e}"))
}

fn run(command: Command) -> Result<(), commands::CliError> {
    match command {
        Command::Quantumness {
            d,
            verify,
            samples,
            seed,
        } => commands::quantumness::run(d, verify, samples, seed),
        Command::Sic {
            d,
            seed,
            restarts,
            max_iters,
            out,
        } => commands::sic::run(d, seed, restarts, max_iters, out.as_deref()),
        Command::Mub { d, out } => commands::mub::run(d, out.as_deref()),
        Command::Fidelity {
            ensemble,
            povm,
            optimize,
            haar,
            outcomes,
            restarts,
            samples,
            seed,
            trace,
        } => commands::fidelity::run(&FidelityArgs {
            ensemble: &ensemble,
            povm: povm.as_deref(),
            optimize,
            haar,
            outcomes,
            restarts,
            samples,
            seed,
            trace: trace.as_deref(),
        }),
        Command::Gap { d1, d2, seed } => commands::gap::run(d1, d2, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    if let Err(message) = init_threads() {
        eprintln!("error: {message}");
        return ExitCode::from(1);
    }
    let start = Instant::now();
    match run(cli.command) {
        Ok(()) => {
            println!("wall_time_s = {:.3}", start.elapsed().as_secs_f64());
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

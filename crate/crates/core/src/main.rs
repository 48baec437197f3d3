use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bohr::cli::{self, BoundsArgs, SearchArgs, SearchParams};
use bohr::lower;
use bohr::upper::DEFAULT_GRID_DIVISOR;

#[derive(Parser)]
#[command(
    name = "bohr",
    version,
    about = "Certified bounds on the Bohr radius K_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate lower and upper bounds for a range of n as CSV.
    Bounds {
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        /// Width of the refined lower-bound enclosure.
        #[arg(long, default_value_t = lower::DEFAULT_TOL)]
        tol: f64,
        /// Fill `upper_search` (n <= 4) using random-sign polynomials of this degree.
        #[arg(long)]
        search_m: Option<u32>,
        #[arg(long, default_value_t = 64)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_GRID_DIVISOR)]
        grid_divisor: u32,
        /// Minimise the explicit large-n bound over the degree.
        #[arg(long)]
        optimize_m: bool,
        #[arg(long)]
        out: PathBuf,
        /// Also write a gnuplot script next to the CSV.
        #[arg(long)]
        gnuplot: bool,
    },
    /// Run invariant checks: combinatorics, wiener, lower, upper or all.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// Also check a series read from this file.
        #[arg(long)]
        series_file: Option<PathBuf>,
        /// Polyradius for the series checks, comma separated.
        #[arg(long, value_delimiter = ',', requires = "series_file")]
        radius: Option<Vec<f64>>,
    },
    /// Search random-sign homogeneous polynomials for an upper bound.
    SearchUpper {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 64)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_GRID_DIVISOR)]
        grid_divisor: u32,
        /// Write the best polynomial to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Report the Bohr radius of the Möbius map (a - z)/(1 - a z).
    Extremal {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 60)]
        cap: u32,
    },
}

fn run(command: Command) -> Result<(), cli::CliError> {
    let mut out = io::stdout().lock();
    match command {
        Command::Bounds {
            n_min,
            n_max,
            tol,
            search_m,
            trials,
            seed,
            grid_divisor,
            optimize_m,
            out: path,
            gnuplot,
        } => {
            let search = search_m.map(|degree| SearchParams {
                degree,
                trials,
                seed,
                grid_divisor,
            });
            let args = BoundsArgs {
                n_min,
                n_max,
                tol,
                search,
                optimize_m,
                out: path,
                gnuplot,
            };
            cli::cmd_bounds(&args, &mut out)
        }
        Command::Verify {
            suite,
            series_file,
            radius,
        } => cli::cmd_verify(&suite, series_file.as_deref(), radius.as_deref(), &mut out),
        Command::SearchUpper {
            n,
            degree,
            trials,
            seed,
            grid_divisor,
            witness,
        } => {
            let args = SearchArgs {
                n,
                degree,
                trials,
                seed,
                grid_divisor,
                witness,
            };
            cli::cmd_search_upper(&args, &mut out)
        }
        Command::Extremal { a, cap } => cli::cmd_extremal(a, cap, &mut out),
    }
}

fn main() -> ExitCode {
    let parsed = Cli::parse();
    match run(parsed.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, cli::CliError::VerifyFailed) {
                eprintln!("bohr: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod error;
mod output;
mod parse;

use error::{CliError, CliResult};
use output::{Format, Report};

/// Finite-dimensional phase-space and weak-measurement calculations.
#[derive(Parser, Debug)]
#[command(name = "qpl", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random states; QPL_SEED takes precedence.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discrete Wigner function of a state on Z_N.
    Wigner {
        #[arg(long)]
        n: usize,
        /// u<k>, v<k>, `coherent m n`, mixed, random, or comma-separated
        /// amplitudes (write `--state=-1,...` when the first one is negative).
        #[arg(long, num_args = 1..=3)]
        state: Vec<String>,
    },
    /// tr F against the closed form for each N in MIN..=MAX.
    GaussTrace { min: usize, max: usize },
    /// Weak measurement described by a config file.
    Weak { config: PathBuf },
    /// Simultaneous eigenstate of modular position and momentum on Z_NA x Z_NB.
    Az { na: usize, nb: usize, j: usize, sigma: usize },
    /// Momentum distribution after a periodic potential kick.
    Nslit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        period: usize,
        /// Comma-separated potential values, one per site.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "random")]
        samples: Option<String>,
        /// Draw one random cell and repeat it.
        #[arg(long)]
        random: bool,
    },
    /// Commutator structure constants of the phase-point operators (odd N).
    StructureConstants {
        #[arg(long)]
        n: usize,
    },
    /// Overlap matrix of the finite coherent family.
    CoherentGram {
        #[arg(long)]
        n: usize,
    },
}

fn seed(flag: Option<u64>) -> CliResult<Option<u64>> {
    match std::env::var("QPL_SEED") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| CliError::Usage(format!("bad QPL_SEED '{s}'"))),
        Err(_) => Ok(flag),
    }
}

fn run(cli: Cli) -> CliResult<Report> {
    let seed = seed(cli.seed)?;
    match cli.command {
        Command::Wigner { n, state } => commands::wigner(n, &state, seed.unwrap_or(0)),
        Command::GaussTrace { min, max } => commands::gauss(min, max),
        Command::Weak { config } => {
            let text = std::fs::read_to_string(&config)?;
            commands::weak(&text, seed)
        }
        Command::Az { na, nb, j, sigma } => commands::az(na, nb, j, sigma),
        Command::Nslit { n, period, samples, random } => {
            if samples.is_none() && !random {
                return Err(CliError::Usage("nslit needs --samples or --random".into()));
            }
            commands::nslit(n, period, samples.as_deref(), seed.unwrap_or(0))
        }
        Command::StructureConstants { n } => {
            if n % 2 == 0 {
                return Err(CliError::Usage(format!("structure constants need odd N, got {n}")));
            }
            commands::structure(n)
        }
        Command::CoherentGram { n } => commands::coherent_gram(n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (format, out) = (cli.format, cli.out.clone());
    match run(cli).and_then(|r| r.emit(format, out.as_deref())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

mod args;
mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use args::{parse_sizes, FamilyArgs, Sizes};
use tangleroof::oracle::{DEFAULT_RESTARTS, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(name = "tangleroof", version, about = "Three-tangle of GHZ/W mixtures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Three-tangle of a pure state read from a JSON file.
    Tangle {
        /// JSON array of 8 {"re", "im"} amplitudes in order 000..111.
        state_file: PathBuf,
    },
    /// Roof curve as CSV: p,region,tau_roof,tau_char_min,t_signed.
    Roof {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[arg(long = "phi-grid", default_value_t = 720)]
        phi_grid: usize,
        /// Output file; CSV goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the closed form with the numerical optimizer (JSON report).
    /// Exits with status 2 if any point is falsified.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "p-grid", default_value_t = 21)]
        p_grid: usize,
        #[arg(long, default_value = "3,4,5", value_parser = parse_sizes)]
        sizes: Sizes,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, env = "TANGLEROOF_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimal decomposition of rho(p) as JSON.
    Decomposition {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write figure1a.csv (s = 7) and figure1b.csv (s = 2.3), tau_ghz = 0.0396.
    Figure1 {
        #[arg(long = "out-dir", default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[arg(long = "phi-grid", default_value_t = 720)]
        phi_grid: usize,
    },
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Tangle { state_file } => commands::tangle(&state_file)?,
        Command::Roof {
            family,
            grid,
            phi_grid,
            out,
        } => {
            commands::roof(&family.resolve()?, grid, phi_grid, out.as_deref())?;
        }
        Command::Verify {
            family,
            p_grid,
            sizes,
            restarts,
            seed,
            tol,
            out,
        } => {
            let falsified = commands::verify(
                &family.resolve()?,
                p_grid,
                sizes.0,
                restarts,
                seed,
                tol,
                out.as_deref(),
            )?;
            if falsified {
                eprintln!("verification failed: oracle undercuts the closed form");
                return Ok(ExitCode::from(2));
            }
        }
        Command::Decomposition { family, p, out } => {
            commands::decomposition(&family.resolve()?, p, out.as_deref())?
        }
        Command::Figure1 {
            out_dir,
            grid,
            phi_grid,
        } => {
            commands::figure1(&out_dir, grid, phi_grid)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

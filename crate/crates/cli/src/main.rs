//! Command-line front end writing copula grids, survival curves, simulated
//! paths and calibrations as CSV/JSON files.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod error;
mod flags;
mod models;
mod output;

use commands::calibrate::CalibrateConfig;
use commands::copula_grid::CopulaGridConfig;
use commands::empirical::EmpiricalConfig;
use commands::execute;
use commands::simulate::SimulateConfig;
use commands::survival::SurvivalConfig;
use error::Result;
use flags::Flags;
use output::OutDir;

#[derive(Parser)]
#[command(name = "refcopula", version, about = "Reflection copulae, spread survival and simulations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Cmd {
    /// Copula values on a grid plus an axiom report.
    CopulaGrid,
    /// Survival curves of the spread X_t − Y_t.
    Survival,
    /// Simulated paths of a pair model or of commodity prices.
    Simulate,
    /// Correlation of the multi-barrier model matching a target survival.
    Calibrate {
        #[arg(long)]
        target: Option<f64>,
    },
    /// Rank-based empirical copula of simulated or supplied samples.
    EmpiricalCopula,
}

fn run(cli: Cli) -> Result<OutDir> {
    let f = &cli.flags;
    match cli.command {
        Cmd::CopulaGrid => execute::<CopulaGridConfig>(f, |_| {}),
        Cmd::Survival => execute::<SurvivalConfig>(f, |_| {}),
        Cmd::Simulate => execute::<SimulateConfig>(f, |_| {}),
        Cmd::Calibrate { target } => execute::<CalibrateConfig>(f, |c| {
            if target.is_some() {
                c.target = target;
            }
        }),
        Cmd::EmpiricalCopula => execute::<EmpiricalConfig>(f, |_| {}),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            for name in out.written() {
                eprintln!("wrote {}", out.path(name).display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

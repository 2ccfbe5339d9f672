use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Analytic,
    Mc,
    Both,
}

/// Flags shared by every subcommand; each overrides the matching config field.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// JSON configuration file; missing fields take their defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, global = true)]
    pub paths: Option<usize>,
    #[arg(long, global = true)]
    pub dt: Option<f64>,
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
    #[arg(long, global = true)]
    pub mode: Option<Mode>,
}

impl Flags {
    /// Fails when a flag the command ignores was given.
    pub fn reject(&self, command: &str, names: &[&str]) -> Result<()> {
        for &name in names {
            let given = match name {
                "seed" => self.seed.is_some(),
                "paths" => self.paths.is_some(),
                "dt" => self.dt.is_some(),
                "resolution" => self.resolution.is_some(),
                "mode" => self.mode.is_some(),
                _ => unreachable!("unknown flag {name}"),
            };
            if given {
                return Err(CliError::Usage(format!("--{name} does not apply to {command}")));
            }
        }
        Ok(())
    }
}

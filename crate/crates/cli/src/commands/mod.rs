use std::fs;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::flags::Flags;
use crate::output::{write_manifest, OutDir};

pub mod calibrate;
pub mod copula_grid;
pub mod empirical;
pub mod simulate;
pub mod survival;

/// A subcommand driven by a JSON config.
pub trait Command: Serialize + DeserializeOwned + Default {
    const NAME: &'static str;

    /// Applies flag overrides, rejecting flags the command has no use for.
    fn apply(&mut self, flags: &Flags) -> Result<()>;

    /// Seed recorded in the manifest, for stochastic commands.
    fn seed(&self) -> Option<u64>;

    fn run(&self, out: &mut OutDir) -> Result<()>;
}

pub fn load<C: Command>(flags: &Flags) -> Result<C> {
    let Some(path) = &flags.config else {
        return Ok(C::default());
    };
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.clone(), source })
}

/// Loads, overrides, runs and writes the manifest.
pub fn execute<C: Command>(flags: &Flags, tweak: impl FnOnce(&mut C)) -> Result<OutDir> {
    let mut config: C = load(flags)?;
    config.apply(flags)?;
    tweak(&mut config);
    let mut out = OutDir::create(&flags.out)?;
    config.run(&mut out)?;
    write_manifest(&mut out, C::NAME, config.seed(), &config)?;
    Ok(out)
}

pub(crate) fn positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{name} must be positive, got {value}")))
    }
}

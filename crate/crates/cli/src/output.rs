use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Directory receiving every file a command writes.
pub struct OutDir {
    root: PathBuf,
    written: Vec<String>,
}

impl OutDir {
    pub fn create(root: &Path) -> Result<Self> {
        fs::create_dir_all(root).map_err(|source| CliError::Write { path: root.into(), source })?;
        Ok(Self { root: root.into(), written: Vec::new() })
    }

    /// Creates `name` and hands a buffered writer to `fill`.
    pub fn write(&mut self, name: &str, fill: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> Result<()> {
        let path = self.root.join(name);
        let err = |source| CliError::Write { path: path.clone(), source };
        let mut w = BufWriter::new(File::create(&path).map_err(err)?);
        fill(&mut w).and_then(|_| w.flush()).map_err(err)?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        self.write(name, |w| {
            serde_json::to_writer_pretty(&mut *w, value)?;
            writeln!(w)
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn written(&self) -> &[String] {
        &self.written
    }
}

#[derive(Serialize)]
struct Manifest<'a, C: Serialize> {
    command: &'a str,
    config_digest: String,
    seed: Option<u64>,
    outputs: &'a [String],
    config: &'a C,
}

/// Hex SHA-256 of the compact JSON form of `config`.
pub fn config_digest<C: Serialize>(config: &C) -> String {
    let bytes = serde_json::to_vec(config).expect("configs serialise");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes `<command>.manifest.json` listing everything written so far.
pub fn write_manifest<C: Serialize>(out: &mut OutDir, command: &str, seed: Option<u64>, config: &C) -> Result<()> {
    let outputs = out.written().to_vec();
    let manifest = Manifest {
        command,
        config_digest: config_digest(config),
        seed,
        outputs: &outputs,
        config,
    };
    out.write_json(&format!("{command}.manifest.json"), &manifest)
}

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Why a command did not succeed; selects the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or malformed input files (exit 2).
    Usage(anyhow::Error),
    /// A check or computation failed on valid input (exit 1).
    Failed(anyhow::Error),
}

impl Failure {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Self::Usage(anyhow::anyhow!("{msg}"))
    }

    pub fn failed(msg: impl fmt::Display) -> Self {
        Self::Failed(anyhow::anyhow!("{msg}"))
    }

    pub fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Failed(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(e) | Self::Failed(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<gencluster::Error> for Failure {
    fn from(e: gencluster::Error) -> Self {
        Self::Failed(e.into())
    }
}

pub type CmdResult = Result<(), Failure>;

/// Marks a library error caused by user input.
pub fn bad_input<T>(r: gencluster::Result<T>, what: &str) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(anyhow::Error::new(e).context(what.to_string())))
}

/// Reads and parses a JSON file; parse errors report line and column.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Usage)?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::usage(format!(
            "malformed JSON in {} at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

/// Stdout printing that honours `--quiet`, plus artifact writers.
pub struct Output {
    quiet: bool,
}

impl Output {
    pub fn new(quiet: bool) -> Self {
        Self { quiet }
    }

    pub fn line(&self, text: impl fmt::Display) {
        if !self.quiet {
            println!("{text}");
        }
    }

    pub fn write_json<T: Serialize + ?Sized>(&self, path: &Path, value: &T) -> CmdResult {
        let mut text = serde_json::to_string_pretty(value)
            .context("cannot serialize report")
            .map_err(Failure::Failed)?;
        text.push('\n');
        self.write_text(path, &text)
    }

    pub fn write_text(&self, path: &Path, text: &str) -> CmdResult {
        fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::Failed)
    }
}

//! Command-line front end: `preprocess`, `synth`, `train`, `eval`,
//! `ablate` and `spectrum`, driven by a TOML [`RunConfig`] plus flags.
//!
//! Exit codes: 0 success, 2 missing or unreadable inputs, 64 usage or
//! configuration errors, 1 anything else.

mod commands;
mod config;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{spectrum_csv, AblateMode, DomainCounts, Manifest, MANIFEST_FORMAT_VERSION, SPECTRUM_HEADER};
pub use config::{Axis, Channel, DataSection, EvalSection, EvalSubset, FilterSection, RunConfig, SpectrumSection};

use crate::error::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_MISSING_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "earda",
    version,
    about = "Domain-adaptive activity recognition for earable IMU data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub epochs: Option<usize>,
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    /// Train without the domain classifier.
    #[arg(long, global = true)]
    pub no_da: bool,
    /// Skip the head-motion low-pass filter.
    #[arg(long, global = true)]
    pub no_filter: bool,
    #[arg(long, global = true, value_enum)]
    pub channel: Option<Channel>,
    /// Canonical recording file or directory; repeatable. Replaces
    /// `data.inputs`.
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical recordings / public corpora to window files and a manifest.
    Preprocess,
    /// Write a seeded synthetic source/target pack.
    Synth,
    /// Train the adaptive model (or the source-only baseline with --no-da).
    Train,
    /// Evaluate a checkpoint on target windows.
    Eval,
    /// Adaptation or filter ablation.
    Ablate {
        #[arg(long, value_enum)]
        mode: AblateMode,
    },
    /// Amplitude spectrum of one recording channel as CSV.
    Spectrum,
}

impl Cli {
    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) if !path.exists() => {
                return Err(Error::MissingInput(format!("config file {}", path.display())));
            }
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.train.seed = seed;
        }
        if let Some(out) = &self.out {
            cfg.out = out.clone();
        }
        if let Some(epochs) = self.epochs {
            cfg.train.epochs = epochs;
        }
        if let Some(lambda) = self.lambda {
            cfg.train.lambda = lambda;
        }
        if self.no_filter {
            cfg.train.target_filter_enabled = false;
        }
        if let Some(channel) = self.channel {
            cfg.spectrum.channel = channel;
        }
        if !self.input.is_empty() {
            cfg.data.inputs = self.input.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn execute(&self) -> Result<String> {
        let cfg = self.resolve()?;
        match &self.command {
            Command::Preprocess => commands::preprocess(&cfg),
            Command::Synth => commands::synth(&cfg),
            Command::Train => commands::train(&cfg, self.no_da),
            Command::Eval => commands::eval(&cfg),
            Command::Ablate { mode } => commands::ablate(&cfg, *mode),
            Command::Spectrum => commands::spectrum_cmd(&cfg),
        }
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Config(_) | Error::Argument(_) | Error::FilterSpec(_) => EXIT_USAGE,
        Error::Io { .. }
        | Error::MissingInput(_)
        | Error::Compatibility(_)
        | Error::Corruption(_)
        | Error::Schema(_)
        | Error::Data(_)
        | Error::Label(_)
        | Error::CorpusFormat(_)
        | Error::Unit(_)
        | Error::LengthMismatch(_)
        | Error::TooShort(_)
        | Error::Shortage { .. } => EXIT_MISSING_INPUT,
        Error::Shape(_) | Error::Index(_) | Error::Diverged(_) | Error::Json(_) => EXIT_FAILURE,
    }
}

/// Parse `args` (program name first), run the command and return the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match cli.execute() {
        Ok(summary) => {
            println!("{summary}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

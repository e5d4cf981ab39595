use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dann::TrainConfig;
use crate::datasets::pipeline::FilterScope;
use crate::datasets::{GeneratorConfig, PublicCorpus};
use crate::error::{Error, Result};
use crate::signal::FilterSpec;

/// Where windows, checkpoints and reports live. Relative window and
/// checkpoint paths default to files inside `out`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DataSection {
    /// Root holding one directory per public corpus; falls back to
    /// `EARDA_DATA_ROOT`.
    pub root: Option<PathBuf>,
    /// Public corpora to read from the root.
    pub corpora: Vec<PublicCorpus>,
    /// Canonical recording files, or directories scanned for `*.csv`.
    pub inputs: Vec<PathBuf>,
    pub source_windows: Option<PathBuf>,
    pub target_windows: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalSubset {
    /// The target test split, re-derived from the checkpoint's seed.
    Test,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalSection {
    pub subset: EvalSubset,
}

impl Default for EvalSection {
    fn default() -> Self {
        EvalSection {
            subset: EvalSubset::Test,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    Accel,
    Gyro,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Magnitude,
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumSection {
    pub input: Option<PathBuf>,
    pub channel: Channel,
    pub axis: Axis,
    /// Which 100-sample, 25 Hz window of the recording to analyse.
    pub window: usize,
}

impl Default for SpectrumSection {
    fn default() -> Self {
        SpectrumSection {
            input: None,
            channel: Channel::Gyro,
            axis: Axis::Magnitude,
            window: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterSection {
    pub cutoff_hz: f64,
    pub order: usize,
    pub zero_phase: bool,
    pub scope: FilterScope,
}

impl Default for FilterSection {
    fn default() -> Self {
        let spec = FilterSpec::HEAD_MOTION;
        FilterSection {
            cutoff_hz: spec.cutoff_hz,
            order: spec.order,
            zero_phase: spec.zero_phase,
            scope: FilterScope::TargetOnly,
        }
    }
}

impl FilterSection {
    pub fn spec(&self) -> FilterSpec {
        FilterSpec {
            cutoff_hz: self.cutoff_hz,
            order: self.order,
            zero_phase: self.zero_phase,
        }
    }
}

/// Everything a command can be configured with. Flags override file values,
/// which override these defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub out: PathBuf,
    pub data: DataSection,
    pub train: TrainConfig,
    pub filter: FilterSection,
    pub generator: GeneratorConfig,
    pub eval: EvalSection,
    pub spectrum: SpectrumSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            out: PathBuf::from("out"),
            data: DataSection::default(),
            train: TrainConfig::default(),
            filter: FilterSection::default(),
            generator: GeneratorConfig::default(),
            eval: EvalSection::default(),
            spectrum: SpectrumSection::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RunConfig::from_toml(&text)
    }

    /// The filter applied to target windows, if any.
    pub fn target_filter(&self) -> Option<FilterSpec> {
        (self.train.target_filter_enabled && self.filter.scope != FilterScope::Disabled).then_some(self.filter.spec())
    }

    /// Filter for source windows (only when the scope covers all windows).
    pub fn source_filter(&self) -> Option<FilterSpec> {
        (self.train.target_filter_enabled && self.filter.scope == FilterScope::All).then_some(self.filter.spec())
    }

    pub fn source_windows_path(&self) -> PathBuf {
        self.data
            .source_windows
            .clone()
            .unwrap_or_else(|| self.out.join("source.windows"))
    }

    pub fn target_windows_path(&self) -> PathBuf {
        self.data
            .target_windows
            .clone()
            .unwrap_or_else(|| self.out.join("target.windows"))
    }

    pub fn checkpoint_path(&self) -> PathBuf {
        self.data
            .checkpoint
            .clone()
            .unwrap_or_else(|| self.out.join("model.ckpt"))
    }

    pub fn data_root(&self) -> Option<PathBuf> {
        self.data
            .root
            .clone()
            .or_else(|| std::env::var_os("EARDA_DATA_ROOT").map(PathBuf::from))
    }

    pub fn validate(&self) -> Result<()> {
        self.train.validate().map_err(|e| Error::Config(e.to_string()))?;
        self.generator.validate()?;
        self.filter.spec().validate(crate::datasets::TARGET_RATE_HZ)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips() {
        let text = RunConfig::default().to_toml().unwrap();
        let parsed = RunConfig::from_toml(&text).unwrap();
        assert_eq!(parsed, RunConfig::default());
        assert_eq!(parsed.to_toml().unwrap(), text);
    }

    #[test]
    fn partial_file_fills_defaults_and_echoes_stably() {
        let text = "out = \"runs/a\"\n[train]\nepochs = 3\nlambda = 0.5\n[filter]\ncutoff_hz = 4.0\n[data]\ncorpora = [\"motionsense\", \"hhar\"]\n";
        let c = RunConfig::from_toml(text).unwrap();
        assert_eq!(c.train.epochs, 3);
        assert_eq!(c.train.batch_size, 32);
        assert_eq!(c.filter.cutoff_hz, 4.0);
        assert_eq!(c.filter.order, 4);
        assert_eq!(c.data.corpora, vec![PublicCorpus::MotionSense, PublicCorpus::Hhar]);
        let echoed = c.to_toml().unwrap();
        assert_eq!(RunConfig::from_toml(&echoed).unwrap().to_toml().unwrap(), echoed);
    }

    #[test]
    fn unknown_keys_rejected() {
        for text in [
            "bogus = 1\n",
            "[train]\nlearning_rat = 0.1\n",
            "[filter]\ncutof_hz = 3.0\n",
            "[generator]\nwindows = 3\n",
        ] {
            assert!(matches!(RunConfig::from_toml(text), Err(Error::Config(_))), "{text}");
        }
    }

    #[test]
    fn filter_scope_controls_domains() {
        let mut c = RunConfig::default();
        assert!(c.target_filter().is_some() && c.source_filter().is_none());
        c.filter.scope = FilterScope::All;
        assert!(c.source_filter().is_some());
        c.train.target_filter_enabled = false;
        assert!(c.target_filter().is_none() && c.source_filter().is_none());
    }

    #[test]
    fn paths_default_into_out() {
        let c = RunConfig::default();
        assert_eq!(c.checkpoint_path(), PathBuf::from("out/model.ckpt"));
        let c = RunConfig::from_toml("[data]\ncheckpoint = \"m.ckpt\"\n").unwrap();
        assert_eq!(c.checkpoint_path(), PathBuf::from("m.ckpt"));
    }
}

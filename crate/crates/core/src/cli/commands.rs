use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{Axis, Channel, EvalSubset, RunConfig};
use crate::dann::{train_dann, train_source_only, DannModel};
use crate::datasets::{
    adapt_public, condition, load_canonical, read_windows, segment, split, synth_recordings, write_canonical,
    write_windows, DomainTag, GeneratorConfig, LabeledWindow, RawWindow, SourcedRecording, SplitSpec, Splits,
    TARGET_RATE_HZ, WINDOW_LEN,
};
use crate::error::{Error, Result};
use crate::eval::{ablate_da, ablate_filter, evaluate, render_table};
use crate::signal::{self, magnitude, resample_timestamps, spectrum, FilterSpec};

pub const MANIFEST_FORMAT_VERSION: u32 = 1;
pub const SPECTRUM_HEADER: &str = "freq_hz,magnitude";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AblateMode {
    Da,
    Filter,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct DomainCounts {
    pub windows: usize,
    pub classes: BTreeMap<String, usize>,
    pub head_movements: BTreeMap<String, usize>,
}

impl DomainCounts {
    fn tally(windows: &[LabeledWindow]) -> Self {
        let mut c = DomainCounts {
            windows: windows.len(),
            ..DomainCounts::default()
        };
        for w in windows {
            *c.classes.entry(w.label.as_str().to_string()).or_default() += 1;
            *c.head_movements.entry(w.head.as_str().to_string()).or_default() += 1;
        }
        c
    }
}

/// Summary written next to every window file pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub format_version: u32,
    pub seed: u64,
    pub source_filter: Option<FilterSpec>,
    pub target_filter: Option<FilterSpec>,
    pub total_windows: usize,
    pub source: DomainCounts,
    pub target: DomainCounts,
    pub recordings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorConfig>,
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn create_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

fn csv_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    files.sort();
    Ok(files)
}

/// Canonical files (or directories of them) and configured public corpora.
fn collect_recordings(cfg: &RunConfig) -> Result<Vec<SourcedRecording>> {
    let mut out = Vec::new();
    for input in &cfg.data.inputs {
        let files = if input.is_dir() {
            csv_files(input)?
        } else {
            vec![input.clone()]
        };
        for f in files {
            out.push(SourcedRecording {
                origin: f.display().to_string(),
                recording: load_canonical(&f)?,
            });
        }
    }
    if !cfg.data.corpora.is_empty() {
        let root = cfg.data_root().ok_or_else(|| {
            Error::MissingInput("corpora requested but no data root (set data.root or EARDA_DATA_ROOT)".into())
        })?;
        for corpus in &cfg.data.corpora {
            out.extend(adapt_public(*corpus, &root.join(corpus.as_str()))?);
        }
    }
    if out.is_empty() {
        return Err(Error::MissingInput(
            "no recordings configured (data.inputs, data.corpora or --input)".into(),
        ));
    }
    Ok(out)
}

fn raw_windows(recordings: &[SourcedRecording]) -> Result<(Vec<RawWindow>, Vec<RawWindow>)> {
    let (mut source, mut target) = (Vec::new(), Vec::new());
    for r in recordings {
        for w in segment(&r.origin, &r.recording)? {
            match w.domain {
                DomainTag::Source => source.push(w),
                DomainTag::Target => target.push(w),
            }
        }
    }
    Ok((source, target))
}

fn conditioned(raw: &[RawWindow], filter: Option<FilterSpec>) -> Result<Vec<LabeledWindow>> {
    raw.iter().map(|w| condition(w, filter.as_ref())).collect()
}

fn write_pack(
    cfg: &RunConfig,
    recordings: &[SourcedRecording],
    generator: Option<GeneratorConfig>,
) -> Result<Manifest> {
    let (src_raw, tgt_raw) = raw_windows(recordings)?;
    let source = conditioned(&src_raw, cfg.source_filter())?;
    let target = conditioned(&tgt_raw, cfg.target_filter())?;
    create_dir(&cfg.out)?;
    write_windows(&source, &cfg.source_windows_path())?;
    write_windows(&target, &cfg.target_windows_path())?;
    let manifest = Manifest {
        format_version: MANIFEST_FORMAT_VERSION,
        seed: cfg.train.seed,
        source_filter: cfg.source_filter(),
        target_filter: cfg.target_filter(),
        total_windows: source.len() + target.len(),
        source: DomainCounts::tally(&source),
        target: DomainCounts::tally(&target),
        recordings: recordings.iter().map(|r| r.origin.clone()).collect(),
        generator,
    };
    write_json(&manifest, &cfg.out.join("manifest.json"))?;
    Ok(manifest)
}

fn manifest_line(m: &Manifest) -> String {
    format!(
        "{} windows ({} source, {} target) from {} recordings",
        m.total_windows,
        m.source.windows,
        m.target.windows,
        m.recordings.len()
    )
}

pub fn preprocess(cfg: &RunConfig) -> Result<String> {
    let recordings = collect_recordings(cfg)?;
    let m = write_pack(cfg, &recordings, None)?;
    Ok(manifest_line(&m))
}

pub fn synth(cfg: &RunConfig) -> Result<String> {
    let (source, target) = synth_recordings(&cfg.generator, cfg.train.seed)?;
    let dir = cfg.out.join("recordings");
    create_dir(&dir)?;
    let mut all = Vec::with_capacity(source.len() + target.len());
    for r in source.into_iter().chain(target) {
        let name = r.origin.trim_start_matches("synth/").replace('/', "_");
        let file = format!("{name}.csv");
        write_canonical(&r.recording, &dir.join(&file))?;
        all.push(SourcedRecording {
            origin: format!("recordings/{file}"),
            recording: r.recording,
        });
    }
    let m = write_pack(cfg, &all, Some(cfg.generator.clone()))?;
    Ok(manifest_line(&m))
}

fn load_windows(path: &Path) -> Result<Vec<LabeledWindow>> {
    if !path.exists() {
        return Err(Error::MissingInput(format!(
            "window file {} (run preprocess or synth first)",
            path.display()
        )));
    }
    read_windows(path)
}

fn source_splits(cfg: &RunConfig) -> Result<Splits<LabeledWindow>> {
    split(
        &load_windows(&cfg.source_windows_path())?,
        &SplitSpec::public(cfg.train.seed),
    )
}

fn target_splits(cfg: &RunConfig) -> Result<Splits<LabeledWindow>> {
    split(
        &load_windows(&cfg.target_windows_path())?,
        &SplitSpec::earable(cfg.train.seed),
    )
}

pub fn train(cfg: &RunConfig, no_da: bool) -> Result<String> {
    let source = source_splits(cfg)?;
    let (model, report) = if no_da {
        train_source_only(&source, &cfg.train)?
    } else {
        train_dann(&source, &target_splits(cfg)?, &cfg.train)?
    };
    create_dir(&cfg.out)?;
    model.save(&cfg.checkpoint_path())?;
    write_json(&report, &cfg.out.join("train_report.json"))?;
    let kept = &report.epochs[report.selected_epoch - 1];
    let fmt = |v: Option<f64>| v.map_or("n/a".to_string(), |a| format!("{a:.4}"));
    Ok(format!(
        "epoch {} kept: label loss {:.4}, total {:.4}, source-val acc {}, target-val acc {} ({:.1} s)",
        kept.epoch,
        kept.label_loss,
        kept.total_loss,
        fmt(kept.source_val_accuracy),
        fmt(kept.target_val_accuracy),
        report.wall_clock_seconds
    ))
}

pub fn eval(cfg: &RunConfig) -> Result<String> {
    let path = cfg.checkpoint_path();
    if !path.exists() {
        return Err(Error::MissingInput(format!(
            "checkpoint {} (run train first)",
            path.display()
        )));
    }
    let model = DannModel::load(&path)?;
    let windows = load_windows(&cfg.target_windows_path())?;
    let windows = match cfg.eval.subset {
        EvalSubset::All => windows,
        EvalSubset::Test => split(&windows, &SplitSpec::earable(model.seed))?.test,
    };
    if windows.is_empty() {
        return Err(Error::MissingInput("no target windows to evaluate".into()));
    }
    let report = evaluate(&model, &windows)?;
    let table = render_table(&report);
    create_dir(&cfg.out)?;
    write_json(&report, &cfg.out.join("eval_report.json"))?;
    std::fs::write(cfg.out.join("eval_table.txt"), &table).map_err(|e| Error::io(cfg.out.join("eval_table.txt"), e))?;
    Ok(format!(
        "{table}accuracy {:.4}, macro-F1 {:.4} over {} windows",
        report.accuracy, report.macro_f1, report.count
    ))
}

/// Source windows and raw target windows from the configured recordings.
fn raw_pack(cfg: &RunConfig) -> Result<(Splits<LabeledWindow>, Splits<RawWindow>)> {
    let (src_raw, tgt_raw) = raw_windows(&collect_recordings(cfg)?)?;
    let source = conditioned(&src_raw, cfg.source_filter())?;
    Ok((
        split(&source, &SplitSpec::public(cfg.train.seed))?,
        split(&tgt_raw, &SplitSpec::earable(cfg.train.seed))?,
    ))
}

fn has_recordings(cfg: &RunConfig) -> bool {
    !cfg.data.inputs.is_empty() || !cfg.data.corpora.is_empty()
}

pub fn ablate(cfg: &RunConfig, mode: AblateMode) -> Result<String> {
    match mode {
        AblateMode::Da => {
            let (source, target) = if has_recordings(cfg) {
                let (source, raw) = raw_pack(cfg)?;
                let filter = cfg.target_filter();
                (source, raw.map(|w| condition(w, filter.as_ref()))?)
            } else {
                (source_splits(cfg)?, target_splits(cfg)?)
            };
            let cmp = ablate_da(&source, &target, &cfg.train)?;
            create_dir(&cfg.out)?;
            write_json(&cmp, &cfg.out.join("ablate_da.json"))?;
            Ok(format!(
                "target-test accuracy: adapted {:.4}, source-only {:.4}, gap {:+.1} points",
                cmp.dann.accuracy, cmp.source_only.accuracy, cmp.gap_points
            ))
        }
        AblateMode::Filter => {
            if !has_recordings(cfg) {
                return Err(Error::MissingInput(
                    "filter ablation needs unfiltered recordings (data.inputs, data.corpora or --input)".into(),
                ));
            }
            let (source, raw) = raw_pack(cfg)?;
            let cmp = ablate_filter(&source, &raw, &cfg.filter.spec(), &cfg.train)?;
            create_dir(&cfg.out)?;
            write_json(&cmp, &cfg.out.join("ablate_filter.json"))?;
            let mut line = format!(
                "overall accuracy: filtered {:.4}, unfiltered {:.4}, gap {:+.1} points",
                cmp.filtered.accuracy, cmp.unfiltered.accuracy, cmp.gap_points
            );
            for c in &cmp.per_condition {
                line.push_str(&format!("\n  {:<7} {:+.1}", c.condition.as_str(), c.delta_points));
            }
            Ok(line)
        }
    }
}

/// Amplitude spectrum of one 25 Hz, 100-sample window of a recording, as
/// `freq_hz,magnitude` CSV text.
pub fn spectrum_csv(recording: &signal::RawRecording, channel: Channel, axis: Axis, window: usize) -> Result<String> {
    let ts = recording.timestamps();
    let rate = recording.rate_hz();
    let series = |a: usize| -> Result<Vec<f64>> {
        let raw = match channel {
            Channel::Accel => signal::normalize_gravity(&recording.accel_axis(a), recording.accel_unit()),
            Channel::Gyro => recording.gyro_axis(a),
        };
        resample_timestamps(ts, &raw, rate, TARGET_RATE_HZ)
    };
    let full = match axis {
        Axis::Magnitude => magnitude(&series(0)?, &series(1)?, &series(2)?)?,
        Axis::X => series(0)?,
        Axis::Y => series(1)?,
        Axis::Z => series(2)?,
    };
    let start = window * WINDOW_LEN;
    if full.len() < start + WINDOW_LEN {
        return Err(Error::Argument(format!(
            "recording has {} windows at {TARGET_RATE_HZ} Hz, window {window} requested",
            full.len() / WINDOW_LEN
        )));
    }
    let s = spectrum(&full[start..start + WINDOW_LEN], TARGET_RATE_HZ)?;
    let mut out = String::from(SPECTRUM_HEADER);
    out.push('\n');
    for (f, m) in s.freqs.iter().zip(&s.magnitudes) {
        out.push_str(&format!("{f},{m}\n"));
    }
    Ok(out)
}

pub fn spectrum_cmd(cfg: &RunConfig) -> Result<String> {
    let input = cfg
        .data
        .inputs
        .first()
        .or(cfg.spectrum.input.as_ref())
        .ok_or_else(|| Error::MissingInput("no recording given (spectrum.input or --input)".into()))?;
    let recording = load_canonical(input)?;
    let csv = spectrum_csv(&recording, cfg.spectrum.channel, cfg.spectrum.axis, cfg.spectrum.window)?;
    create_dir(&cfg.out)?;
    let name = match cfg.spectrum.channel {
        Channel::Accel => "spectrum_accel.csv",
        Channel::Gyro => "spectrum_gyro.csv",
    };
    let path = cfg.out.join(name);
    std::fs::write(&path, &csv).map_err(|e| Error::io(&path, e))?;
    Ok(format!(
        "{} bins written to {}",
        csv.lines().count() - 1,
        path.display()
    ))
}

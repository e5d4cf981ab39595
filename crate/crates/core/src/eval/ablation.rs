use serde::{Deserialize, Serialize};

use super::metrics::{report, EvalReport, EVAL_FORMAT_VERSION};
use crate::dann::{train_dann, train_source_only, DannModel, TrainConfig};
use crate::datasets::{
    condition, split, synth_generate_raw, GeneratorConfig, HeadMovement, LabeledWindow, RawWindow, SplitSpec, Splits,
};
use crate::error::{Error, Result};
use crate::signal::FilterSpec;

/// Activity metrics of `model` on `windows`, grouped by head-movement
/// condition.
pub fn evaluate(model: &DannModel, windows: &[LabeledWindow]) -> Result<EvalReport> {
    let predictions: Vec<_> = model.predict_all(windows)?.into_iter().map(|p| p.label).collect();
    let truths: Vec<_> = windows.iter().map(|w| w.label).collect();
    let heads: Vec<_> = windows.iter().map(|w| w.head).collect();
    report(&truths, &predictions, Some(&heads))
}

/// A generated source/target pair, split the way the real corpora are:
/// source 80/10/10, target 10/10/80. Target windows are kept unconditioned
/// so the filter can be toggled.
#[derive(Debug, Clone)]
pub struct SyntheticPack {
    pub source: Splits<LabeledWindow>,
    pub target_raw: Splits<RawWindow>,
}

impl SyntheticPack {
    pub fn generate(config: &GeneratorConfig, seed: u64) -> Result<Self> {
        let (src, tgt) = synth_generate_raw(config, seed)?;
        let src: Vec<LabeledWindow> = src.iter().map(|w| condition(w, None)).collect::<Result<_>>()?;
        Ok(SyntheticPack {
            source: split(&src, &SplitSpec::public(seed))?,
            target_raw: split(&tgt, &SplitSpec::earable(seed))?,
        })
    }

    pub fn target(&self, filter: Option<&FilterSpec>) -> Result<Splits<LabeledWindow>> {
        self.target_raw.map(|w| condition(w, filter))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DaComparison {
    pub format_version: u32,
    pub seed: u64,
    pub dann: EvalReport,
    pub source_only: EvalReport,
    /// DANN minus source-only target-test accuracy, in percentage points.
    pub gap_points: f64,
}

impl DaComparison {
    pub fn from_reports(seed: u64, dann: EvalReport, source_only: EvalReport) -> Self {
        DaComparison {
            format_version: EVAL_FORMAT_VERSION,
            seed,
            gap_points: 100.0 * (dann.accuracy - source_only.accuracy),
            dann,
            source_only,
        }
    }
}

/// Train with and without adaptation from the same seed and compare both on
/// the target test split.
pub fn ablate_da(
    source: &Splits<LabeledWindow>,
    target: &Splits<LabeledWindow>,
    config: &TrainConfig,
) -> Result<DaComparison> {
    if target.test.is_empty() {
        return Err(Error::Argument("target test split is empty".into()));
    }
    let (adapted, _) = train_dann(source, target, config)?;
    let dann = evaluate(&adapted, &target.test)?;
    let (baseline, _) = train_source_only(source, config)?;
    let source_only = evaluate(&baseline, &target.test)?;
    Ok(DaComparison::from_reports(config.seed, dann, source_only))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionDelta {
    pub condition: HeadMovement,
    pub filtered_accuracy: f64,
    pub unfiltered_accuracy: f64,
    pub delta_points: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterComparison {
    pub format_version: u32,
    pub seed: u64,
    pub filtered: EvalReport,
    pub unfiltered: EvalReport,
    /// Filtered minus unfiltered overall accuracy, in percentage points.
    pub gap_points: f64,
    pub per_condition: Vec<ConditionDelta>,
}

impl FilterComparison {
    pub fn from_reports(seed: u64, filtered: EvalReport, unfiltered: EvalReport) -> Self {
        let per_condition = filtered
            .groups
            .iter()
            .filter_map(|g| {
                let other = unfiltered.group(g.condition)?;
                Some(ConditionDelta {
                    condition: g.condition,
                    filtered_accuracy: g.report.accuracy,
                    unfiltered_accuracy: other.accuracy,
                    delta_points: 100.0 * (g.report.accuracy - other.accuracy),
                })
            })
            .collect();
        FilterComparison {
            format_version: EVAL_FORMAT_VERSION,
            seed,
            gap_points: 100.0 * (filtered.accuracy - unfiltered.accuracy),
            filtered,
            unfiltered,
            per_condition,
        }
    }

    /// Largest per-condition accuracy loss caused by filtering, in points
    /// (0 when no condition got worse).
    pub fn worst_degradation(&self) -> f64 {
        self.per_condition.iter().map(|c| -c.delta_points).fold(0.0, f64::max)
    }
}

/// Run the adaptive pipeline twice, once with `filter` applied to every
/// target window and once without, and compare per condition.
pub fn ablate_filter(
    source: &Splits<LabeledWindow>,
    target_raw: &Splits<RawWindow>,
    filter: &FilterSpec,
    config: &TrainConfig,
) -> Result<FilterComparison> {
    if target_raw.test.is_empty() {
        return Err(Error::Argument("target test split is empty".into()));
    }
    let run = |f: Option<&FilterSpec>| -> Result<EvalReport> {
        let target = target_raw.map(|w| condition(w, f))?;
        let (model, _) = train_dann(source, &target, config)?;
        evaluate(&model, &target.test)
    };
    let filtered = run(Some(filter))?;
    let unfiltered = run(None)?;
    Ok(FilterComparison::from_reports(config.seed, filtered, unfiltered))
}

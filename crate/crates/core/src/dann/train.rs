use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::model::DannModel;
use crate::datasets::{LabeledWindow, Splits};
use crate::error::{Error, Result};
use crate::nn::{
    adam_step, backprop_batch, backprop_label_only, batch_losses, AdamConfig, LossComponents, ModelDims,
    OptimizerState, Sample,
};

pub const REPORT_FORMAT_VERSION: u32 = 1;

/// Which epoch's parameters a training run returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckpointSelection {
    Last,
    /// Highest validation accuracy on the target domain (source domain for
    /// runs that never see target data). Earliest epoch wins ties.
    BestTargetVal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub lambda: f64,
    pub batch_size: usize,
    /// Target windows drawn per step; defaults to `batch_size` when absent.
    pub target_batch_size: Option<usize>,
    pub epochs: usize,
    pub learning_rate: f64,
    pub seed: u64,
    pub target_filter_enabled: bool,
    pub checkpoint_selection: CheckpointSelection,
    /// Feed target-train labels to the label predictor.
    pub supervised_target: bool,
    pub model: ModelDims,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            lambda: 0.3,
            batch_size: 32,
            target_batch_size: None,
            epochs: 200,
            learning_rate: 1e-3,
            seed: 0,
            target_filter_enabled: true,
            checkpoint_selection: CheckpointSelection::BestTargetVal,
            supervised_target: true,
            model: ModelDims::default(),
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.batch_size == 0 || self.target_batch_size == Some(0) {
            return Err(Error::Argument("batch size must be at least 1".into()));
        }
        if self.epochs == 0 {
            return Err(Error::Argument("epochs must be at least 1".into()));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::Argument(format!(
                "lambda must be non-negative, got {}",
                self.lambda
            )));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Argument(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            )));
        }
        self.model.validate()
    }

    fn target_batch(&self) -> usize {
        self.target_batch_size.unwrap_or(self.batch_size)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrainMode {
    Dann,
    SourceOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub label_loss: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub domain_loss: Option<f64>,
    pub total_loss: f64,
    pub source_val_accuracy: Option<f64>,
    pub target_val_accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    pub format_version: u32,
    pub mode: TrainMode,
    pub seed: u64,
    pub lambda: f64,
    pub epochs: Vec<EpochRecord>,
    /// One-based epoch whose parameters were kept.
    pub selected_epoch: usize,
    pub wall_clock_seconds: f64,
}

impl TrainReport {
    /// The report with the wall-clock field zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> TrainReport {
        TrainReport {
            wall_clock_seconds: 0.0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn source_sample(w: &LabeledWindow) -> Sample<'_> {
    Sample {
        window: w.data(),
        label: w.label.index(),
        domain: w.domain.index(),
        use_label_loss: true,
    }
}

/// Adversarial objective on one source batch and one target batch.
pub fn total_loss(
    source: &[LabeledWindow],
    target: &[LabeledWindow],
    model: &DannModel,
    use_target_labels: bool,
) -> Result<LossComponents> {
    if source.is_empty() && target.is_empty() {
        return Err(Error::Argument("both batches are empty".into()));
    }
    let batch: Vec<Sample> = source
        .iter()
        .map(source_sample)
        .chain(target.iter().map(|w| Sample {
            use_label_loss: use_target_labels,
            ..source_sample(w)
        }))
        .collect();
    batch_losses(&batch, &model.params, model.lambda)
}

fn optional_accuracy(model: &DannModel, windows: &[LabeledWindow]) -> Result<Option<f64>> {
    if windows.is_empty() {
        Ok(None)
    } else {
        model.accuracy(windows).map(Some)
    }
}

struct Loop<'a> {
    config: &'a TrainConfig,
    source: &'a Splits<LabeledWindow>,
    target: Option<&'a Splits<LabeledWindow>>,
}

impl Loop<'_> {
    fn run(&self) -> Result<(DannModel, TrainReport)> {
        let cfg = self.config;
        cfg.validate()?;
        if self.source.train.is_empty() {
            return Err(Error::Argument("source train split is empty".into()));
        }
        if let Some(t) = self.target {
            if t.train.is_empty() {
                return Err(Error::Argument("target train split is empty".into()));
            }
        }
        let started = Instant::now();
        let mut model = DannModel::new(cfg.model, cfg.lambda, cfg.seed)?;
        let adam = AdamConfig {
            learning_rate: cfg.learning_rate,
            ..AdamConfig::default()
        };
        let mut opt = OptimizerState::new(&model.params, adam);
        // Independent streams: the source schedule does not depend on target sampling.
        let mut order_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        order_rng.set_stream(1);
        let mut target_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        target_rng.set_stream(2);

        let mut order: Vec<usize> = (0..self.source.train.len()).collect();
        let mut epochs = Vec::with_capacity(cfg.epochs);
        let mut best: Option<(f64, usize, DannModel)> = None;
        for epoch in 1..=cfg.epochs {
            order.shuffle(&mut order_rng);
            let (mut ly, mut ld, mut tot, mut steps) = (0.0, 0.0, 0.0, 0usize);
            for chunk in order.chunks(cfg.batch_size) {
                let mut batch: Vec<Sample> = chunk.iter().map(|&i| source_sample(&self.source.train[i])).collect();
                let (losses, grads) = match self.target {
                    Some(t) => {
                        for _ in 0..cfg.target_batch() {
                            let w = &t.train[target_rng.gen_range(0..t.train.len())];
                            batch.push(Sample {
                                use_label_loss: cfg.supervised_target,
                                ..source_sample(w)
                            });
                        }
                        backprop_batch(&batch, &model.params, cfg.lambda)?
                    }
                    None => backprop_label_only(&batch, &model.params)?,
                };
                adam_step(&mut model.params, &grads, &mut opt)?;
                ly += losses.label_loss;
                ld += losses.domain_loss.unwrap_or(0.0);
                tot += losses.total;
                steps += 1;
            }
            let n = steps as f64;
            let source_val = optional_accuracy(&model, &self.source.val)?;
            let target_val = match self.target {
                Some(t) => optional_accuracy(&model, &t.val)?,
                None => None,
            };
            if !model.params.is_finite() {
                return Err(Error::Diverged(epoch));
            }
            epochs.push(EpochRecord {
                epoch,
                label_loss: ly / n,
                domain_loss: self.target.map(|_| ld / n),
                total_loss: tot / n,
                source_val_accuracy: source_val,
                target_val_accuracy: target_val,
            });
            log::debug!(
                "epoch {epoch}: E={:.4} src_val={source_val:?} tgt_val={target_val:?}",
                tot / n
            );
            if cfg.checkpoint_selection == CheckpointSelection::BestTargetVal {
                let score = if self.target.is_some() { target_val } else { source_val };
                if let Some(score) = score {
                    if best.as_ref().map_or(true, |(b, _, _)| score > *b) {
                        best = Some((score, epoch, model.clone()));
                    }
                }
            }
        }
        let (model, selected_epoch) = match best {
            Some((_, epoch, m)) => (m, epoch),
            None => (model, cfg.epochs),
        };
        let report = TrainReport {
            format_version: REPORT_FORMAT_VERSION,
            mode: if self.target.is_some() {
                TrainMode::Dann
            } else {
                TrainMode::SourceOnly
            },
            seed: cfg.seed,
            lambda: if self.target.is_some() { cfg.lambda } else { 0.0 },
            epochs,
            selected_epoch,
            wall_clock_seconds: started.elapsed().as_secs_f64(),
        };
        Ok((model, report))
    }
}

/// Adversarial training: each step pairs a shuffled source batch with a
/// target batch drawn with replacement.
pub fn train_dann(
    source: &Splits<LabeledWindow>,
    target: &Splits<LabeledWindow>,
    config: &TrainConfig,
) -> Result<(DannModel, TrainReport)> {
    Loop {
        config,
        source,
        target: Some(target),
    }
    .run()
}

/// Same recipe on source data alone; the domain head is never trained.
pub fn train_source_only(source: &Splits<LabeledWindow>, config: &TrainConfig) -> Result<(DannModel, TrainReport)> {
    Loop {
        config,
        source,
        target: None,
    }
    .run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{ActivityLabel, DomainTag, HeadMovement};

    fn tiny_config() -> TrainConfig {
        TrainConfig {
            batch_size: 4,
            epochs: 2,
            checkpoint_selection: CheckpointSelection::Last,
            model: ModelDims {
                hidden: 3,
                head_hidden: 4,
                seq_len: 100,
                ..ModelDims::default()
            },
            ..TrainConfig::default()
        }
    }

    fn windows(n: usize, domain: DomainTag) -> Vec<LabeledWindow> {
        (0..n)
            .map(|i| {
                let label = ActivityLabel::ALL[i % 4];
                let f = 0.2 + 0.15 * label.index() as f64;
                let data = (0..100)
                    .map(|t| [1.0 + 0.3 * (t as f64 * f + i as f64).sin(), 0.1 * label.index() as f64])
                    .collect();
                LabeledWindow::new(data, label, domain, HeadMovement::None, format!("{i}")).unwrap()
            })
            .collect()
    }

    fn splits(domain: DomainTag) -> Splits<LabeledWindow> {
        Splits {
            train: windows(10, domain),
            val: windows(4, domain),
            test: windows(4, domain),
        }
    }

    #[test]
    fn zero_model_total_loss() {
        let m = DannModel::zeros(ModelDims::default(), 0.3);
        let s = windows(3, DomainTag::Source);
        let t = windows(2, DomainTag::Target);
        let l = total_loss(&s, &t, &m, true).unwrap();
        assert!((l.label_loss - 4f64.ln()).abs() < 1e-12);
        assert!((l.domain_loss.unwrap() - 2f64.ln()).abs() < 1e-12);
        assert!((l.total - 1.178350).abs() < 1e-6);
        let m0 = DannModel::zeros(ModelDims::default(), 0.0);
        let l0 = total_loss(&s, &t, &m0, true).unwrap();
        assert_eq!(l0.total, l0.label_loss);
        assert!(matches!(total_loss(&[], &[], &m, true), Err(Error::Argument(_))));
    }

    #[test]
    fn report_has_one_entry_per_epoch() {
        let cfg = TrainConfig {
            epochs: 1,
            ..tiny_config()
        };
        let (_, r) = train_dann(&splits(DomainTag::Source), &splits(DomainTag::Target), &cfg).unwrap();
        assert_eq!(r.epochs.len(), 1);
        assert!(r.epochs[0].domain_loss.is_some());
        let (_, r) = train_source_only(&splits(DomainTag::Source), &cfg).unwrap();
        assert!(r.epochs[0].domain_loss.is_none());
        assert!(!r.to_json().unwrap().contains("domain_loss"));
    }

    #[test]
    fn invalid_configs_rejected() {
        let s = splits(DomainTag::Source);
        let cfg = TrainConfig {
            epochs: 0,
            ..tiny_config()
        };
        assert!(matches!(train_source_only(&s, &cfg), Err(Error::Argument(_))));
        let cfg = TrainConfig {
            batch_size: 0,
            ..tiny_config()
        };
        assert!(matches!(train_source_only(&s, &cfg), Err(Error::Argument(_))));
        let empty = Splits {
            train: vec![],
            val: vec![],
            test: vec![],
        };
        assert!(matches!(
            train_dann(&s, &empty, &tiny_config()),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            train_source_only(&empty, &tiny_config()),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn deterministic_per_seed() {
        let (s, t) = (splits(DomainTag::Source), splits(DomainTag::Target));
        let (m1, r1) = train_dann(&s, &t, &tiny_config()).unwrap();
        let (m2, r2) = train_dann(&s, &t, &tiny_config()).unwrap();
        assert_eq!(m1.to_bytes(), m2.to_bytes());
        assert_eq!(r1.without_timing(), r2.without_timing());
    }

    #[test]
    fn zero_lambda_matches_source_only() {
        let (s, t) = (splits(DomainTag::Source), splits(DomainTag::Target));
        let cfg = TrainConfig {
            lambda: 0.0,
            supervised_target: false,
            ..tiny_config()
        };
        let (a, _) = train_dann(&s, &t, &cfg).unwrap();
        let (b, _) = train_source_only(&s, &cfg).unwrap();
        assert_eq!(a.params.feature, b.params.feature);
        assert_eq!(a.params.label, b.params.label);
        assert_ne!(a.params.domain, b.params.domain);
    }
}

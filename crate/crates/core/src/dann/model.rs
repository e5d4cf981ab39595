use std::path::Path;

use rayon::prelude::*;

use crate::datasets::{ActivityLabel, DomainTag, LabeledWindow};
use crate::error::{Error, Result};
use crate::nn::{self, decode_checkpoint, encode_checkpoint, head_forward, softmax, Checkpoint, ModelDims, Params};

/// Feature extractor, label predictor and domain classifier, plus the
/// reversal weight used while training.
#[derive(Debug, Clone, PartialEq)]
pub struct DannModel {
    pub dims: ModelDims,
    pub params: Params,
    pub lambda: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: ActivityLabel,
    pub probabilities: Vec<f64>,
}

/// Index of the largest entry; ties go to the lowest index.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

impl DannModel {
    pub fn new(dims: ModelDims, lambda: f64, seed: u64) -> Result<Self> {
        dims.validate()?;
        if dims.classes != ActivityLabel::COUNT || dims.domains != 2 {
            return Err(Error::Config(format!(
                "label head must have {} outputs and domain head 2, got {} and {}",
                ActivityLabel::COUNT,
                dims.classes,
                dims.domains
            )));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::Config(format!(
                "lambda must be a non-negative number, got {lambda}"
            )));
        }
        Ok(DannModel {
            dims,
            params: Params::init(&dims, seed),
            lambda,
            seed,
        })
    }

    /// All parameters zero; every prediction is uniform.
    pub fn zeros(dims: ModelDims, lambda: f64) -> Self {
        DannModel {
            dims,
            params: Params::zeros(&dims),
            lambda,
            seed: 0,
        }
    }

    fn check_window(&self, window: &[[f64; 2]]) -> Result<()> {
        if window.len() != self.dims.seq_len || self.dims.input != 2 {
            return Err(Error::Shape(format!(
                "window has {} rows, model expects {}",
                window.len(),
                self.dims.seq_len
            )));
        }
        Ok(())
    }

    pub fn feature(&self, window: &[[f64; 2]]) -> Result<Vec<f64>> {
        self.check_window(window)?;
        Ok(nn::feature_forward(window, &self.params.feature)?.0)
    }

    pub fn predict(&self, window: &[[f64; 2]]) -> Result<Prediction> {
        let f = self.feature(window)?;
        let probabilities = softmax(&head_forward(&f, &self.params.label)?.0);
        let label = ActivityLabel::from_index(argmax(&probabilities))?;
        Ok(Prediction { label, probabilities })
    }

    pub fn predict_all(&self, windows: &[LabeledWindow]) -> Result<Vec<Prediction>> {
        windows.par_iter().map(|w| self.predict(w.data())).collect()
    }

    /// Domain classifier decision for one window.
    pub fn predict_domain(&self, window: &[[f64; 2]]) -> Result<DomainTag> {
        let f = self.feature(window)?;
        let logits = head_forward(&f, &self.params.domain)?.0;
        DomainTag::from_index(argmax(&logits))
    }

    /// Fraction of windows whose activity is predicted correctly.
    pub fn accuracy(&self, windows: &[LabeledWindow]) -> Result<f64> {
        if windows.is_empty() {
            return Err(Error::Argument("accuracy of an empty set".into()));
        }
        let preds = self.predict_all(windows)?;
        let hits = preds.iter().zip(windows).filter(|(p, w)| p.label == w.label).count();
        Ok(hits as f64 / windows.len() as f64)
    }

    /// Fraction of windows whose domain the domain classifier gets right.
    pub fn domain_accuracy(&self, windows: &[LabeledWindow]) -> Result<f64> {
        if windows.is_empty() {
            return Err(Error::Argument("accuracy of an empty set".into()));
        }
        let hits: Vec<bool> = windows
            .par_iter()
            .map(|w| Ok(self.predict_domain(w.data())? == w.domain))
            .collect::<Result<_>>()?;
        Ok(hits.iter().filter(|h| **h).count() as f64 / windows.len() as f64)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        encode_checkpoint(&Checkpoint {
            dims: self.dims,
            lambda: self.lambda,
            seed: self.seed,
            params: self.params.clone(),
        })
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let ck = decode_checkpoint(bytes)?;
        if ck.dims.classes != ActivityLabel::COUNT || ck.dims.domains != 2 || ck.dims.input != 2 {
            return Err(Error::Compatibility(format!(
                "checkpoint head sizes do not fit this task: {:?}",
                ck.dims
            )));
        }
        Ok(DannModel {
            dims: ck.dims,
            params: ck.params,
            lambda: ck.lambda,
            seed: ck.seed,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_bytes()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        DannModel::from_bytes(&bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(phase: f64) -> Vec<[f64; 2]> {
        (0..100)
            .map(|t| [1.0 + 0.3 * (t as f64 * 0.4 + phase).sin(), 0.2 * (t as f64 * 0.9).cos()])
            .collect()
    }

    #[test]
    fn zero_model_predicts_uniform_walking() {
        let m = DannModel::zeros(ModelDims::default(), 0.3);
        let p = m.predict(&window(0.0)).unwrap();
        assert_eq!(p.label, ActivityLabel::Walking);
        assert_eq!(p.probabilities, vec![0.25; 4]);
    }

    #[test]
    fn probabilities_normalized_and_pure() {
        let m = DannModel::new(ModelDims::default(), 0.3, 8).unwrap();
        let w = window(1.3);
        let alone = m.predict(&w).unwrap();
        assert!((alone.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(alone.probabilities.iter().all(|p| *p >= 0.0));
        let batch: Vec<LabeledWindow> = [0.2, 1.3, 2.0]
            .iter()
            .map(|ph| {
                LabeledWindow::new(
                    window(*ph),
                    ActivityLabel::Jogging,
                    DomainTag::Source,
                    crate::datasets::HeadMovement::None,
                    "t",
                )
                .unwrap()
            })
            .collect();
        assert_eq!(m.predict_all(&batch).unwrap()[1], alone);
    }

    #[test]
    fn bad_window_rejected() {
        let m = DannModel::new(ModelDims::default(), 0.3, 0).unwrap();
        assert!(matches!(m.predict(&window(0.0)[..99]), Err(Error::Shape(_))));
        assert!(DannModel::new(ModelDims::default(), -1.0, 0).is_err());
    }

    #[test]
    fn argmax_ties_and_scaling() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0, 0.0]), 1);
        let logits = [0.3, -1.2, 2.2, 2.1];
        for k in [0.01, 1.0, 7.5, 1e3] {
            let scaled: Vec<f64> = logits.iter().map(|v| v * k).collect();
            assert_eq!(argmax(&softmax(&scaled)), 2);
        }
    }

    #[test]
    fn checkpoint_round_trip() {
        let m = DannModel::new(ModelDims::default(), 0.3, 21).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.ckpt");
        m.save(&path).unwrap();
        assert_eq!(DannModel::load(&path).unwrap(), m);
        let bytes = std::fs::read(&path).unwrap();
        let mut bumped = bytes.clone();
        bumped[4] += 1;
        assert!(matches!(DannModel::from_bytes(&bumped), Err(Error::Compatibility(_))));
        assert!(matches!(
            DannModel::from_bytes(&bytes[..bytes.len() - 9]),
            Err(Error::Corruption(_))
        ));
        assert!(matches!(
            DannModel::load(&dir.path().join("missing")),
            Err(Error::Io { .. })
        ));
    }
}

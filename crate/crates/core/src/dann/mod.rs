//! Three-part adversarial model, its training loop and the no-adaptation
//! baseline.

mod model;
mod train;

pub use model::{argmax, DannModel, Prediction};
pub use train::{
    total_loss, train_dann, train_source_only, CheckpointSelection, EpochRecord, TrainConfig, TrainMode, TrainReport,
    REPORT_FORMAT_VERSION,
};

use crate::datasets::ActivityLabel;
use crate::error::Result;

/// Predicted activity and class probabilities for one window.
pub fn predict(model: &DannModel, window: &[[f64; 2]]) -> Result<(ActivityLabel, Vec<f64>)> {
    let p = model.predict(window)?;
    Ok((p.label, p.probabilities))
}

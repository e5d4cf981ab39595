use super::labels::{ActivityLabel, DomainTag, HeadMovement};
use crate::error::{Error, Result};

/// Samples per model input sequence (4 s at 25 Hz).
pub const WINDOW_LEN: usize = 100;
/// Magnitude channels: acceleration (g), angular rate (rad/s).
pub const CHANNELS: usize = 2;
/// Rate every window is sampled at.
pub const TARGET_RATE_HZ: f64 = 25.0;

/// Anything carrying an activity label.
pub trait Labeled {
    fn label(&self) -> ActivityLabel;
}

/// A model-ready 100×2 magnitude sequence with its annotations.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledWindow {
    data: Vec<[f64; CHANNELS]>,
    pub label: ActivityLabel,
    pub domain: DomainTag,
    pub head: HeadMovement,
    pub origin: String,
}

impl LabeledWindow {
    /// Checks the shape (exactly [`WINDOW_LEN`] rows), finiteness, and that
    /// the acceleration magnitude is non-negative.
    pub fn new(
        data: Vec<[f64; CHANNELS]>,
        label: ActivityLabel,
        domain: DomainTag,
        head: HeadMovement,
        origin: impl Into<String>,
    ) -> Result<Self> {
        if data.len() != WINDOW_LEN {
            return Err(Error::Shape(format!(
                "window has {} rows, expected {WINDOW_LEN}",
                data.len()
            )));
        }
        if data.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Data("window contains non-finite values".into()));
        }
        if data.iter().any(|r| r[0] < 0.0) {
            return Err(Error::Data("negative acceleration magnitude".into()));
        }
        Ok(LabeledWindow {
            data,
            label,
            domain,
            head,
            origin: origin.into(),
        })
    }

    pub fn data(&self) -> &[[f64; CHANNELS]] {
        &self.data
    }

    pub fn channel(&self, c: usize) -> Vec<f64> {
        self.data.iter().map(|r| r[c]).collect()
    }
}

impl Labeled for LabeledWindow {
    fn label(&self) -> ActivityLabel {
        self.label
    }
}

/// A 100-sample, 25 Hz slice of a recording before magnitude computation:
/// acceleration in g, angular rate in rad/s, per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct RawWindow {
    pub accel: Vec<[f64; 3]>,
    pub gyro: Vec<[f64; 3]>,
    pub label: ActivityLabel,
    pub domain: DomainTag,
    pub head: HeadMovement,
    pub origin: String,
}

impl Labeled for RawWindow {
    fn label(&self) -> ActivityLabel {
        self.label
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::datasets::{ActivityLabel, HeadMovement};
use crate::error::{Error, Result};

/// Unit an accelerometer stream is recorded in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AccelUnit {
    #[serde(rename = "ms2")]
    MetersPerSecondSquared,
    #[serde(rename = "g")]
    G,
}

impl AccelUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            AccelUnit::MetersPerSecondSquared => "ms2",
            AccelUnit::G => "g",
        }
    }
}

impl FromStr for AccelUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ms2" | "m/s2" | "m/s²" => Ok(AccelUnit::MetersPerSecondSquared),
            "g" => Ok(AccelUnit::G),
            other => Err(Error::Unit(format!("unknown acceleration unit {other:?}"))),
        }
    }
}

impl fmt::Display for AccelUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where the sensor was worn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SensorLocation {
    Head,
    Pocket,
    Waist,
    Arm,
    Belt,
    Wrist,
}

impl SensorLocation {
    pub const ALL: [SensorLocation; 6] = [
        SensorLocation::Head,
        SensorLocation::Pocket,
        SensorLocation::Waist,
        SensorLocation::Arm,
        SensorLocation::Belt,
        SensorLocation::Wrist,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SensorLocation::Head => "head",
            SensorLocation::Pocket => "pocket",
            SensorLocation::Waist => "waist",
            SensorLocation::Arm => "arm",
            SensorLocation::Belt => "belt",
            SensorLocation::Wrist => "wrist",
        }
    }

    /// Head-worn recordings belong to the target domain.
    pub fn is_head_worn(self) -> bool {
        self == SensorLocation::Head
    }
}

impl FromStr for SensorLocation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        SensorLocation::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Data(format!("unknown sensor location {s:?}")))
    }
}

impl fmt::Display for SensorLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A timestamped 6-axis inertial stream.
///
/// Accelerometer samples carry a unit tag; gyroscope samples are rad/s.
/// Activity and head-movement annotations are optional and, when present,
/// are per sample. An activity entry of `None` marks samples outside the
/// four activities of interest.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRecording {
    timestamps: Vec<f64>,
    accel: Vec<[f64; 3]>,
    accel_unit: AccelUnit,
    gyro: Vec<[f64; 3]>,
    rate_hz: f64,
    location: SensorLocation,
    activity: Option<Vec<Option<ActivityLabel>>>,
    head_movement: Option<Vec<HeadMovement>>,
}

impl RawRecording {
    pub fn new(
        timestamps: Vec<f64>,
        accel: Vec<[f64; 3]>,
        accel_unit: AccelUnit,
        gyro: Vec<[f64; 3]>,
        rate_hz: f64,
        location: SensorLocation,
    ) -> Result<Self> {
        let n = timestamps.len();
        if accel.len() != n || gyro.len() != n {
            return Err(Error::LengthMismatch(format!(
                "{n} timestamps, {} accel samples, {} gyro samples",
                accel.len(),
                gyro.len()
            )));
        }
        if !(rate_hz > 0.0 && rate_hz.is_finite()) {
            return Err(Error::Data(format!("sampling rate must be positive, got {rate_hz}")));
        }
        if let Some(i) = timestamps.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::Data(format!(
                "timestamps decrease at row {}: {} -> {}",
                i + 1,
                timestamps[i],
                timestamps[i + 1]
            )));
        }
        let finite = |s: &[f64; 3]| s.iter().all(|v| v.is_finite());
        if timestamps.iter().any(|t| !t.is_finite()) || !accel.iter().all(finite) || !gyro.iter().all(finite) {
            return Err(Error::Data("non-finite sample".into()));
        }
        Ok(RawRecording {
            timestamps,
            accel,
            accel_unit,
            gyro,
            rate_hz,
            location,
            activity: None,
            head_movement: None,
        })
    }

    pub fn with_activity(mut self, activity: Vec<Option<ActivityLabel>>) -> Result<Self> {
        if activity.len() != self.len() {
            return Err(Error::LengthMismatch(format!(
                "{} activity annotations for {} samples",
                activity.len(),
                self.len()
            )));
        }
        self.activity = Some(activity);
        Ok(self)
    }

    pub fn with_head_movement(mut self, head: Vec<HeadMovement>) -> Result<Self> {
        if head.len() != self.len() {
            return Err(Error::LengthMismatch(format!(
                "{} head-movement annotations for {} samples",
                head.len(),
                self.len()
            )));
        }
        self.head_movement = Some(head);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timestamps.is_empty()
    }

    pub fn timestamps(&self) -> &[f64] {
        &self.timestamps
    }

    pub fn accel(&self) -> &[[f64; 3]] {
        &self.accel
    }

    pub fn accel_unit(&self) -> AccelUnit {
        self.accel_unit
    }

    pub fn gyro(&self) -> &[[f64; 3]] {
        &self.gyro
    }

    pub fn rate_hz(&self) -> f64 {
        self.rate_hz
    }

    pub fn location(&self) -> SensorLocation {
        self.location
    }

    pub fn activity(&self) -> Option<&[Option<ActivityLabel>]> {
        self.activity.as_deref()
    }

    pub fn head_movement(&self) -> Option<&[HeadMovement]> {
        self.head_movement.as_deref()
    }

    /// One axis of the accelerometer stream.
    pub fn accel_axis(&self, axis: usize) -> Vec<f64> {
        self.accel.iter().map(|s| s[axis]).collect()
    }

    pub fn gyro_axis(&self, axis: usize) -> Vec<f64> {
        self.gyro.iter().map(|s| s[axis]).collect()
    }
}

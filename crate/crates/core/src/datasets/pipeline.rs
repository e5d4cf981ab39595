//! Recording → window conversion.
//!
//! `segment` normalizes acceleration to g, brings all six axes onto a
//! uniform 25 Hz grid and cuts non-overlapping 100-sample raw windows.
//! `condition` optionally low-passes each axis and reduces the window to
//! its two magnitude channels.

use serde::{Deserialize, Serialize};

use super::labels::{ActivityLabel, DomainTag, HeadMovement};
use super::windows::{LabeledWindow, RawWindow, TARGET_RATE_HZ, WINDOW_LEN};
use crate::error::{Error, Result};
use crate::signal::{self, low_pass, resample_timestamps, FilterSpec, RawRecording};

/// Resample a recording to 25 Hz and cut it into raw 100-sample windows.
///
/// A window keeps its activity only if every sample agrees on it; windows
/// mixing activities (or touching unlabeled samples) are dropped. The
/// head-movement tag is the majority condition of the window.
pub fn segment(origin: &str, recording: &RawRecording) -> Result<Vec<RawWindow>> {
    let activity = recording
        .activity()
        .ok_or_else(|| Error::Data(format!("{origin}: recording has no activity annotations")))?;
    if recording.is_empty() {
        return Ok(Vec::new());
    }
    let ts = recording.timestamps();
    let rate = recording.rate_hz();
    let unit = recording.accel_unit();

    let mut accel_axes = Vec::with_capacity(3);
    let mut gyro_axes = Vec::with_capacity(3);
    for axis in 0..3 {
        let a = signal::normalize_gravity(&recording.accel_axis(axis), unit);
        accel_axes.push(resample_timestamps(ts, &a, rate, TARGET_RATE_HZ)?);
        gyro_axes.push(resample_timestamps(
            ts,
            &recording.gyro_axis(axis),
            rate,
            TARGET_RATE_HZ,
        )?);
    }
    let idx = signal::grid_indices(ts, rate, TARGET_RATE_HZ);
    let n = idx.len();
    let domain = if recording.location().is_head_worn() {
        DomainTag::Target
    } else {
        DomainTag::Source
    };
    let head_of = |i: usize| recording.head_movement().map_or(HeadMovement::None, |h| h[i]);

    let mut out = Vec::with_capacity(n / WINDOW_LEN);
    for (w, grid) in signal::window(&idx, WINDOW_LEN).into_iter().enumerate() {
        let Some(label) = unanimous(grid.iter().map(|&i| activity[i])) else {
            continue;
        };
        let start = w * WINDOW_LEN;
        let rows = start..start + WINDOW_LEN;
        let pick = |axes: &[Vec<f64>]| rows.clone().map(|t| [axes[0][t], axes[1][t], axes[2][t]]).collect();
        out.push(RawWindow {
            accel: pick(&accel_axes),
            gyro: pick(&gyro_axes),
            label,
            domain,
            head: majority(grid.iter().map(|&i| head_of(i))),
            origin: format!("{origin}#{w}"),
        });
    }
    Ok(out)
}

fn unanimous(mut labels: impl Iterator<Item = Option<ActivityLabel>>) -> Option<ActivityLabel> {
    let first = labels.next()??;
    labels.all(|l| l == Some(first)).then_some(first)
}

/// Most frequent condition; ties go to the lower code.
fn majority(tags: impl Iterator<Item = HeadMovement>) -> HeadMovement {
    let mut counts = [0usize; 6];
    for t in tags {
        counts[t.code() as usize] += 1;
    }
    let best = (0..6)
        .max_by(|a, b| counts[*a].cmp(&counts[*b]).then(b.cmp(a)))
        .unwrap_or(5);
    HeadMovement::ALL[best]
}

/// Reduce a raw window to its magnitude channels, low-passing each axis
/// first when `filter` is given.
pub fn condition(raw: &RawWindow, filter: Option<&FilterSpec>) -> Result<LabeledWindow> {
    let prepare = |samples: &[[f64; 3]]| -> Result<Vec<f64>> {
        match filter {
            None => Ok(signal::magnitude_rows(samples)),
            Some(spec) => {
                let axes: Vec<Vec<f64>> = (0..3)
                    .map(|a| low_pass(&samples.iter().map(|s| s[a]).collect::<Vec<_>>(), spec, TARGET_RATE_HZ))
                    .collect::<Result<_>>()?;
                signal::magnitude(&axes[0], &axes[1], &axes[2])
            }
        }
    };
    let acc = prepare(&raw.accel)?;
    let gyr = prepare(&raw.gyro)?;
    let data = acc.into_iter().zip(gyr).map(|(a, g)| [a, g]).collect();
    LabeledWindow::new(data, raw.label, raw.domain, raw.head, raw.origin.clone())
}

/// Which windows the head-motion filter is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterScope {
    /// Head-worn (target-domain) windows only.
    TargetOnly,
    All,
    Disabled,
}

/// End-to-end recording → labeled-window conversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Preprocessor {
    pub filter: FilterSpec,
    pub scope: FilterScope,
}

impl Default for Preprocessor {
    fn default() -> Self {
        Preprocessor {
            filter: FilterSpec::HEAD_MOTION,
            scope: FilterScope::TargetOnly,
        }
    }
}

impl Preprocessor {
    pub fn filter_for(&self, domain: DomainTag) -> Option<&FilterSpec> {
        match (self.scope, domain) {
            (FilterScope::All, _) | (FilterScope::TargetOnly, DomainTag::Target) => Some(&self.filter),
            _ => None,
        }
    }

    pub fn condition(&self, raw: &RawWindow) -> Result<LabeledWindow> {
        condition(raw, self.filter_for(raw.domain))
    }

    pub fn process(&self, origin: &str, recording: &RawRecording) -> Result<Vec<LabeledWindow>> {
        self.filter.validate(TARGET_RATE_HZ)?;
        segment(origin, recording)?.iter().map(|w| self.condition(w)).collect()
    }
}

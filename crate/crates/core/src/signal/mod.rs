//! Signal conditioning: raw 6-axis inertial streams to 2-channel magnitude
//! series, plus the filtering, resampling and spectral tools the pipeline
//! needs.
//!
//! Everything here is a pure function of its inputs.

mod filter;
mod recording;
mod resample;
mod spectrum;

pub use filter::{low_pass, ButterworthLowPass, FilterSpec};
pub use recording::{AccelUnit, RawRecording, SensorLocation};
pub use resample::{grid_indices, resample, resample_timestamps};
pub use spectrum::{spectrum, Spectrum};

use crate::error::{Error, Result};

/// Standard gravity in m/s².
pub const STANDARD_GRAVITY: f64 = 9.80665;

/// Euclidean norm of three equal-length axis series.
pub fn magnitude(x: &[f64], y: &[f64], z: &[f64]) -> Result<Vec<f64>> {
    if x.len() != y.len() || x.len() != z.len() {
        return Err(Error::LengthMismatch(format!(
            "axis lengths {}, {}, {}",
            x.len(),
            y.len(),
            z.len()
        )));
    }
    Ok(x.iter()
        .zip(y)
        .zip(z)
        .map(|((a, b), c)| (a * a + b * b + c * c).sqrt())
        .collect())
}

/// Norm of each sample of an interleaved 3-axis series.
pub fn magnitude_rows(samples: &[[f64; 3]]) -> Vec<f64> {
    samples.iter().map(|[a, b, c]| (a * a + b * b + c * c).sqrt()).collect()
}

/// Express an acceleration series in multiples of g. Series already in g
/// pass through untouched.
pub fn normalize_gravity(series: &[f64], unit: AccelUnit) -> Vec<f64> {
    match unit {
        AccelUnit::MetersPerSecondSquared => series.iter().map(|v| v / STANDARD_GRAVITY).collect(),
        AccelUnit::G => series.to_vec(),
    }
}

/// Consecutive non-overlapping windows of exactly `length` samples. The
/// trailing remainder is dropped.
pub fn window<T>(series: &[T], length: usize) -> Vec<&[T]> {
    if length == 0 {
        return Vec::new();
    }
    series.chunks_exact(length).collect()
}

use super::filter::{low_pass, FilterSpec};
use crate::error::{Error, Result};

/// Anti-alias cutoff as a fraction of the output rate.
const ANTI_ALIAS_FRACTION: f64 = 0.45;

fn check_rates(from_hz: f64, to_hz: f64) -> Result<()> {
    if !(from_hz > 0.0 && to_hz > 0.0 && from_hz.is_finite() && to_hz.is_finite()) {
        return Err(Error::Argument(format!(
            "sampling rates must be positive, got {from_hz} -> {to_hz}"
        )));
    }
    Ok(())
}

/// Number of output samples covering `duration_s` at `to_hz`.
fn output_len(duration_s: f64, to_hz: f64) -> usize {
    (duration_s * to_hz + 1e-9).floor().max(0.0) as usize
}

fn anti_alias(series: &[f64], from_hz: f64, to_hz: f64) -> Result<Vec<f64>> {
    let spec = FilterSpec {
        cutoff_hz: ANTI_ALIAS_FRACTION * to_hz,
        order: 4,
        zero_phase: true,
    };
    if to_hz < from_hz && series.len() > spec.padding() && spec.validate(from_hz).is_ok() {
        low_pass(series, &spec, from_hz)
    } else {
        Ok(series.to_vec())
    }
}

/// Interpolate `values` (at `times`, non-decreasing) onto `t0 + k/to_hz`.
fn interpolate(times: &[f64], values: &[f64], to_hz: f64, n_out: usize) -> Vec<f64> {
    let t0 = times[0];
    let last = times.len() - 1;
    let mut j = 0;
    (0..n_out)
        .map(|k| {
            let t = t0 + k as f64 / to_hz;
            while j < last && times[j + 1] <= t {
                j += 1;
            }
            if j == last {
                return values[last];
            }
            let span = times[j + 1] - times[j];
            if span <= 0.0 {
                return values[j];
            }
            let w = ((t - times[j]) / span).clamp(0.0, 1.0);
            values[j] + w * (values[j + 1] - values[j])
        })
        .collect()
}

/// Resample a uniformly sampled series from `from_hz` to `to_hz`.
///
/// Down-sampling low-passes at `0.45·to_hz` before linear interpolation.
/// The output holds `floor(len·to_hz/from_hz)` samples.
pub fn resample(series: &[f64], from_hz: f64, to_hz: f64) -> Result<Vec<f64>> {
    check_rates(from_hz, to_hz)?;
    if series.is_empty() {
        return Ok(Vec::new());
    }
    let times: Vec<f64> = (0..series.len()).map(|i| i as f64 / from_hz).collect();
    let n_out = output_len(series.len() as f64 / from_hz, to_hz);
    let smoothed = anti_alias(series, from_hz, to_hz)?;
    Ok(interpolate(&times, &smoothed, to_hz, n_out))
}

/// Resample a series with explicit (possibly irregular) timestamps onto a
/// uniform `to_hz` grid starting at the first timestamp. `nominal_hz`
/// drives the anti-alias design and the duration of the final sample.
pub fn resample_timestamps(timestamps: &[f64], series: &[f64], nominal_hz: f64, to_hz: f64) -> Result<Vec<f64>> {
    check_rates(nominal_hz, to_hz)?;
    if timestamps.len() != series.len() {
        return Err(Error::LengthMismatch(format!(
            "{} timestamps for {} samples",
            timestamps.len(),
            series.len()
        )));
    }
    if series.is_empty() {
        return Ok(Vec::new());
    }
    let n_out = grid_len(timestamps, nominal_hz, to_hz);
    let smoothed = anti_alias(series, nominal_hz, to_hz)?;
    Ok(interpolate(timestamps, &smoothed, to_hz, n_out))
}

fn grid_len(timestamps: &[f64], nominal_hz: f64, to_hz: f64) -> usize {
    let span = timestamps[timestamps.len() - 1] - timestamps[0];
    output_len(span + 1.0 / nominal_hz, to_hz)
}

/// For each point of the uniform `to_hz` grid used by
/// [`resample_timestamps`], the index of the nearest input sample. Used to
/// carry per-sample annotations across a resampling step.
pub fn grid_indices(timestamps: &[f64], nominal_hz: f64, to_hz: f64) -> Vec<usize> {
    if timestamps.is_empty() {
        return Vec::new();
    }
    let n_out = grid_len(timestamps, nominal_hz, to_hz);
    let t0 = timestamps[0];
    let last = timestamps.len() - 1;
    let mut j = 0;
    (0..n_out)
        .map(|k| {
            let t = t0 + k as f64 / to_hz;
            while j < last && timestamps[j + 1] <= t {
                j += 1;
            }
            if j < last && (timestamps[j + 1] - t) < (t - timestamps[j]) {
                j + 1
            } else {
                j
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn sine(f: f64, rate: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| (2.0 * PI * f * i as f64 / rate).sin()).collect()
    }

    #[test]
    fn halves_length_when_halving_rate() {
        let out = resample(&vec![0.0; 200], 50.0, 25.0).unwrap();
        assert_eq!(out.len(), 100);
        assert_eq!(resample(&vec![0.0; 7], 50.0, 25.0).unwrap().len(), 3);
        assert_eq!(resample(&vec![0.0; 10], 25.0, 50.0).unwrap().len(), 20);
    }

    #[test]
    fn constant_stays_constant() {
        for (from, to) in [(50.0, 25.0), (25.0, 50.0), (200.0, 25.0), (33.0, 25.0)] {
            let out = resample(&vec![5.0; 400], from, to).unwrap();
            assert!(out.iter().all(|v| (v - 5.0).abs() < 1e-9), "{from}->{to}");
        }
    }

    #[test]
    fn downsampled_sine_matches_closed_form() {
        let out = resample(&sine(2.0, 50.0, 500), 50.0, 25.0).unwrap();
        let truth = sine(2.0, 25.0, out.len());
        let err = out.iter().zip(&truth).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(err <= 0.05, "max error {err}");
    }

    #[test]
    fn empty_and_bad_rates() {
        assert!(resample(&[], 50.0, 25.0).unwrap().is_empty());
        assert!(resample(&[1.0], 0.0, 25.0).is_err());
        assert!(resample(&[1.0], 25.0, -1.0).is_err());
    }

    #[test]
    fn irregular_timestamps_land_on_uniform_grid() {
        // Jittered 100 Hz clock carrying a slow ramp.
        let ts: Vec<f64> = (0..400)
            .map(|i| i as f64 / 100.0 + if i % 3 == 0 { 0.002 } else { 0.0 })
            .collect();
        let x: Vec<f64> = ts.iter().map(|t| 0.5 * t).collect();
        let out = resample_timestamps(&ts, &x, 100.0, 25.0).unwrap();
        assert_eq!(out.len(), 100);
        for (k, v) in out.iter().enumerate().skip(2).take(95) {
            assert!((v - 0.5 * k as f64 / 25.0).abs() < 2e-3, "{k}: {v}");
        }
        let idx = grid_indices(&ts, 100.0, 25.0);
        assert_eq!(idx.len(), 100);
        assert_eq!(idx[1], 4);
    }
}

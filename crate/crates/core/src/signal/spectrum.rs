use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MIN_SPECTRUM_LEN: usize = 8;

/// Single-sided amplitude spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub freqs: Vec<f64>,
    pub magnitudes: Vec<f64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// Width of one frequency bin in Hz.
    pub fn resolution(&self) -> f64 {
        if self.freqs.len() < 2 {
            0.0
        } else {
            self.freqs[1] - self.freqs[0]
        }
    }

    /// Frequency of the strongest non-DC bin.
    pub fn peak_frequency(&self) -> Option<f64> {
        self.magnitudes
            .iter()
            .enumerate()
            .skip(1)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| self.freqs[i])
    }

    /// Frequencies of interior local maxima whose magnitude is at least
    /// `min_magnitude`, strongest first.
    pub fn local_maxima(&self, min_magnitude: f64) -> Vec<f64> {
        let m = &self.magnitudes;
        let mut peaks: Vec<usize> = (1..m.len().saturating_sub(1))
            .filter(|&i| m[i] >= min_magnitude && m[i] > m[i - 1] && m[i] >= m[i + 1])
            .collect();
        peaks.sort_by(|a, b| m[*b].total_cmp(&m[*a]));
        peaks.into_iter().map(|i| self.freqs[i]).collect()
    }
}

/// Discrete-Fourier amplitude spectrum of the mean-removed series, with
/// bins spanning `0..=rate_hz/2`.
pub fn spectrum(series: &[f64], rate_hz: f64) -> Result<Spectrum> {
    let n = series.len();
    if n < MIN_SPECTRUM_LEN {
        return Err(Error::TooShort(format!(
            "spectrum needs at least {MIN_SPECTRUM_LEN} samples, got {n}"
        )));
    }
    if !(rate_hz > 0.0) {
        return Err(Error::Argument(format!(
            "sampling rate must be positive, got {rate_hz}"
        )));
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = series.iter().map(|v| Complex::new(v - mean, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let bins = n / 2 + 1;
    let scale = 1.0 / n as f64;
    let magnitudes = (0..bins)
        .map(|k| {
            let a = buf[k].norm() * scale;
            if k == 0 || (n % 2 == 0 && k == n / 2) {
                a
            } else {
                2.0 * a
            }
        })
        .collect();
    let freqs = (0..bins).map(|k| k as f64 * rate_hz / n as f64).collect();
    Ok(Spectrum { freqs, magnitudes })
}

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Low-pass filter request.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterSpec {
    pub cutoff_hz: f64,
    pub order: usize,
    pub zero_phase: bool,
}

impl FilterSpec {
    /// The 5 Hz, order-4, zero-phase filter used to suppress head-movement
    /// interference in earable recordings.
    pub const HEAD_MOTION: FilterSpec = FilterSpec {
        cutoff_hz: 5.0,
        order: 4,
        zero_phase: true,
    };

    pub fn validate(&self, rate_hz: f64) -> Result<()> {
        if self.order == 0 {
            return Err(Error::FilterSpec("order must be at least 1".into()));
        }
        if !(rate_hz > 0.0) {
            return Err(Error::FilterSpec(format!(
                "sampling rate must be positive, got {rate_hz}"
            )));
        }
        if !(self.cutoff_hz > 0.0 && self.cutoff_hz < rate_hz / 2.0) {
            return Err(Error::FilterSpec(format!(
                "cutoff {} Hz outside (0, {}) for rate {} Hz",
                self.cutoff_hz,
                rate_hz / 2.0,
                rate_hz
            )));
        }
        Ok(())
    }

    /// Samples of reflective padding added on each end of a zero-phase pass.
    pub fn padding(&self) -> usize {
        3 * self.order
    }
}

impl Default for FilterSpec {
    fn default() -> Self {
        FilterSpec::HEAD_MOTION
    }
}

/// Second-order section, transposed direct form II. `a0` is normalized to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Biquad {
    b: [f64; 3],
    a: [f64; 2],
}

impl Biquad {
    /// State that makes a constant input `value` produce a constant output
    /// from the first sample (unity DC gain is assumed).
    fn steady_state(&self, value: f64) -> [f64; 2] {
        let z2 = (self.b[2] - self.a[1]) * value;
        let z1 = (self.b[1] - self.a[0]) * value + z2;
        [z1, z2]
    }

    fn run(&self, series: &mut [f64], mut state: [f64; 2]) {
        let [b0, b1, b2] = self.b;
        let [a1, a2] = self.a;
        for x in series.iter_mut() {
            let input = *x;
            let y = b0 * input + state[0];
            state[0] = b1 * input - a1 * y + state[1];
            state[1] = b2 * input - a2 * y;
            *x = y;
        }
    }
}

/// Digital Butterworth low-pass obtained from the analog prototype through
/// the bilinear transform with cutoff pre-warping, as a cascade of
/// second-order sections (plus one first-order section for odd orders).
#[derive(Debug, Clone, PartialEq)]
pub struct ButterworthLowPass {
    sections: Vec<Biquad>,
}

impl ButterworthLowPass {
    pub fn design(spec: &FilterSpec, rate_hz: f64) -> Result<Self> {
        spec.validate(rate_hz)?;
        let n = spec.order;
        let k = (PI * spec.cutoff_hz / rate_hz).tan();
        let k2 = k * k;
        let mut sections = Vec::with_capacity(n.div_ceil(2));
        for pair in 1..=n / 2 {
            // -2·Re(p) for the conjugate pole pair on the unit circle
            let q = 2.0 * (PI * (2 * pair - 1) as f64 / (2 * n) as f64).sin();
            let a0 = 1.0 + q * k + k2;
            sections.push(Biquad {
                b: [k2 / a0, 2.0 * k2 / a0, k2 / a0],
                a: [2.0 * (k2 - 1.0) / a0, (1.0 - q * k + k2) / a0],
            });
        }
        if n % 2 == 1 {
            let a0 = 1.0 + k;
            sections.push(Biquad {
                b: [k / a0, k / a0, 0.0],
                a: [(k - 1.0) / a0, 0.0],
            });
        }
        Ok(ButterworthLowPass { sections })
    }

    /// Causal pass, state initialized to the steady state of the first
    /// sample.
    pub fn apply_causal(&self, series: &mut [f64]) {
        let Some(&first) = series.first() else {
            return;
        };
        for s in &self.sections {
            let state = s.steady_state(first);
            s.run(series, state);
        }
    }

    /// Forward-backward pass with odd reflective padding of `pad` samples on
    /// each end.
    pub fn apply_zero_phase(&self, series: &[f64], pad: usize) -> Result<Vec<f64>> {
        let n = series.len();
        if n <= pad {
            return Err(Error::TooShort(format!(
                "zero-phase filtering needs more than {pad} samples, got {n}"
            )));
        }
        let mut ext = Vec::with_capacity(n + 2 * pad);
        let (first, last) = (series[0], series[n - 1]);
        ext.extend((1..=pad).rev().map(|i| 2.0 * first - series[i]));
        ext.extend_from_slice(series);
        ext.extend((1..=pad).map(|i| 2.0 * last - series[n - 1 - i]));

        self.apply_causal(&mut ext);
        ext.reverse();
        self.apply_causal(&mut ext);
        ext.reverse();
        Ok(ext[pad..pad + n].to_vec())
    }
}

/// Low-pass filter a series sampled at `rate_hz`.
///
/// Zero-phase specs run forward then backward (squared magnitude response,
/// no lag) and require more than `3·order` samples.
pub fn low_pass(series: &[f64], spec: &FilterSpec, rate_hz: f64) -> Result<Vec<f64>> {
    let filter = ButterworthLowPass::design(spec, rate_hz)?;
    if spec.zero_phase {
        filter.apply_zero_phase(series, spec.padding())
    } else {
        let mut out = series.to_vec();
        filter.apply_causal(&mut out);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RATE: f64 = 25.0;

    /// Closed-form squared magnitude of a bilinear-transformed Butterworth
    /// low-pass, i.e. the gain of a forward-backward pass.
    fn analytic_zero_phase_gain(f: f64, spec: &FilterSpec, rate: f64) -> f64 {
        let ratio = (PI * f / rate).tan() / (PI * spec.cutoff_hz / rate).tan();
        1.0 / (1.0 + ratio.powi(2 * spec.order as i32))
    }

    fn sine(f: f64, n: usize, phase: f64) -> Vec<f64> {
        (0..n).map(|i| (2.0 * PI * f * i as f64 / RATE + phase).sin()).collect()
    }

    /// Amplitude of the `f` Hz component over `[from, to)`, by projection
    /// onto sine and cosine. The span is a whole number of periods for all
    /// probe frequencies used below.
    fn amplitude_at(series: &[f64], f: f64, from: usize, to: usize) -> f64 {
        let (mut s, mut c) = (0.0, 0.0);
        for (i, v) in series.iter().enumerate().take(to).skip(from) {
            let w = 2.0 * PI * f * i as f64 / RATE;
            s += v * w.sin();
            c += v * w.cos();
        }
        let n = (to - from) as f64;
        2.0 * (s * s + c * c).sqrt() / n
    }

    #[test]
    fn oracle_values() {
        // Frozen from the closed form before the filter was written.
        let spec = FilterSpec::HEAD_MOTION;
        assert!((analytic_zero_phase_gain(2.0, &spec, RATE) - 0.999_755).abs() < 1e-5);
        assert!(analytic_zero_phase_gain(10.0, &spec, RATE) < 1e-4);
        assert!((analytic_zero_phase_gain(5.0, &spec, RATE) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn constant_passes_unchanged() {
        let out = low_pass(&[7.0; 64], &FilterSpec::HEAD_MOTION, RATE).unwrap();
        assert!(out.iter().all(|v| (v - 7.0).abs() < 1e-6));
        let causal = FilterSpec {
            zero_phase: false,
            ..FilterSpec::HEAD_MOTION
        };
        let out = low_pass(&[7.0; 64], &causal, 100.0).unwrap();
        assert!(out.iter().all(|v| (v - 7.0).abs() < 1e-6));
    }

    #[test]
    fn passband_and_stopband_sines() {
        let spec = FilterSpec::HEAD_MOTION;
        let n = 1000;
        let pass = low_pass(&sine(2.0, n, 0.3), &spec, RATE).unwrap();
        let a = amplitude_at(&pass, 2.0, 250, 750);
        assert!((0.95..=1.01).contains(&a), "2 Hz amplitude {a}");
        let stop = low_pass(&sine(10.0, n, 0.3), &spec, RATE).unwrap();
        let peak = stop[100..900].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(peak <= 0.05, "10 Hz amplitude {peak}");
    }

    #[test]
    fn gain_tracks_analytic_response() {
        let spec = FilterSpec::HEAD_MOTION;
        for f in [1.0, 2.0, 4.0, 6.0, 8.0, 10.0] {
            let out = low_pass(&sine(f, 2000, 0.7), &spec, RATE).unwrap();
            let measured = amplitude_at(&out, f, 500, 1500);
            let expected = analytic_zero_phase_gain(f, &spec, RATE);
            let rel = (measured - expected).abs() / expected;
            assert!(rel < 0.05, "{f} Hz: measured {measured:e}, expected {expected:e}");
        }
    }

    #[test]
    fn odd_orders_are_supported() {
        let spec = FilterSpec {
            cutoff_hz: 3.0,
            order: 3,
            zero_phase: true,
        };
        let out = low_pass(&sine(1.0, 1000, 0.0), &spec, RATE).unwrap();
        let expected = analytic_zero_phase_gain(1.0, &spec, RATE);
        assert!((amplitude_at(&out, 1.0, 250, 750) - expected).abs() < 1e-3);
    }

    #[test]
    fn zero_phase_has_no_lag() {
        let input = sine(1.5, 600, 0.0);
        let out = low_pass(&input, &FilterSpec::HEAD_MOTION, RATE).unwrap();
        let xcorr = |lag: isize| -> f64 { (100..500).map(|i| input[i] * out[(i as isize + lag) as usize]).sum() };
        let best = (-8..=8).max_by(|a, b| xcorr(*a).total_cmp(&xcorr(*b))).unwrap();
        assert_eq!(best, 0);
    }

    #[test]
    fn invalid_specs() {
        let bad_cutoff = FilterSpec {
            cutoff_hz: 12.5,
            ..FilterSpec::HEAD_MOTION
        };
        assert!(matches!(
            low_pass(&[0.0; 50], &bad_cutoff, RATE),
            Err(Error::FilterSpec(_))
        ));
        let bad_order = FilterSpec {
            order: 0,
            ..FilterSpec::HEAD_MOTION
        };
        assert!(matches!(
            low_pass(&[0.0; 50], &bad_order, RATE),
            Err(Error::FilterSpec(_))
        ));
        assert!(matches!(
            low_pass(&[0.0; 12], &FilterSpec::HEAD_MOTION, RATE),
            Err(Error::TooShort(_))
        ));
        assert!(low_pass(&[0.0; 13], &FilterSpec::HEAD_MOTION, RATE).is_ok());
    }
}

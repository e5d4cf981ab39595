//! Synthetic source/target recordings with a controlled domain shift.
//!
//! Each recording is a gait-like 6-axis stream: a fundamental at the
//! activity's cadence plus two decaying harmonics, seeded Gaussian noise and
//! a random (fixed) device orientation. The source domain is a 50 Hz
//! smartphone in a trouser pocket whose dynamic amplitude is
//! `source_amplitude_multiplier` times the earable's. Target (earable)
//! recordings are 25 Hz, head-worn, and carry band-limited head-movement
//! interference whose strength depends on the condition. Standing is a
//! near-constant signal in both domains.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::labels::{ActivityLabel, DomainTag, HeadMovement};
use super::pipeline::{condition, segment};
use super::windows::{LabeledWindow, RawWindow, TARGET_RATE_HZ, WINDOW_LEN};
use super::SourcedRecording;
use crate::error::{Error, Result};
use crate::signal::{AccelUnit, RawRecording, SensorLocation, STANDARD_GRAVITY};

/// Earable-scale motion of one activity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActivityProfile {
    /// Step frequency in Hz; 0 for static activities.
    pub cadence_hz: f64,
    /// Amplitude of the vertical fundamental, in g.
    pub accel_amplitude_g: f64,
    /// Amplitude of the dominant rotation axis, in rad/s.
    pub gyro_amplitude: f64,
}

/// Per-condition interference amplitude on the angular rate (rad/s).
/// Acceleration interference is `accel_interference_ratio` times this, in g.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeadInterference {
    pub slight: f64,
    pub random: f64,
    pub roll: f64,
    pub yaw: f64,
    pub pitch: f64,
}

impl HeadInterference {
    pub fn level(&self, head: HeadMovement) -> f64 {
        match head {
            HeadMovement::Slight => self.slight,
            HeadMovement::Random => self.random,
            HeadMovement::Roll => self.roll,
            HeadMovement::Yaw => self.yaw,
            HeadMovement::Pitch => self.pitch,
            HeadMovement::None => 0.0,
        }
    }

    pub fn none() -> Self {
        HeadInterference {
            slight: 0.0,
            random: 0.0,
            roll: 0.0,
            yaw: 0.0,
            pitch: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    /// Windows per activity, per domain.
    pub windows_per_class: usize,
    /// Source sessions per activity (target uses one session per
    /// head-movement condition).
    pub source_sessions: usize,
    pub source_rate_hz: f64,
    pub target_rate_hz: f64,
    pub source_amplitude_multiplier: f64,
    /// Interference band in Hz, `[low, high]`.
    pub interference_band_hz: [f64; 2],
    pub interference: HeadInterference,
    pub accel_interference_ratio: f64,
    pub accel_noise_g: f64,
    pub gyro_noise: f64,
    /// Relative session-to-session jitter of cadence and amplitude.
    pub session_jitter: f64,
    pub walking: ActivityProfile,
    pub upstairs: ActivityProfile,
    pub standing: ActivityProfile,
    pub jogging: ActivityProfile,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            windows_per_class: 50,
            source_sessions: 5,
            source_rate_hz: 50.0,
            target_rate_hz: 25.0,
            source_amplitude_multiplier: 2.0,
            interference_band_hz: [6.0, 10.0],
            interference: HeadInterference {
                slight: 0.15,
                random: 0.6,
                roll: 0.5,
                yaw: 0.5,
                pitch: 0.5,
            },
            accel_interference_ratio: 0.1,
            accel_noise_g: 0.02,
            gyro_noise: 0.02,
            session_jitter: 0.08,
            walking: ActivityProfile {
                cadence_hz: 1.8,
                accel_amplitude_g: 0.15,
                gyro_amplitude: 0.3,
            },
            upstairs: ActivityProfile {
                cadence_hz: 1.4,
                accel_amplitude_g: 0.12,
                gyro_amplitude: 0.25,
            },
            standing: ActivityProfile {
                cadence_hz: 0.0,
                accel_amplitude_g: 0.0,
                gyro_amplitude: 0.0,
            },
            jogging: ActivityProfile {
                cadence_hz: 2.8,
                accel_amplitude_g: 0.6,
                gyro_amplitude: 1.0,
            },
        }
    }
}

impl GeneratorConfig {
    /// Same generator for both domains: no amplitude shift, no interference.
    pub fn without_shift(&self) -> Self {
        GeneratorConfig {
            source_amplitude_multiplier: 1.0,
            interference: HeadInterference::none(),
            ..self.clone()
        }
    }

    pub fn profile(&self, label: ActivityLabel) -> &ActivityProfile {
        match label {
            ActivityLabel::Walking => &self.walking,
            ActivityLabel::Upstairs => &self.upstairs,
            ActivityLabel::Standing => &self.standing,
            ActivityLabel::Jogging => &self.jogging,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let nyquist = TARGET_RATE_HZ / 2.0;
        let [lo, hi] = self.interference_band_hz;
        if !(lo > 0.0 && lo < hi && hi < nyquist) {
            return Err(Error::Config(format!(
                "interference band [{lo}, {hi}] Hz must satisfy 0 < low < high < {nyquist}"
            )));
        }
        if self.windows_per_class == 0 || self.source_sessions == 0 {
            return Err(Error::Config(
                "windows_per_class and source_sessions must be positive".into(),
            ));
        }
        if !(self.source_rate_hz >= TARGET_RATE_HZ && self.target_rate_hz >= TARGET_RATE_HZ) {
            return Err(Error::Config(format!(
                "generator rates must be at least {TARGET_RATE_HZ} Hz"
            )));
        }
        let non_negative = [
            self.source_amplitude_multiplier,
            self.accel_interference_ratio,
            self.accel_noise_g,
            self.gyro_noise,
            self.session_jitter,
            self.interference.slight,
            self.interference.random,
            self.interference.roll,
            self.interference.yaw,
            self.interference.pitch,
        ];
        if non_negative.iter().any(|v| !(*v >= 0.0 && v.is_finite())) || self.session_jitter >= 1.0 {
            return Err(Error::Config(
                "amplitudes, noise levels and jitter must be finite and non-negative".into(),
            ));
        }
        for label in ActivityLabel::ALL {
            let p = self.profile(label);
            if !(p.cadence_hz >= 0.0
                && p.cadence_hz * 3.0 < nyquist
                && p.accel_amplitude_g >= 0.0
                && p.gyro_amplitude >= 0.0)
            {
                return Err(Error::Config(format!("invalid {label} profile")));
            }
        }
        Ok(())
    }
}

/// Session plan: which recordings to generate and how many windows each.
fn sessions(config: &GeneratorConfig, domain: DomainTag) -> Vec<(HeadMovement, usize)> {
    let (tags, n): (Vec<HeadMovement>, usize) = match domain {
        DomainTag::Source => (vec![HeadMovement::None; config.source_sessions], config.source_sessions),
        DomainTag::Target => (HeadMovement::HEAD_WORN.to_vec(), HeadMovement::HEAD_WORN.len()),
    };
    let per = config.windows_per_class / n;
    let extra = config.windows_per_class % n;
    tags.into_iter()
        .enumerate()
        .map(|(i, h)| (h, per + usize::from(i < extra)))
        .filter(|(_, w)| *w > 0)
        .collect()
}

fn random_rotation(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    // uniform unit quaternion
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let q: [f64; 4] = [0; 4].map(|_| normal.sample(rng));
    let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|v| v / n);
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

fn rotate(r: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|i| r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2])
}

/// Which head axes a condition excites (x = roll, y = pitch, z = yaw).
fn interference_axes(head: HeadMovement) -> [f64; 3] {
    match head {
        HeadMovement::Roll => [1.0, 0.2, 0.2],
        HeadMovement::Pitch => [0.2, 1.0, 0.2],
        HeadMovement::Yaw => [0.2, 0.2, 1.0],
        HeadMovement::Slight | HeadMovement::Random => [1.0, 1.0, 1.0],
        HeadMovement::None => [0.0; 3],
    }
}

struct Tone {
    freq: f64,
    amp: f64,
    phase: f64,
}

impl Tone {
    fn at(&self, t: f64) -> f64 {
        self.amp * (2.0 * PI * self.freq * t + self.phase).sin()
    }
}

fn session_seed(seed: u64, domain: DomainTag, label: ActivityLabel, session: usize) -> u64 {
    let key = ((domain as u64) << 16) | ((label as u64) << 8) | session as u64;
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ key.wrapping_mul(0xBF58_476D_1CE4_E5B9)
}

fn generate_session(
    config: &GeneratorConfig,
    seed: u64,
    domain: DomainTag,
    label: ActivityLabel,
    session: usize,
    head: HeadMovement,
    windows: usize,
) -> RawRecording {
    let mut rng = ChaCha8Rng::seed_from_u64(session_seed(seed, domain, label, session));
    let (rate, multiplier) = match domain {
        DomainTag::Source => (config.source_rate_hz, config.source_amplitude_multiplier),
        DomainTag::Target => (config.target_rate_hz, 1.0),
    };
    let n = (windows * WINDOW_LEN) * (rate / TARGET_RATE_HZ).round() as usize;
    let profile = config.profile(label);
    let jitter = config.session_jitter;
    let vary = |rng: &mut ChaCha8Rng| 1.0 + jitter * rng.gen_range(-1.0..=1.0);
    let cadence = profile.cadence_hz * vary(&mut rng);
    let acc_amp = profile.accel_amplitude_g * multiplier * vary(&mut rng);
    let gyr_amp = profile.gyro_amplitude * multiplier * vary(&mut rng);
    let mut phase = || rng.gen_range(0.0..2.0 * PI);
    let tone = |f: f64, a: f64, p: f64| Tone {
        freq: f,
        amp: a,
        phase: p,
    };

    // body-frame components: x forward, y lateral, z vertical
    let accel_tones = [
        vec![tone(cadence, 0.2 * acc_amp, phase())],
        vec![tone(cadence / 2.0, 0.3 * acc_amp, phase())],
        vec![
            tone(cadence, acc_amp, phase()),
            tone(2.0 * cadence, 0.3 * acc_amp, phase()),
            tone(3.0 * cadence, 0.1 * acc_amp, phase()),
        ],
    ];
    let gyro_tones = [
        vec![
            tone(cadence, gyr_amp, phase()),
            tone(2.0 * cadence, 0.3 * gyr_amp, phase()),
        ],
        vec![tone(cadence / 2.0, 0.6 * gyr_amp, phase())],
        vec![tone(cadence, 0.4 * gyr_amp, phase())],
    ];

    let level = config.interference.level(head);
    let weights = interference_axes(head);
    let [lo, hi] = config.interference_band_hz;
    let band_tones = |scale: f64, rng: &mut ChaCha8Rng| -> [Vec<Tone>; 3] {
        [0, 1, 2].map(|axis| {
            (0..3)
                .map(|_| Tone {
                    freq: rng.gen_range(lo..=hi),
                    amp: scale * weights[axis] * rng.gen_range(0.5..=1.0) / 1.5,
                    phase: rng.gen_range(0.0..2.0 * PI),
                })
                .collect()
        })
    };
    let gyro_interf = band_tones(level, &mut rng);
    let accel_interf = band_tones(level * config.accel_interference_ratio, &mut rng);
    let orientation = random_rotation(&mut rng);
    let acc_noise = Normal::new(0.0, config.accel_noise_g).expect("finite sigma");
    let gyr_noise = Normal::new(0.0, config.gyro_noise).expect("finite sigma");
    let unit_scale = match domain {
        DomainTag::Source => STANDARD_GRAVITY,
        DomainTag::Target => 1.0,
    };

    let sum = |tones: &[Tone], t: f64| tones.iter().map(|tn| tn.at(t)).sum::<f64>();
    let mut ts = Vec::with_capacity(n);
    let mut accel = Vec::with_capacity(n);
    let mut gyro = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 / rate;
        let body_acc = [0, 1, 2].map(|a| {
            let gravity = if a == 2 { 1.0 } else { 0.0 };
            gravity + sum(&accel_tones[a], t) + sum(&accel_interf[a], t) + acc_noise.sample(&mut rng)
        });
        let body_gyr = [0, 1, 2].map(|a| sum(&gyro_tones[a], t) + sum(&gyro_interf[a], t) + gyr_noise.sample(&mut rng));
        ts.push(t);
        accel.push(rotate(&orientation, body_acc).map(|v| v * unit_scale));
        gyro.push(rotate(&orientation, body_gyr));
    }
    let (unit, location) = match domain {
        DomainTag::Source => (AccelUnit::MetersPerSecondSquared, SensorLocation::Pocket),
        DomainTag::Target => (AccelUnit::G, SensorLocation::Head),
    };
    RawRecording::new(ts, accel, unit, gyro, rate, location)
        .and_then(|r| r.with_activity(vec![Some(label); n]))
        .and_then(|r| r.with_head_movement(vec![head; n]))
        .expect("generator output satisfies recording invariants")
}

/// All synthetic recordings, `(source, target)`, deterministic in `seed`.
pub fn synth_recordings(config: &GeneratorConfig, seed: u64) -> Result<(Vec<SourcedRecording>, Vec<SourcedRecording>)> {
    config.validate()?;
    let build = |domain: DomainTag| {
        let mut out = Vec::new();
        for label in ActivityLabel::ALL {
            for (session, (head, windows)) in sessions(config, domain).into_iter().enumerate() {
                out.push(SourcedRecording {
                    origin: format!("synth/{domain}/{label}/{session}-{head}"),
                    recording: generate_session(config, seed, domain, label, session, head, windows),
                });
            }
        }
        out
    };
    Ok((build(DomainTag::Source), build(DomainTag::Target)))
}

/// Synthetic data as raw (pre-magnitude) 25 Hz windows.
pub fn synth_generate_raw(config: &GeneratorConfig, seed: u64) -> Result<(Vec<RawWindow>, Vec<RawWindow>)> {
    let (source, target) = synth_recordings(config, seed)?;
    let cut = |recs: Vec<SourcedRecording>| -> Result<Vec<RawWindow>> {
        let mut out = Vec::new();
        for r in recs {
            out.extend(segment(&r.origin, &r.recording)?);
        }
        Ok(out)
    };
    Ok((cut(source)?, cut(target)?))
}

/// Synthetic data as unfiltered magnitude windows, `(source, target)`.
pub fn synth_generate(config: &GeneratorConfig, seed: u64) -> Result<(Vec<LabeledWindow>, Vec<LabeledWindow>)> {
    let (source, target) = synth_generate_raw(config, seed)?;
    let cond = |ws: Vec<RawWindow>| ws.iter().map(|w| condition(w, None)).collect::<Result<Vec<_>>>();
    Ok((cond(source)?, cond(target)?))
}

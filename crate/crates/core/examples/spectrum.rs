//! Where the energy of a synthetic head-worn jogging window sits before and
//! after filtering.
//!
//! cargo run --release --example spectrum [seed]

use earda::datasets::{condition, synth_generate_raw, ActivityLabel, GeneratorConfig, HeadMovement};
use earda::signal::{spectrum, FilterSpec};

fn band_energy(series: &[f64], lo: f64, hi: f64) -> earda::Result<f64> {
    let s = spectrum(series, 25.0)?;
    Ok(s.freqs
        .iter()
        .zip(&s.magnitudes)
        .filter(|(f, _)| **f >= lo && **f <= hi)
        .map(|(_, m)| m * m)
        .sum())
}

fn main() -> earda::Result<()> {
    let seed = std::env::args().nth(1).map_or(0, |s| s.parse().expect("seed"));
    let (_, target) = synth_generate_raw(&GeneratorConfig::default(), seed)?;
    let raw = target
        .iter()
        .find(|w| w.label == ActivityLabel::Jogging && w.head == HeadMovement::Random)
        .expect("pack has random-head jogging windows");

    for (name, filter) in [("raw", None), ("filtered", Some(FilterSpec::HEAD_MOTION))] {
        let w = condition(raw, filter.as_ref())?;
        let gyro: Vec<f64> = w.data().iter().map(|s| s[1]).collect();
        let (pass, stop) = (band_energy(&gyro, 0.2, 5.0)?, band_energy(&gyro, 6.0, 10.0)?);
        println!(
            "{name:>8}: gyro energy 0.2-5 Hz {pass:.4}, 6-10 Hz {stop:.4}, ratio {:.3}",
            stop / pass
        );
    }
    Ok(())
}

//! Gain of the head-motion low-pass filter at a few tone frequencies.

use earda::signal::{low_pass, FilterSpec};

fn main() -> earda::Result<()> {
    let rate = 25.0;
    let spec = FilterSpec::HEAD_MOTION;
    println!("{:>6}  {:>10}", "hz", "gain");
    for freq in [0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0] {
        let tone: Vec<f64> = (0..1000)
            .map(|i| (2.0 * std::f64::consts::PI * freq * i as f64 / rate).sin())
            .collect();
        let out = low_pass(&tone, &spec, rate)?;
        // rms over the middle, away from edge transients
        let rms = |x: &[f64]| (x[250..750].iter().map(|v| v * v).sum::<f64>() / 500.0).sqrt();
        println!("{freq:>6.1}  {:>10.6}", rms(&out) / rms(&tone));
    }
    Ok(())
}

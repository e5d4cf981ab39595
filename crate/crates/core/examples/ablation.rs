//! Both ablations on one seed: adaptation vs source-only, then filtered vs
//! unfiltered targets. Takes a few minutes on one core.
//!
//! cargo run --release --example ablation [seed]

use earda::dann::TrainConfig;
use earda::datasets::GeneratorConfig;
use earda::eval::{ablate_da, ablate_filter, SyntheticPack};
use earda::signal::FilterSpec;

fn main() -> earda::Result<()> {
    let seed = std::env::args().nth(1).map_or(0, |s| s.parse().expect("seed"));
    let config = TrainConfig {
        seed,
        ..TrainConfig::default()
    };
    let pack = SyntheticPack::generate(&GeneratorConfig::default(), seed)?;
    let filter = FilterSpec::HEAD_MOTION;

    let da = ablate_da(&pack.source, &pack.target(Some(&filter))?, &config)?;
    println!(
        "adapted {:.3} vs source-only {:.3}: {:+.1} points",
        da.dann.accuracy, da.source_only.accuracy, da.gap_points
    );

    let f = ablate_filter(&pack.source, &pack.target_raw, &filter, &config)?;
    println!(
        "filtered {:.3} vs unfiltered {:.3}: {:+.1} points",
        f.filtered.accuracy, f.unfiltered.accuracy, f.gap_points
    );
    for c in &f.per_condition {
        println!(
            "  {:<7} {:.3} vs {:.3} ({:+.1})",
            c.condition.as_str(),
            c.filtered_accuracy,
            c.unfiltered_accuracy,
            c.delta_points
        );
    }
    Ok(())
}

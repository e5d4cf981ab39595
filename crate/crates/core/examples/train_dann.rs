//! Train the adversarial model on the synthetic pack and print the learning
//! curve and the per-condition result table.
//!
//! cargo run --release --example train_dann [seed] [epochs]

use earda::dann::{train_dann, TrainConfig};
use earda::datasets::GeneratorConfig;
use earda::eval::{evaluate, render_table, SyntheticPack};
use earda::signal::FilterSpec;

fn main() -> earda::Result<()> {
    env_logger::init();
    let mut args = std::env::args().skip(1);
    let seed = args.next().map_or(0, |s| s.parse().expect("seed"));
    let epochs = args.next().map_or(200, |s| s.parse().expect("epochs"));
    let config = TrainConfig {
        seed,
        epochs,
        ..TrainConfig::default()
    };

    let pack = SyntheticPack::generate(&GeneratorConfig::default(), seed)?;
    let target = pack.target(Some(&FilterSpec::HEAD_MOTION))?;
    let (model, report) = train_dann(&pack.source, &target, &config)?;

    for e in report.epochs.iter().step_by((epochs / 10).max(1)) {
        println!(
            "epoch {:>4}  label {:.3}  domain {:.3}  target val {:.3}",
            e.epoch,
            e.label_loss,
            e.domain_loss.unwrap_or(f64::NAN),
            e.target_val_accuracy.unwrap_or(f64::NAN)
        );
    }
    println!(
        "kept epoch {} ({:.0} s)\n",
        report.selected_epoch, report.wall_clock_seconds
    );
    print!("{}", render_table(&evaluate(&model, &target.test)?));
    Ok(())
}

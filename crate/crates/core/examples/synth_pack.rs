//! Generate the seeded synthetic source/target pack and show its makeup.

use std::collections::BTreeMap;

use earda::datasets::{GeneratorConfig, LabeledWindow};
use earda::eval::SyntheticPack;
use earda::signal::FilterSpec;

fn describe(name: &str, windows: &[LabeledWindow]) {
    let mut counts: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for w in windows {
        *counts.entry((w.label.as_str(), w.head.as_str())).or_default() += 1;
    }
    println!("{name}: {} windows", windows.len());
    for ((label, head), n) in counts {
        println!("  {label:<10} {head:<7} {n}");
    }
}

fn main() -> earda::Result<()> {
    let seed = std::env::args().nth(1).map_or(0, |s| s.parse().expect("seed"));
    let pack = SyntheticPack::generate(&GeneratorConfig::default(), seed)?;
    let target = pack.target(Some(&FilterSpec::HEAD_MOTION))?;
    println!(
        "source splits {:?}, target splits {:?}",
        pack.source.sizes(),
        target.sizes()
    );
    describe("source train", &pack.source.train);
    describe("target test", &target.test);
    Ok(())
}

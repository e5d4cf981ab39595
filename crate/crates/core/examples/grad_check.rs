//! Finite-difference check of every parameter gradient on a small model.

use earda::nn::{grad_check, Coverage, ModelDims, Params, Sample};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> earda::Result<()> {
    let dims = ModelDims {
        hidden: 4,
        seq_len: 10,
        ..ModelDims::default()
    };
    let params = Params::init(&dims, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let windows: Vec<Vec<[f64; 2]>> = (0..4)
        .map(|_| {
            (0..10)
                .map(|_| [rng.gen_range(0.0..2.0), rng.gen_range(0.0..1.0)])
                .collect()
        })
        .collect();
    let batch: Vec<Sample> = windows
        .iter()
        .enumerate()
        .map(|(i, w)| Sample {
            window: w,
            label: i,
            domain: i % 2,
            use_label_loss: true,
        })
        .collect();
    for lambda in [0.0, 0.3] {
        let g = grad_check(&params, &batch, lambda, 1e-5, Coverage::All)?;
        println!(
            "lambda {lambda}: {} coordinates, max relative error {:.2e} at {} [{}]",
            g.coordinates, g.max_rel_error, g.worst.0, g.worst.1
        );
    }
    Ok(())
}

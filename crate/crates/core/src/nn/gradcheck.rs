//! Central finite-difference verification of the analytic gradients.
//!
//! Extractor and label-head coordinates are compared against differences of
//! the adversarial objective. Domain-head coordinates are compared against
//! differences of the domain loss, which is the quantity that head descends.

use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::backprop::{backprop_batch, batch_losses, Sample};
use super::params::{Group, Params};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GradCheck {
    pub max_rel_error: f64,
    pub coordinates: usize,
    /// Name and flat index of the worst coordinate.
    pub worst: (String, usize),
}

/// Which coordinates to perturb.
#[derive(Debug, Clone, Copy)]
pub enum Coverage {
    All,
    /// Seeded random subset of the given size.
    Subset {
        count: usize,
        seed: u64,
    },
}

pub fn grad_check(params: &Params, batch: &[Sample], lambda: f64, eps: f64, coverage: Coverage) -> Result<GradCheck> {
    let (_, analytic) = backprop_batch(batch, params, lambda)?;
    grad_check_against(params, &analytic, batch, lambda, eps, coverage)
}

/// As [`grad_check`] with a caller-supplied analytic gradient.
pub fn grad_check_against(
    params: &Params,
    analytic: &Params,
    batch: &[Sample],
    lambda: f64,
    eps: f64,
    coverage: Coverage,
) -> Result<GradCheck> {
    if !(eps > 0.0 && eps <= 1e-3) {
        return Err(Error::Argument(format!(
            "finite-difference step {eps} outside (0, 1e-3]"
        )));
    }
    let names: Vec<(String, usize)> = params.named().iter().map(|(n, t)| (n.clone(), t.len())).collect();
    let grads: Vec<f64> = analytic.named().iter().flat_map(|(_, t)| t.data().to_vec()).collect();
    let total: usize = names.iter().map(|(_, n)| n).sum();
    if grads.len() != total {
        return Err(Error::Shape("analytic gradient does not match parameters".into()));
    }
    let mut picks: Vec<usize> = match coverage {
        Coverage::All => (0..total).collect(),
        Coverage::Subset { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sample(&mut rng, total, count.min(total)).into_vec()
        }
    };
    picks.sort_unstable();

    let objective = |p: &Params, group: Group| -> Result<f64> {
        let l = batch_losses(batch, p, lambda)?;
        Ok(match group {
            Group::Domain => l.domain_loss.unwrap_or(0.0),
            _ => l.total,
        })
    };

    let mut report = GradCheck {
        max_rel_error: 0.0,
        coordinates: picks.len(),
        worst: (String::new(), 0),
    };
    let mut offsets = Vec::with_capacity(names.len());
    let mut acc = 0;
    for (_, n) in &names {
        offsets.push(acc);
        acc += n;
    }
    for flat in picks {
        let ti = offsets.partition_point(|o| *o <= flat) - 1;
        let k = flat - offsets[ti];
        let group = Params::group_of(&names[ti].0);
        let nudge = |delta: f64| -> Result<f64> {
            let mut q = params.clone();
            q.tensors_mut()[ti].1.data_mut()[k] += delta;
            objective(&q, group)
        };
        let numeric = (nudge(eps)? - nudge(-eps)?) / (2.0 * eps);
        let a = grads[flat];
        let err = (a - numeric).abs() / 1f64.max(a.abs()).max(numeric.abs());
        if report.worst.0.is_empty() || err > report.max_rel_error {
            report.max_rel_error = err;
            report.worst = (names[ti].0.clone(), k);
        }
    }
    Ok(report)
}

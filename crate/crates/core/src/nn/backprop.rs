use rayon::prelude::*;

use super::head::{head_backward, head_forward};
use super::loss::{grl_backward, softmax_ce};
use super::params::Params;
use super::recurrent::{feature_backward, feature_forward};
use crate::error::{Error, Result};

/// One training example as seen by the network.
#[derive(Debug, Clone, Copy)]
pub struct Sample<'a> {
    pub window: &'a [[f64; 2]],
    pub label: usize,
    pub domain: usize,
    /// Whether the label loss includes this sample.
    pub use_label_loss: bool,
}

/// Batch-mean losses. `total = label_loss − λ·domain_loss`, or just the
/// label loss when the domain pathway is off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossComponents {
    pub label_loss: f64,
    pub domain_loss: Option<f64>,
    pub total: f64,
}

impl LossComponents {
    fn new(label_loss: f64, domain_loss: Option<f64>, lambda: f64) -> Self {
        LossComponents {
            label_loss,
            domain_loss,
            total: label_loss - lambda * domain_loss.unwrap_or(0.0),
        }
    }
}

struct Counts {
    labeled: usize,
    all: usize,
}

fn counts(batch: &[Sample]) -> Result<Counts> {
    if batch.is_empty() {
        return Err(Error::Argument("empty batch".into()));
    }
    Ok(Counts {
        labeled: batch.iter().filter(|s| s.use_label_loss).count(),
        all: batch.len(),
    })
}

struct PerSample {
    label_loss: f64,
    domain_loss: f64,
    grad: Params,
}

fn sample_pass(s: &Sample, params: &Params, lambda: f64, domain: bool, n: &Counts) -> Result<PerSample> {
    let (feature, fcache) = feature_forward(s.window, &params.feature)?;
    let grad = params.zeros_like();
    let mut d_feature = vec![0.0; feature.len()];
    let mut out = PerSample {
        label_loss: 0.0,
        domain_loss: 0.0,
        grad,
    };
    if s.use_label_loss {
        let (logits, cache) = head_forward(&feature, &params.label)?;
        let (loss, mut g) = softmax_ce(&logits, s.label)?;
        g.iter_mut().for_each(|v| *v /= n.labeled as f64);
        let df = head_backward(&params.label, &cache, &g, &mut out.grad.label);
        d_feature.iter_mut().zip(&df).for_each(|(a, b)| *a += b);
        out.label_loss = loss;
    }
    if domain {
        let (logits, cache) = head_forward(&feature, &params.domain)?;
        let (loss, mut g) = softmax_ce(&logits, s.domain)?;
        g.iter_mut().for_each(|v| *v /= n.all as f64);
        let df = head_backward(&params.domain, &cache, &g, &mut out.grad.domain);
        if lambda != 0.0 {
            let reversed = grl_backward(&df, lambda);
            d_feature.iter_mut().zip(&reversed).for_each(|(a, b)| *a += b);
        }
        out.domain_loss = loss;
    }
    if d_feature.iter().any(|v| *v != 0.0) {
        feature_backward(&params.feature, &fcache, &d_feature, &mut out.grad.feature)?;
    }
    Ok(out)
}

fn run(batch: &[Sample], params: &Params, lambda: f64, domain: bool) -> Result<(LossComponents, Params)> {
    let n = counts(batch)?;
    let parts: Vec<PerSample> = batch
        .par_iter()
        .map(|s| sample_pass(s, params, lambda, domain, &n))
        .collect::<Result<_>>()?;
    // Sequential reduction in batch order keeps results independent of threading.
    let mut iter = parts.into_iter();
    let first = iter.next().expect("non-empty batch");
    let (mut ly, mut ld, mut grad) = (first.label_loss, first.domain_loss, first.grad);
    for p in iter {
        ly += p.label_loss;
        ld += p.domain_loss;
        grad.add_assign(&p.grad);
    }
    let label_loss = if n.labeled > 0 { ly / n.labeled as f64 } else { 0.0 };
    let domain_loss = domain.then(|| ld / n.all as f64);
    Ok((LossComponents::new(label_loss, domain_loss, lambda), grad))
}

/// Losses and gradients for the adversarial objective.
///
/// The extractor receives the label-pathway gradient minus λ times the
/// domain-pathway gradient; each head receives the gradient of its own loss.
pub fn backprop_batch(batch: &[Sample], params: &Params, lambda: f64) -> Result<(LossComponents, Params)> {
    run(batch, params, lambda, true)
}

/// Label pathway only. The domain head gradient is zero.
pub fn backprop_label_only(batch: &[Sample], params: &Params) -> Result<(LossComponents, Params)> {
    run(batch, params, 0.0, false)
}

/// Forward-only batch-mean losses.
pub fn batch_losses(batch: &[Sample], params: &Params, lambda: f64) -> Result<LossComponents> {
    let n = counts(batch)?;
    let parts: Vec<(f64, f64)> = batch
        .par_iter()
        .map(|s| -> Result<(f64, f64)> {
            let (feature, _) = feature_forward(s.window, &params.feature)?;
            let ly = if s.use_label_loss {
                softmax_ce(&head_forward(&feature, &params.label)?.0, s.label)?.0
            } else {
                0.0
            };
            let ld = softmax_ce(&head_forward(&feature, &params.domain)?.0, s.domain)?.0;
            Ok((ly, ld))
        })
        .collect::<Result<_>>()?;
    let (ly, ld) = parts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let label_loss = if n.labeled > 0 { ly / n.labeled as f64 } else { 0.0 };
    Ok(LossComponents::new(label_loss, Some(ld / n.all as f64), lambda))
}

use crate::error::{Error, Result};

/// Numerically stable softmax.
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let m = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = logits.iter().map(|v| (v - m).exp()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

/// Cross-entropy of `truth` under softmax(`logits`) and its gradient.
pub fn softmax_ce(logits: &[f64], truth: usize) -> Result<(f64, Vec<f64>)> {
    if truth >= logits.len() {
        return Err(Error::Index(format!(
            "class {truth} out of range for {} logits",
            logits.len()
        )));
    }
    let m = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logits.iter().map(|v| (v - m).exp()).sum();
    let loss = m + sum.ln() - logits[truth];
    let mut grad: Vec<f64> = logits.iter().map(|v| (v - m).exp() / sum).collect();
    grad[truth] -= 1.0;
    Ok((loss, grad))
}

/// Backward pass of the gradient reversal layer. The forward pass is the identity.
pub fn grl_backward(upstream: &[f64], lambda: f64) -> Vec<f64> {
    upstream.iter().map(|g| -lambda * g).collect()
}

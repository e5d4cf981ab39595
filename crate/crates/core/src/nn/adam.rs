use serde::{Deserialize, Serialize};

use super::params::Params;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig {
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Moment accumulators, one buffer per parameter tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerState {
    pub config: AdamConfig,
    pub step: u64,
    pub first: Vec<Vec<f64>>,
    pub second: Vec<Vec<f64>>,
}

impl OptimizerState {
    pub fn new(params: &Params, config: AdamConfig) -> Self {
        let bufs: Vec<Vec<f64>> = params.named().iter().map(|(_, t)| vec![0.0; t.len()]).collect();
        OptimizerState {
            config,
            step: 0,
            first: bufs.clone(),
            second: bufs,
        }
    }
}

/// Bias-corrected adaptive-moment update.
pub fn adam_step(params: &mut Params, grads: &Params, state: &mut OptimizerState) -> Result<()> {
    let g_tensors = grads.named();
    let p_tensors = params.tensors_mut();
    if g_tensors.len() != p_tensors.len() || state.first.len() != p_tensors.len() {
        return Err(Error::Shape("gradient and parameter sets differ".into()));
    }
    for (((_, p), (name, g)), m) in p_tensors.iter().zip(&g_tensors).zip(&state.first) {
        if p.shape() != g.shape() || m.len() != p.len() {
            return Err(Error::Shape(format!(
                "{name}: gradient shape {:?} vs {:?}",
                g.shape(),
                p.shape()
            )));
        }
    }
    state.step += 1;
    let c = state.config;
    let bc1 = 1.0 - c.beta1.powi(state.step as i32);
    let bc2 = 1.0 - c.beta2.powi(state.step as i32);
    for (((_, p), (_, g)), (m, v)) in p_tensors
        .into_iter()
        .zip(g_tensors)
        .zip(state.first.iter_mut().zip(state.second.iter_mut()))
    {
        for (((w, &gi), mi), vi) in p
            .data_mut()
            .iter_mut()
            .zip(g.data())
            .zip(m.iter_mut())
            .zip(v.iter_mut())
        {
            *mi = c.beta1 * *mi + (1.0 - c.beta1) * gi;
            *vi = c.beta2 * *vi + (1.0 - c.beta2) * gi * gi;
            let m_hat = *mi / bc1;
            let v_hat = *vi / bc2;
            *w -= c.learning_rate * m_hat / (v_hat.sqrt() + c.epsilon);
        }
    }
    Ok(())
}

//! Bidirectional recurrent feature extractor with hand-derived BPTT.

use super::activation::{exp_in_place, sigmoid_from, tanh_from};
use super::params::{RecurrentCell, RecurrentParams};
use super::tensor::{axpy, gemv_acc, transpose};
use crate::error::{Error, Result};

/// Activations of one direction, indexed by processing step.
#[derive(Debug, Clone)]
struct DirectionCache {
    /// Post-activation gates `[i, f, g, o]`, `steps × 4H`.
    gates: Vec<f64>,
    c: Vec<f64>,
    tanh_c: Vec<f64>,
    h: Vec<f64>,
}

#[derive(Debug, Clone)]
struct LayerCache {
    /// Layer input in time order, `steps × input`.
    input: Vec<f64>,
    dirs: [DirectionCache; 2],
}

/// Everything the backward pass needs for one window.
#[derive(Debug, Clone)]
pub struct FeatureCache {
    steps: usize,
    hidden: usize,
    layers: Vec<LayerCache>,
}

fn run_direction(cell: &RecurrentCell, x: &[f64], steps: usize, reverse: bool) -> DirectionCache {
    let h = cell.hidden();
    let n_in = cell.input();
    let g4 = 4 * h;
    let mut cache = DirectionCache {
        gates: vec![0.0; steps * g4],
        c: vec![0.0; steps * h],
        tanh_c: vec![0.0; steps * h],
        h: vec![0.0; steps * h],
    };
    let mut z = vec![0.0; g4];
    let mut arg = vec![0.0; g4];
    let mut c_arg = vec![0.0; h];
    let mut c_last = vec![0.0; h];
    for s in 0..steps {
        let t = if reverse { steps - 1 - s } else { s };
        z.copy_from_slice(cell.bias.data());
        gemv_acc(&x[t * n_in..(t + 1) * n_in], cell.w_ih.data(), g4, &mut z);
        if s > 0 {
            gemv_acc(&cache.h[(s - 1) * h..s * h], cell.w_hh.data(), g4, &mut z);
        }
        for (k, (a, v)) in arg.iter_mut().zip(&z).enumerate() {
            let scale = if k / h == 2 { -2.0 } else { -1.0 };
            *a = scale * v.abs();
        }
        exp_in_place(&mut arg);
        let gates = &mut cache.gates[s * g4..(s + 1) * g4];
        for j in 0..h {
            gates[j] = sigmoid_from(z[j], arg[j]);
            gates[h + j] = sigmoid_from(z[h + j], arg[h + j]);
            gates[2 * h + j] = tanh_from(z[2 * h + j], arg[2 * h + j]);
            gates[3 * h + j] = sigmoid_from(z[3 * h + j], arg[3 * h + j]);
        }
        let c_now = &mut cache.c[s * h..(s + 1) * h];
        for j in 0..h {
            let c_prev = if s > 0 { c_last[j] } else { 0.0 };
            c_now[j] = gates[h + j] * c_prev + gates[j] * gates[2 * h + j];
            c_arg[j] = -2.0 * c_now[j].abs();
        }
        exp_in_place(&mut c_arg);
        for j in 0..h {
            let tc = tanh_from(c_now[j], c_arg[j]);
            cache.tanh_c[s * h + j] = tc;
            cache.h[s * h + j] = gates[3 * h + j] * tc;
        }
        c_last.copy_from_slice(c_now);
    }
    cache
}

/// Run the extractor over a `steps × input` window.
///
/// The feature is the top layer's forward state after the last step joined
/// with its backward state after the first step.
pub fn feature_forward(window: &[[f64; 2]], params: &RecurrentParams) -> Result<(Vec<f64>, FeatureCache)> {
    let flat: Vec<f64> = window.iter().flatten().copied().collect();
    feature_forward_flat(&flat, window.len(), params)
}

/// As [`feature_forward`] with the window given as a flat row-major slice.
pub fn feature_forward_flat(x: &[f64], steps: usize, params: &RecurrentParams) -> Result<(Vec<f64>, FeatureCache)> {
    let first = params
        .layers
        .first()
        .ok_or_else(|| Error::Shape("recurrent extractor has no layers".into()))?;
    let n_in = first[0].input();
    let h = first[0].hidden();
    if steps == 0 || x.len() != steps * n_in {
        return Err(Error::Shape(format!(
            "window has {} values, expected {steps}×{n_in} with at least one step",
            x.len()
        )));
    }
    let mut layers = Vec::with_capacity(params.layers.len());
    let mut input = x.to_vec();
    for pair in &params.layers {
        if pair[0].input() * steps != input.len() {
            return Err(Error::Shape("recurrent layer input width mismatch".into()));
        }
        let fwd = run_direction(&pair[0], &input, steps, false);
        let bwd = run_direction(&pair[1], &input, steps, true);
        let mut out = vec![0.0; steps * 2 * h];
        for t in 0..steps {
            out[t * 2 * h..t * 2 * h + h].copy_from_slice(&fwd.h[t * h..(t + 1) * h]);
            let s = steps - 1 - t;
            out[t * 2 * h + h..(t + 1) * 2 * h].copy_from_slice(&bwd.h[s * h..(s + 1) * h]);
        }
        layers.push(LayerCache {
            input,
            dirs: [fwd, bwd],
        });
        input = out;
    }
    let top = layers.last().expect("at least one layer");
    let last = (steps - 1) * h;
    let mut feature = Vec::with_capacity(2 * h);
    feature.extend_from_slice(&top.dirs[0].h[last..last + h]);
    feature.extend_from_slice(&top.dirs[1].h[last..last + h]);
    Ok((
        feature,
        FeatureCache {
            steps,
            hidden: h,
            layers,
        },
    ))
}

/// BPTT for one direction. `dh_out` holds upstream gradients by processing
/// step. Accumulates into `grad` and, when `dx` is given, into the input
/// gradient (time order).
fn backward_direction(
    cell: &RecurrentCell,
    cache: &DirectionCache,
    x: &[f64],
    dh_out: &[f64],
    reverse: bool,
    grad: &mut RecurrentCell,
    dx: Option<&mut [f64]>,
) {
    let h = cell.hidden();
    let n_in = cell.input();
    let g4 = 4 * h;
    let steps = dh_out.len() / h;
    let w_hh_t = transpose(cell.w_hh.data(), h, g4);
    // Pre-activation gradients for every step, processing order.
    let mut dz_all = vec![0.0; steps * g4];
    let mut dh_next = vec![0.0; h];
    let mut dc_next = vec![0.0; h];
    for s in (0..steps).rev() {
        let gates = &cache.gates[s * g4..(s + 1) * g4];
        let dz = &mut dz_all[s * g4..(s + 1) * g4];
        for j in 0..h {
            let dh = dh_out[s * h + j] + dh_next[j];
            let (i, f, g, o) = (gates[j], gates[h + j], gates[2 * h + j], gates[3 * h + j]);
            let tc = cache.tanh_c[s * h + j];
            let c_prev = if s > 0 { cache.c[(s - 1) * h + j] } else { 0.0 };
            let dc = dc_next[j] + dh * o * (1.0 - tc * tc);
            dz[j] = dc * g * i * (1.0 - i);
            dz[h + j] = dc * c_prev * f * (1.0 - f);
            dz[2 * h + j] = dc * i * (1.0 - g * g);
            dz[3 * h + j] = dh * tc * o * (1.0 - o);
            dc_next[j] = dc * f;
        }
        dh_next.fill(0.0);
        if s > 0 {
            gemv_acc(dz, &w_hh_t, h, &mut dh_next);
        }
    }

    for dz in dz_all.chunks_exact(g4) {
        axpy(1.0, dz, grad.bias.data_mut());
    }
    // Inputs and previous states arranged by processing step, one row per coordinate.
    let mut xs = vec![0.0; n_in * steps];
    for s in 0..steps {
        let t = if reverse { steps - 1 - s } else { s };
        for k in 0..n_in {
            xs[k * steps + s] = x[t * n_in + k];
        }
    }
    for k in 0..n_in {
        gemv_acc(&xs[k * steps..(k + 1) * steps], &dz_all, g4, grad.w_ih.row_mut(k));
    }
    if steps > 1 {
        let prev = transpose(&cache.h[..(steps - 1) * h], steps - 1, h);
        for k in 0..h {
            gemv_acc(
                &prev[k * (steps - 1)..(k + 1) * (steps - 1)],
                &dz_all[g4..],
                g4,
                grad.w_hh.row_mut(k),
            );
        }
    }
    if let Some(dx) = dx {
        let w_ih_t = transpose(cell.w_ih.data(), n_in, g4);
        for s in 0..steps {
            let t = if reverse { steps - 1 - s } else { s };
            gemv_acc(
                &dz_all[s * g4..(s + 1) * g4],
                &w_ih_t,
                n_in,
                &mut dx[t * n_in..(t + 1) * n_in],
            );
        }
    }
}

/// Gradient of the extractor parameters given `d_feature`; accumulates into `grad`.
pub fn feature_backward(
    params: &RecurrentParams,
    cache: &FeatureCache,
    d_feature: &[f64],
    grad: &mut RecurrentParams,
) -> Result<()> {
    let (steps, h) = (cache.steps, cache.hidden);
    if d_feature.len() != 2 * h {
        return Err(Error::Shape(format!(
            "feature gradient has {} entries, expected {}",
            d_feature.len(),
            2 * h
        )));
    }
    let n_layers = cache.layers.len();
    // Upstream gradient w.r.t. the layer output, time order, steps × 2H.
    let mut d_out = vec![0.0; steps * 2 * h];
    d_out[(steps - 1) * 2 * h..(steps - 1) * 2 * h + h].copy_from_slice(&d_feature[..h]);
    d_out[h..2 * h].copy_from_slice(&d_feature[h..]);
    for l in (0..n_layers).rev() {
        let lc = &cache.layers[l];
        let n_in = params.layers[l][0].input();
        let mut dx = if l > 0 { Some(vec![0.0; steps * n_in]) } else { None };
        for dir in 0..2 {
            let reverse = dir == 1;
            let mut dh = vec![0.0; steps * h];
            for s in 0..steps {
                let t = if reverse { steps - 1 - s } else { s };
                let off = t * 2 * h + dir * h;
                dh[s * h..(s + 1) * h].copy_from_slice(&d_out[off..off + h]);
            }
            backward_direction(
                &params.layers[l][dir],
                &lc.dirs[dir],
                &lc.input,
                &dh,
                reverse,
                &mut grad.layers[l][dir],
                dx.as_deref_mut(),
            );
        }
        if let Some(dx) = dx {
            d_out = dx;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::nn::params::{ModelDims, Params};
    use crate::nn::tensor::dot;

    fn small() -> ModelDims {
        ModelDims {
            hidden: 3,
            head_hidden: 4,
            seq_len: 7,
            ..ModelDims::default()
        }
    }

    fn window(seed: u64, n: usize) -> Vec<[f64; 2]> {
        (0..n)
            .map(|i| {
                let t = i as f64 + seed as f64 * 0.37;
                [(t * 0.7).sin() + 1.0, (t * 1.3).cos()]
            })
            .collect()
    }

    #[test]
    fn zero_model_gives_zero_feature() {
        let p = Params::zeros(&ModelDims::default());
        let (f, _) = feature_forward(&vec![[0.0; 2]; 100], &p.feature).unwrap();
        assert_eq!(f, vec![0.0; 32]);
    }

    #[test]
    fn rejects_bad_shape() {
        let p = Params::zeros(&ModelDims::default());
        assert!(matches!(
            feature_forward_flat(&[0.0; 5], 3, &p.feature),
            Err(Error::Shape(_))
        ));
        assert!(matches!(feature_forward(&[], &p.feature), Err(Error::Shape(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn features_bounded(seed in 0u64..1000, scale in 0.1f64..50.0) {
            let p = Params::init(&ModelDims::default(), seed);
            let w: Vec<[f64; 2]> = window(seed, 100).iter().map(|r| [r[0] * scale, r[1] * scale]).collect();
            let (f, _) = feature_forward(&w, &p.feature).unwrap();
            prop_assert_eq!(f.len(), 32);
            prop_assert!(f.iter().all(|v| v.is_finite() && v.abs() < 1.0));
        }

        #[test]
        fn reversal_swaps_directions(seed in 0u64..1000) {
            let dims = ModelDims { layers: 1, ..small() };
            let p = Params::init(&dims, seed);
            let w = window(seed, dims.seq_len);
            let rev: Vec<[f64; 2]> = w.iter().rev().copied().collect();
            let (f, _) = feature_forward(&w, &p.feature).unwrap();
            let (g, _) = feature_forward(&rev, &p.swap_directions().feature).unwrap();
            let h = dims.hidden;
            for j in 0..h {
                prop_assert!((f[j] - g[h + j]).abs() < 1e-14);
                prop_assert!((f[h + j] - g[j]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn backward_matches_finite_differences() {
        let dims = small();
        let p = Params::init(&dims, 11);
        let w = window(2, dims.seq_len);
        let weights: Vec<f64> = (0..2 * dims.hidden).map(|j| 0.5 - 0.2 * j as f64).collect();
        let objective = |p: &Params| {
            let (f, _) = feature_forward(&w, &p.feature).unwrap();
            dot(&f, &weights)
        };
        let (_, cache) = feature_forward(&w, &p.feature).unwrap();
        let mut grad = Params::zeros(&dims);
        feature_backward(&p.feature, &cache, &weights, &mut grad.feature).unwrap();
        let analytic: Vec<f64> = grad.named().iter().flat_map(|(_, t)| t.data().to_vec()).collect();

        let eps = 1e-6;
        let mut flat_index = 0;
        let n_tensors = p.named().len();
        for ti in 0..n_tensors {
            let len = p.named()[ti].1.len();
            for k in 0..len {
                let nudge = |delta: f64| {
                    let mut q = p.clone();
                    q.tensors_mut()[ti].1.data_mut()[k] += delta;
                    objective(&q)
                };
                let numeric = (nudge(eps) - nudge(-eps)) / (2.0 * eps);
                let a = analytic[flat_index + k];
                assert!(
                    (numeric - a).abs() < 1e-7,
                    "{} [{k}]: {numeric} vs {a}",
                    p.named()[ti].0
                );
            }
            flat_index += len;
        }
    }
}

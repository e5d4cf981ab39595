use super::params::HeadParams;
use super::tensor::{axpy, dot};
use crate::error::{Error, Result};

/// Inputs and pre-activations of each dense layer.
#[derive(Debug, Clone)]
pub struct HeadCache {
    inputs: Vec<Vec<f64>>,
    pre: Vec<Vec<f64>>,
}

pub fn head_forward(feature: &[f64], params: &HeadParams) -> Result<(Vec<f64>, HeadCache)> {
    if params.layers.is_empty() || feature.len() != params.input() {
        return Err(Error::Shape(format!(
            "head expects {} inputs, got {}",
            params.input(),
            feature.len()
        )));
    }
    let n = params.layers.len();
    let mut cache = HeadCache {
        inputs: Vec::with_capacity(n),
        pre: Vec::with_capacity(n),
    };
    let mut x = feature.to_vec();
    for (i, d) in params.layers.iter().enumerate() {
        if x.len() != d.input() {
            return Err(Error::Shape(format!(
                "dense layer {i} expects {} inputs, got {}",
                d.input(),
                x.len()
            )));
        }
        let mut z = d.b.data().to_vec();
        for (k, &xk) in x.iter().enumerate() {
            if xk != 0.0 {
                axpy(xk, d.w.row(k), &mut z);
            }
        }
        let next = if i + 1 < n {
            z.iter().map(|v| v.max(0.0)).collect()
        } else {
            z.clone()
        };
        cache.inputs.push(std::mem::replace(&mut x, next));
        cache.pre.push(z);
    }
    Ok((x, cache))
}

/// Accumulates parameter gradients into `grad` and returns the gradient
/// with respect to the head input.
pub fn head_backward(params: &HeadParams, cache: &HeadCache, d_logits: &[f64], grad: &mut HeadParams) -> Vec<f64> {
    let n = params.layers.len();
    let mut dz = d_logits.to_vec();
    for i in (0..n).rev() {
        let d = &params.layers[i];
        let g = &mut grad.layers[i];
        let x = &cache.inputs[i];
        axpy(1.0, &dz, g.b.data_mut());
        for (k, &xk) in x.iter().enumerate() {
            if xk != 0.0 {
                axpy(xk, &dz, g.w.row_mut(k));
            }
        }
        let mut dx: Vec<f64> = (0..d.input()).map(|k| dot(d.w.row(k), &dz)).collect();
        if i > 0 {
            for (v, pre) in dx.iter_mut().zip(&cache.pre[i - 1]) {
                if *pre <= 0.0 {
                    *v = 0.0;
                }
            }
        }
        dz = dx;
    }
    dz
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::params::{Dense, HeadParams};
    use crate::nn::tensor::Tensor;

    #[test]
    fn zero_head_gives_zero_logits() {
        let h = HeadParams::zeros(&[32, 32, 4]);
        let (y, _) = head_forward(&[0.0; 32], &h).unwrap();
        assert_eq!(y, vec![0.0; 4]);
        assert!(matches!(head_forward(&[0.0; 31], &h), Err(Error::Shape(_))));
    }

    #[test]
    fn single_layer_is_affine() {
        let h = HeadParams {
            layers: vec![Dense {
                w: Tensor::from_vec(&[2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap(),
                b: Tensor::from_vec(&[2], vec![0.5, -0.5]).unwrap(),
            }],
        };
        let (y, _) = head_forward(&[1.0, -1.0], &h).unwrap();
        assert_eq!(y, vec![1.0 - 3.0 + 0.5, 2.0 - 4.0 - 0.5]);
    }

    #[test]
    fn rectifier_blocks_negative_units() {
        let mut h = HeadParams::zeros(&[1, 2, 1]);
        h.layers[0].w.data_mut().copy_from_slice(&[1.0, -1.0]);
        h.layers[1].w.data_mut().copy_from_slice(&[1.0, 10.0]);
        let (y, cache) = head_forward(&[2.0], &h).unwrap();
        assert_eq!(y, vec![2.0]);
        let mut g = HeadParams::zeros(&[1, 2, 1]);
        let dx = head_backward(&h, &cache, &[1.0], &mut g);
        assert_eq!(dx, vec![1.0]);
        assert_eq!(g.layers[1].w.data(), &[2.0, 0.0]);
        assert_eq!(g.layers[0].w.data(), &[2.0, 0.0]);
    }
}

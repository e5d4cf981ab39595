use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tensor::Tensor;
use crate::error::{Error, Result};

/// Architecture sizes. The defaults are the full model; tests use smaller
/// ones for finite-difference checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelDims {
    pub input: usize,
    pub hidden: usize,
    pub layers: usize,
    pub head_hidden: usize,
    pub seq_len: usize,
    pub classes: usize,
    pub domains: usize,
}

impl Default for ModelDims {
    fn default() -> Self {
        ModelDims {
            input: 2,
            hidden: 16,
            layers: 2,
            head_hidden: 32,
            seq_len: 100,
            classes: 4,
            domains: 2,
        }
    }
}

impl ModelDims {
    pub fn feature_len(&self) -> usize {
        2 * self.hidden
    }

    pub fn layer_input(&self, layer: usize) -> usize {
        if layer == 0 {
            self.input
        } else {
            2 * self.hidden
        }
    }

    pub fn validate(&self) -> Result<()> {
        let sizes = [
            self.input,
            self.hidden,
            self.layers,
            self.head_hidden,
            self.seq_len,
            self.classes,
            self.domains,
        ];
        if sizes.contains(&0) {
            return Err(Error::Config(format!("model sizes must be positive: {self:?}")));
        }
        Ok(())
    }
}

/// Gate blocks in the order they are laid out along the `4·hidden` axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Input = 0,
    Forget = 1,
    Cell = 2,
    Output = 3,
}

/// One direction of one recurrent layer.
///
/// `w_ih` is `[input, 4·hidden]` and `w_hh` is `[hidden, 4·hidden]`, so each
/// input coordinate contributes one contiguous row to all four gates.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrentCell {
    pub w_ih: Tensor,
    pub w_hh: Tensor,
    pub bias: Tensor,
}

impl RecurrentCell {
    pub fn zeros(input: usize, hidden: usize) -> Self {
        RecurrentCell {
            w_ih: Tensor::zeros(&[input, 4 * hidden]),
            w_hh: Tensor::zeros(&[hidden, 4 * hidden]),
            bias: Tensor::zeros(&[4 * hidden]),
        }
    }

    pub fn hidden(&self) -> usize {
        self.w_hh.shape()[0]
    }

    pub fn input(&self) -> usize {
        self.w_ih.shape()[0]
    }

    /// Input→hidden weights of a single gate as a `hidden × input` matrix.
    pub fn input_gate_weights(&self, gate: Gate) -> Tensor {
        gate_block(&self.w_ih, gate, self.hidden())
    }

    pub fn recurrent_gate_weights(&self, gate: Gate) -> Tensor {
        gate_block(&self.w_hh, gate, self.hidden())
    }

    pub fn gate_bias(&self, gate: Gate) -> &[f64] {
        let h = self.hidden();
        &self.bias.data()[gate as usize * h..(gate as usize + 1) * h]
    }
}

fn gate_block(w: &Tensor, gate: Gate, hidden: usize) -> Tensor {
    let rows = w.shape()[0];
    let mut out = Vec::with_capacity(hidden * rows);
    for j in 0..hidden {
        for r in 0..rows {
            out.push(w.row(r)[gate as usize * hidden + j]);
        }
    }
    Tensor::from_vec(&[hidden, rows], out).expect("block shape")
}

/// Stacked bidirectional recurrent extractor; `layers[l] = [forward, backward]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrentParams {
    pub layers: Vec<[RecurrentCell; 2]>,
}

/// Fully connected layer, `w` is `[in, out]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub w: Tensor,
    pub b: Tensor,
}

impl Dense {
    pub fn zeros(input: usize, output: usize) -> Self {
        Dense {
            w: Tensor::zeros(&[input, output]),
            b: Tensor::zeros(&[output]),
        }
    }

    pub fn input(&self) -> usize {
        self.w.shape()[0]
    }

    pub fn output(&self) -> usize {
        self.w.shape()[1]
    }
}

/// Dense stack with ReLU between layers and a linear output.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadParams {
    pub layers: Vec<Dense>,
}

impl HeadParams {
    pub fn zeros(widths: &[usize]) -> Self {
        HeadParams {
            layers: widths.windows(2).map(|w| Dense::zeros(w[0], w[1])).collect(),
        }
    }

    pub fn input(&self) -> usize {
        self.layers.first().map_or(0, Dense::input)
    }

    pub fn output(&self) -> usize {
        self.layers.last().map_or(0, Dense::output)
    }
}

/// Which of the three parameter groups a tensor belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    Feature,
    Label,
    Domain,
}

/// Parameters of the three-part model. Gradients use the same type.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub feature: RecurrentParams,
    pub label: HeadParams,
    pub domain: HeadParams,
}

impl Params {
    pub fn zeros(dims: &ModelDims) -> Self {
        let layers = (0..dims.layers)
            .map(|l| {
                let cell = RecurrentCell::zeros(dims.layer_input(l), dims.hidden);
                [cell.clone(), cell]
            })
            .collect();
        let f = dims.feature_len();
        Params {
            feature: RecurrentParams { layers },
            label: HeadParams::zeros(&[f, dims.head_hidden, dims.classes]),
            domain: HeadParams::zeros(&[f, dims.head_hidden, dims.domains]),
        }
    }

    /// Fan-based uniform initialization, forget-gate biases at 1.
    pub fn init(dims: &ModelDims, seed: u64) -> Self {
        let mut p = Params::zeros(dims);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = dims.hidden;
        let mut fill = |t: &mut Tensor, fan_in: usize, fan_out: usize| {
            let a = (6.0 / (fan_in + fan_out) as f64).sqrt();
            for v in t.data_mut() {
                *v = rng.gen_range(-a..a);
            }
        };
        for pair in &mut p.feature.layers {
            for cell in pair.iter_mut() {
                let input = cell.input();
                fill(&mut cell.w_ih, input, h);
                fill(&mut cell.w_hh, h, h);
                cell.bias.data_mut()[h..2 * h].fill(1.0);
            }
        }
        for head in [&mut p.label, &mut p.domain] {
            for d in &mut head.layers {
                let (i, o) = (d.input(), d.output());
                fill(&mut d.w, i, o);
            }
        }
        p
    }

    pub fn dims_match(&self, dims: &ModelDims) -> bool {
        let z = Params::zeros(dims);
        self.named()
            .iter()
            .zip(z.named())
            .all(|((a, x), (b, y))| *a == b && x.shape() == y.shape())
            && self.named().len() == z.named().len()
    }

    /// All tensors with stable names, in canonical order.
    pub fn named(&self) -> Vec<(String, &Tensor)> {
        let mut out = Vec::new();
        for (l, pair) in self.feature.layers.iter().enumerate() {
            for (dir, cell) in ["fwd", "bwd"].iter().zip(pair) {
                out.push((format!("feature.{l}.{dir}.w_ih"), &cell.w_ih));
                out.push((format!("feature.{l}.{dir}.w_hh"), &cell.w_hh));
                out.push((format!("feature.{l}.{dir}.bias"), &cell.bias));
            }
        }
        for (name, head) in [("label", &self.label), ("domain", &self.domain)] {
            for (i, d) in head.layers.iter().enumerate() {
                out.push((format!("{name}.{i}.w"), &d.w));
                out.push((format!("{name}.{i}.b"), &d.b));
            }
        }
        out
    }

    /// Mutable tensors in the same order as [`Params::named`], with their group.
    pub fn tensors_mut(&mut self) -> Vec<(Group, &mut Tensor)> {
        let mut out = Vec::new();
        for pair in &mut self.feature.layers {
            for cell in pair.iter_mut() {
                out.push((Group::Feature, &mut cell.w_ih));
                out.push((Group::Feature, &mut cell.w_hh));
                out.push((Group::Feature, &mut cell.bias));
            }
        }
        for (g, head) in [(Group::Label, &mut self.label), (Group::Domain, &mut self.domain)] {
            for d in &mut head.layers {
                out.push((g, &mut d.w));
                out.push((g, &mut d.b));
            }
        }
        out
    }

    pub fn group_of(name: &str) -> Group {
        match name.split('.').next() {
            Some("feature") => Group::Feature,
            Some("label") => Group::Label,
            _ => Group::Domain,
        }
    }

    pub fn zeros_like(&self) -> Params {
        let mut z = self.clone();
        for (_, t) in z.tensors_mut() {
            t.data_mut().fill(0.0);
        }
        z
    }

    pub fn add_assign(&mut self, other: &Params) {
        let theirs: Vec<&Tensor> = other.named().into_iter().map(|(_, t)| t).collect();
        for ((_, a), b) in self.tensors_mut().into_iter().zip(theirs) {
            a.add_assign(b);
        }
    }

    pub fn scale(&mut self, k: f64) {
        for (_, t) in self.tensors_mut() {
            t.scale(k);
        }
    }

    pub fn param_count(&self) -> usize {
        self.named().iter().map(|(_, t)| t.len()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.named().iter().all(|(_, t)| t.is_finite())
    }

    /// Same feature extractor with forward and backward cells exchanged.
    pub fn swap_directions(&self) -> Params {
        let mut p = self.clone();
        for pair in &mut p.feature.layers {
            pair.swap(0, 1);
        }
        p
    }
}

//! Deterministic network core: a bidirectional recurrent extractor, dense
//! heads, cross-entropy, gradient reversal and an adaptive-moment optimizer,
//! all with hand-derived gradients.

mod activation;
mod adam;
mod backprop;
mod checkpoint;
mod gradcheck;
mod head;
mod loss;
mod params;
mod recurrent;
mod tensor;

pub use adam::{adam_step, AdamConfig, OptimizerState};
pub use backprop::{backprop_batch, backprop_label_only, batch_losses, LossComponents, Sample};
pub use checkpoint::{decode_checkpoint, encode_checkpoint, Checkpoint, CHECKPOINT_VERSION};
pub use gradcheck::{grad_check, grad_check_against, Coverage, GradCheck};
pub use head::{head_backward, head_forward, HeadCache};
pub use loss::{grl_backward, softmax, softmax_ce};
pub use params::{Dense, Gate, Group, HeadParams, ModelDims, Params, RecurrentCell, RecurrentParams};
pub use recurrent::{feature_backward, feature_forward, feature_forward_flat, FeatureCache};
pub use tensor::Tensor;

/// Parameters drawn for `seed` at the default architecture.
pub fn init_params(seed: u64) -> Params {
    Params::init(&ModelDims::default(), seed)
}

//! Adversarial domain adaptation for earable activity recognition.
pub mod cli;
pub mod dann;
pub mod datasets;
pub mod error;
pub mod eval;
pub mod nn;
pub mod signal;

pub use error::{Error, Result};

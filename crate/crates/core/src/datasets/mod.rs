//! Dataset ingestion and harmonization.
//!
//! Every source (canonical CSV, the public smartphone corpora, the
//! synthetic generator) ends up as [`RawRecording`]s, which the
//! [`pipeline`] turns into fixed-length [`RawWindow`]s at 25 Hz and then
//! into 2-channel [`LabeledWindow`]s.

mod canonical;
mod labels;
pub mod pipeline;
mod public;
mod sampling;
pub mod synth;
mod window_file;
mod windows;

pub use canonical::{load_canonical, write_canonical, CANONICAL_HEADER};
pub use labels::{harmonize_label, ActivityLabel, DomainTag, HeadMovement};
pub use pipeline::{condition, segment, Preprocessor};
pub use public::{adapt_public, PublicCorpus};
pub use sampling::{balanced_sample, split, SplitSpec, Splits};
pub use synth::{synth_generate, synth_generate_raw, synth_recordings, GeneratorConfig};
pub use window_file::{read_windows, write_windows, WINDOW_FILE_VERSION};
pub use windows::{Labeled, LabeledWindow, RawWindow, CHANNELS, TARGET_RATE_HZ, WINDOW_LEN};

use crate::signal::RawRecording;

/// A recording together with a human-readable identifier of where it came
/// from (corpus, subject, session).
#[derive(Debug, Clone, PartialEq)]
pub struct SourcedRecording {
    pub origin: String,
    pub recording: RawRecording,
}

//! Confusion matrices, per-class and grouped metrics, and the two ablation
//! experiments (adaptation on/off, filter on/off).

mod ablation;
mod metrics;
mod table;

pub use ablation::{ablate_da, ablate_filter, evaluate, ConditionDelta, DaComparison, FilterComparison, SyntheticPack};
pub use metrics::{confusion, report, ClassMetrics, ConfusionMatrix, EvalReport, GroupReport, EVAL_FORMAT_VERSION};
pub use table::render_table;

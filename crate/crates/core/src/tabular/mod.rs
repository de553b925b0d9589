//! Attribute-wise evidence from per-class statistics, and a Monte-Carlo
//! classification harness for labelled numeric tables.

mod classify;
mod dataset;
mod montecarlo;
mod stats;

pub use classify::{classify_instance, Method};
pub use dataset::Dataset;
pub use montecarlo::{monte_carlo_eval, stratified_split, AccuracyRow, AccuracyTable, SplitSize};
pub use stats::{attribute_qmf, class_statistics, AttributeStats, ClassStatistics};

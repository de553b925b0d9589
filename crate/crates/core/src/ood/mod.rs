//! Out-of-distribution scoring with class description domain spaces: one
//! fused quantum description vector per in-distribution class, a similarity
//! domain learned on validation rows, an optional logit-based score and the
//! usual ranking metrics.

mod cdds;
mod dml;
mod features;
mod metrics;
mod pipeline;
mod synthetic;

pub use cdds::{
    build_cdds, common_feature_mask, decision_function, default_keep_count, description_vector, ClassDomainSpace,
    ColumnStats, Decision, DescriptionVector, Policy,
};
pub use dml::{composite_score, dml_score, preset, DmlParams, Preset, PRESETS};
pub use features::{FeatureMatrix, TestSet};
pub use metrics::{auc, fpr95, Orientation, ScoreRecord, Truth};
pub use pipeline::{
    evaluate, fit, keep_count_sweep, metrics_table, read_score_records, read_store, score, scores_table, sweep_table,
    write_store, ClassData, DmlInput, Manifest, ManifestClass, MetricRow, ScoredRow, SweepRow,
};
pub use synthetic::{SyntheticConfig, SyntheticOod};

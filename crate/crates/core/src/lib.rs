//! Quantum evidence theory toolkit.
//!
//! Complex-amplitude mass functions ([`Qmf`]) on bitmask-encoded frames, the
//! quantum Dempster combination rule, the quantum correlation coefficient and
//! conflict indicator ([`qcc`], [`qci`]), conflict-weighted fusion
//! ([`fusion::fuse`]), a Monte-Carlo classification harness for tabular data
//! ([`tabular`]) and class-description-space out-of-distribution scoring
//! ([`ood`]).
//!
//! Each capability has a runnable program under `examples/`:
//!
//! ```text
//! cargo run --release --example conflict_measures
//! cargo run --release --example combination_rules
//! cargo run --release --example conflict_fusion
//! cargo run --release --example iris_classification
//! cargo run --release --example ood_synthetic
//! cargo run --release --example keep_count_sweep
//! cargo run --release --example scenario_grids
//! ```

pub mod combine;
pub mod conflict;
pub mod error;
pub mod fusion;
pub mod format;
pub mod frame;
pub mod ood;
pub mod qmf;
pub mod report;
pub mod scenarios;
pub mod singleton;
pub mod tabular;

pub use combine::{drc_classic, drc_qm, murphy_combine, pcr5};
pub use conflict::{inner_product, phase_weight, qcc, qci, qci_matrix, qmf_norm, ConflictMatrix};
pub use error::{Error, Result};
pub use frame::{FocalSet, Frame};
pub use fusion::{fuse, Evidence, FusionReport};
pub use qmf::{make_qmf, Amplitude, ClassicalMass, Qmf};
pub use singleton::SingletonQmf;

/// Version string stamped into every CSV artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

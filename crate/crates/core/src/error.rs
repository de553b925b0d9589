use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("focal set {0:#b} is not a subset of the frame")]
    FocalOutOfFrame(u64),

    #[error("empty focal set carries a nonzero amplitude")]
    EmptyFocal,

    #[error("focal set {0:#b} listed more than once")]
    DuplicateFocal(u64),

    #[error("amplitude {re}+{im}i has a negative component")]
    NegativeComponent { re: f64, im: f64 },

    #[error("amplitude magnitude squared {0} exceeds 1")]
    AmplitudeTooLarge(f64),

    #[error("squared magnitudes sum to {0}, expected 1")]
    NotNormalized(f64),

    #[error("every amplitude is zero; cannot normalize")]
    ZeroTotal,

    #[error("mass values sum to {0}, expected 1")]
    MassNotNormalized(f64),

    #[error("mass value {0} outside [0, 1]")]
    MassOutOfRange(f64),

    #[error("operands are defined on different frames")]
    FrameMismatch,

    #[error("phase difference {0} rad is outside [-pi, pi]")]
    Domain(f64),

    #[error("need at least {needed} inputs, got {got}")]
    TooFew { needed: usize, got: usize },

    #[error("total conflict: no non-empty intersection carries mass")]
    TotalConflict,

    #[error("every pair of sources is in total conflict; support degrees are all zero")]
    AllZeroSupport,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("discount coefficient {0} outside [0, 1]")]
    InvalidDiscount(f64),

    #[error("class {class} has {rows} rows, at least 2 are required")]
    DegenerateClass { class: String, rows: usize },

    #[error("invalid split size {0}")]
    InvalidFraction(f64),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("description vectors are restricted to different feature sets")]
    KeptMismatch,

    #[error("keep count {keep} outside [1, {features}]")]
    InvalidKeepCount { keep: usize, features: usize },

    #[error("class {class} has {rows} validation rows, at least 2 are required")]
    TooFewValidationRows { class: i64, rows: usize },

    #[error("vector has zero norm")]
    ZeroNorm,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("metric needs both ID and OOD records")]
    SingleClassOnly,

    #[error("FPR95 needs at least {needed} ID records, got {got}")]
    TooFewPositives { needed: usize, got: usize },

    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },

    #[error("no class domain space for predicted class {0}")]
    UnknownClass(i64),

    #[error("{0}")]
    InvalidInput(String),

    #[error("class {class}: {source}")]
    ClassFit { class: i64, source: Box<Error> },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for malformed or out-of-contract inputs, false for failures that
    /// happen while computing on valid inputs.
    pub fn is_input_error(&self) -> bool {
        if let Error::ClassFit { source, .. } = self {
            return source.is_input_error();
        }
        !matches!(
            self,
            Error::TotalConflict
                | Error::AllZeroSupport
                | Error::Inconsistent(_)
                | Error::ZeroTotal
                | Error::ZeroNorm
                | Error::DegenerateClass { .. }
                | Error::TooFewValidationRows { .. }
        )
    }
}

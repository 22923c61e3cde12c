use thiserror::Error;

/// Errors produced by estimation, sampling and experiment routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("unknown wavelet filter `{0}` (expected haar, db2..db10 or sym4..sym10)")]
    UnknownFilter(String),

    #[error("unknown model `{0}` (expected uniform, separated-bimodal, kurtotic or strongly-skewed)")]
    UnknownModel(String),

    #[error("signal length {len} is not a power of two >= {min}")]
    BadSignalLength { len: usize, min: usize },

    #[error("pyramid shape mismatch: {0}")]
    PyramidShape(String),

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("empty sample")]
    EmptySample,

    #[error("sample value {value} outside [-{bound}, {bound}]")]
    OutOfRange { value: f64, bound: f64 },

    #[error("sample too small: n = {n}, {detail}")]
    SampleTooSmall { n: usize, detail: String },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("singular weight: derivative of the generating function vanishes at the inversion point")]
    SingularWeight,

    #[error("fold count {folds} invalid for sample size {n}")]
    FoldCount { folds: usize, n: usize },

    #[error("grid length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("non-finite value encountered in {0}")]
    NonFinite(String),
}

impl Error {
    /// Configuration errors come from bad arguments; everything else is a
    /// runtime failure on otherwise valid input. The CLI maps the former to
    /// exit code 1 and the latter to 2.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::UnknownFilter(_)
                | Error::UnknownModel(_)
                | Error::BadParameter(_)
                | Error::FoldCount { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

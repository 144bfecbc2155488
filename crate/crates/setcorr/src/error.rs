use thiserror::Error;

/// Errors produced by the library.
///
/// Degenerate-but-legal situations (a component variance at zero, say) are
/// not errors; they surface as undefined flags on the affected statistics.
#[derive(Debug, Error)]
pub enum Error {
    /// A body violates its construction invariants.
    #[error("invalid body: {0}")]
    InvalidBody(String),

    /// Operands live in different ambient dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The exact set algebra cannot represent the result ({0}).
    /// Work with sampled support profiles instead.
    #[error("unsupported body combination: {0}")]
    UnsupportedCombination(String),

    /// Only dimensions 1 and 2 are implemented.
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    /// Inputs that must share structure (direction set, length) do not.
    #[error("structural mismatch: {0}")]
    Structural(String),

    /// Too few observations for the requested statistic.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Non-finite values or malformed records in the input data.
    #[error("data error: {0}")]
    Data(String),

    /// A numerical result left its admissible range by more than the
    /// tolerated rounding budget.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The design matrix has no usable pivot in the named column.
    #[error("rank-deficient design matrix: column {column} is linearly dependent on earlier columns")]
    RankDeficient { column: usize },

    /// A generator could not produce a valid body.
    #[error("generation failed: {0}")]
    Generation(String),

    /// Bad generator or estimator parameters.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

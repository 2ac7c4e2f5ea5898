use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Validation problems (bad input) and internal-consistency failures are
/// kept apart so callers can map them to different exit paths.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} rows, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("weight {weight} is not in P_{level}(sl_{rank_plus_one}): first row minus last row exceeds the level")]
    Admissibility {
        weight: String,
        level: u32,
        rank_plus_one: usize,
    },

    #[error("weight {weight} does not fit in a {rows}x{cols} box")]
    BoxOverflow {
        weight: String,
        rows: usize,
        cols: u32,
    },

    #[error("invalid Young diagram {0:?}: rows must be weakly decreasing")]
    NotDecreasing(Vec<u32>),

    #[error("invalid algebra/level: {0}")]
    InvalidAlgebra(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("class is not in the span of the symmetric boundary divisors: {0}")]
    NotRepresentable(String),

    #[error(
        "floating point Verlinde sum left the guard band: value {value} (tolerance {tolerance})"
    )]
    Precision { value: String, tolerance: String },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("construction failure: {0}")]
    ConstructionFailure(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures that indicate a bug or a broken formula rather than
    /// bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InternalConsistency(_) | Error::ConstructionFailure(_) | Error::Precision { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::fmt;

/// Errors surfaced by exact operations.
///
/// Obstructions and exhausted searches are *results*, not errors; they have
/// their own types. `CoreError` covers misuse (dimension mismatches, invalid
/// parameters) and data that violates a stated precondition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// Two objects that must agree on a dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// A family parameter outside its allowed range.
    InvalidParameter(String),
    /// Input data violates an invariant (e.g. unequal norms, missing antipode).
    InvalidData(String),
    /// A search space larger than the configured cap.
    TooLarge(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            CoreError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            CoreError::InvalidData(msg) => write!(f, "invalid data: {msg}"),
            CoreError::TooLarge(msg) => write!(f, "search space too large: {msg}"),
        }
    }
}

impl std::error::Error for CoreError {}

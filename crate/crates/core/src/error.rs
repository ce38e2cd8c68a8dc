use thiserror::Error;

use crate::order::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid {family} parameters: {reason}")]
    InvalidParams { family: Family, reason: String },

    #[error("elements belong to different orders")]
    IncompatibleOrder,

    #[error("operation is not supported for {0} orders")]
    UnsupportedFamily(Family),

    #[error("element {0} is not totally positive")]
    NotTotallyPositive(String),

    #[error("descriptor out of range: {0}")]
    Descriptor(String),

    #[error("parallelepiped spanned by {0} is degenerate")]
    DegenerateParallelepiped(String),

    #[error("no totally positive codifferent element gives trace at most {upper}")]
    WitnessNotFound { upper: u64 },

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("root enclosures could not certify {0} before the refinement cap")]
    RefinementExhausted(&'static str),

    /// An internal invariant failed. Always a bug, never bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

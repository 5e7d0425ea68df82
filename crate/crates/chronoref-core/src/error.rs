use thiserror::Error;

use crate::refinement::RefinementReport;

/// Errors shared by all checkers. These signal caller misuse (bad indices,
/// unclosed inputs, mismatched universes); failed checks are reported through
/// the verdict types instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe size must be at least 1")]
    EmptyUniverse,

    #[error("universe size {size} exceeds the configured cap of {cap} instants")]
    UniverseTooLarge { size: u32, cap: u32 },

    #[error("instant {id} is out of range for a universe of {size} instants")]
    InstantOutOfRange { id: u32, size: u32 },

    #[error("operation requires a closed structure; call close() first")]
    NotClosed,

    #[error("structure is inconsistent: instants {0} and {1} are both ordered and coincident", .witness.0, .witness.1)]
    InvalidStructure { witness: (u32, u32) },

    #[error("structures live on different universes ({left} vs {right} instants)")]
    UniverseMismatch { left: u32, right: u32 },

    #[error(
        "clock {name:?} is not totally ordered by precedence (first offending tick: {witness})"
    )]
    InvalidClock { name: String, witness: u32 },

    #[error("enumeration size {n} is outside the supported range 1..={max}")]
    EnumerationOutOfRange { n: u32, max: u32 },

    #[error("clock refinement requires the structures to be in refinement")]
    RefinementPrecondition { report: Box<RefinementReport> },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::diagram::{DiagramKind, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("{0} is not an inverse fireworks permutation")]
    NotInverseFireworks(String),

    #[error("n = {n} exceeds the enumeration bound {max} (pass an explicit override to go beyond)")]
    BoundExceeded { n: usize, max: usize },

    #[error("malformed diagram: {0}")]
    Malformed(String),

    #[error("invalid {kind} diagram: {}", format_violations(.violations))]
    InvalidDiagram {
        kind: DiagramKind,
        violations: Vec<Violation>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("expected a {expected} diagram, found {found}")]
    KindMismatch {
        expected: DiagramKind,
        found: DiagramKind,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal invariant broke. For conjectural or reconstructed steps this
    /// carries the falsifying witness.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("polynomial error: {0}")]
    Polynomial(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

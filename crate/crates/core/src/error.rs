use thiserror::Error;

use crate::fan::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("unsupported cone: {0}")]
    UnsupportedCone(String),

    #[error("rank {rank} exceeds the supported limit {limit}")]
    UnsupportedRank { rank: usize, limit: usize },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("invalid fan: {}", format_violations(.0))]
    InvalidFan(Vec<Violation>),

    #[error("the rays of the fan do not span the ambient space (split off the torus factor first)")]
    DegenerateFan,

    #[error("invalid surface normal form (a, b) = ({a}, {b})")]
    InvalidSurfaceForm { a: String, b: String },

    #[error("inconsistent declaration: {0}")]
    InconsistentDeclaration(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

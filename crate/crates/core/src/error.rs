use thiserror::Error;

use crate::arith::UnknownId;
use crate::solver::Provenance;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("nonlinear term: {left} * {right}")]
    NonlinearTerm { left: String, right: String },

    #[error("truncation bound mismatch: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },

    #[error("unsolved degree: requested degree {requested}, table solved through {solved}")]
    UnsolvedDegree { requested: i64, solved: u32 },

    #[error("missing value for unknown {0}")]
    MissingUnknown(UnknownId),

    #[error("unexpected unknown {unknown} when committing degree {degree}")]
    UnexpectedUnknown { unknown: UnknownId, degree: u32 },

    #[error("degree gap: expected degree {expected}, got {got}")]
    DegreeGap { expected: u32, got: u32 },

    #[error("coefficient not configured for d={0}")]
    CoefficientNotConfigured(u32),

    #[error("grading violation: p + q - r = {p} + {q} - {r} != 3 * {d}")]
    GradingViolation { p: u32, q: u32, r: u32, d: u32 },

    #[error("under-determined system at degree {degree}: free unknowns {}", join(free))]
    Underdetermined { degree: u32, free: Vec<UnknownId> },

    #[error("inconsistent system at degree {degree}: equation from {provenance} has no solution")]
    Inconsistent { degree: u32, provenance: Provenance },

    #[error("nonzero residual below working degree {degree} at {provenance}: {residual}")]
    LowerDegreeResidual {
        degree: u32,
        provenance: Provenance,
        residual: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degree {degree}: {source}")]
    AtDegree {
        degree: u32,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Strips any `AtDegree` wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtDegree { source, .. } => source.root(),
            e => e,
        }
    }

    /// True for errors caused by bad input or configuration rather than by
    /// the solver itself.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self.root(),
            Error::CoefficientNotConfigured(_)
                | Error::GradingViolation { .. }
                | Error::InvalidArgument(_)
                | Error::Parse(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::Csv(_)
        )
    }
}

fn join(ids: &[UnknownId]) -> String {
    ids.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(", ")
}

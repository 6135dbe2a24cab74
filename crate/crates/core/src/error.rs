use thiserror::Error;

use crate::freespace::ComponentReport;
use crate::geom::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Internal consistency failures. These indicate broken input assumptions
/// or a geometry bug, never an ordinary user error.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Invariant {
    #[error("no standalone goal at iteration {iteration}")]
    NoStandaloneGoal { iteration: usize },
    #[error(
        "path to goal {goal} is blocked by more than one start at its last interference point"
    )]
    MultipleBlockers { goal: usize },
    #[error("no perfect assignment at iteration {iteration}")]
    AssignmentFailed { iteration: usize },
    #[error("geometry: {0}")]
    Geometry(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("one circle strictly contains the other; no common tangent")]
    NoTangent,
    #[error("point {point} is outside the free space")]
    PointOutsideFreeSpace { point: Point },
    #[error("free space is empty")]
    EmptyFreeSpace,
    #[error("no path between points in different components")]
    NoPath,
    #[error("parameter {param} outside [0, {length}]")]
    ParamOutOfRange { param: f64, length: f64 },
    #[error("no perfect matching with finite cost")]
    NoPerfectMatching,
    #[error("instance is infeasible: {0}")]
    Infeasible(ComponentReport),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(#[from] Invariant),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("scenario violates {} constraint(s)", .0.len())]
    Validation(Vec<crate::scenario::Violation>),
    #[error("scenario generation failed: {0}")]
    GenerationFailure(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible(_) => 2,
            Error::InvariantViolation(_) => 3,
            _ => 1,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("lines at angles {0} and {1} are parallel")]
    ParallelLines(f64, f64),
    #[error("support samples live on different grids")]
    GridMismatch,
    #[error("measure does not close: |sum w v_t| = {0}")]
    ClosureViolation(f64),
    #[error("vertex chain is not convex and counterclockwise at vertex {0}")]
    NotConvex(usize),
    #[error("support samples are not realizable: edge weight {weight} at angle {angle}")]
    NegativeEdge { angle: f64, weight: f64 },
    #[error("grid gap of {0} radians is too wide to recover vertices")]
    GapTooWide(f64),
    #[error("rotation angle {0} outside (0, pi/2]")]
    BadOmega(f64),
    #[error("angle {0} outside [0, omega]")]
    AngleOutOfRange(f64),
    #[error("cap tangency violated: {0}")]
    Tangency(String),
    #[error("cap has an edge normal outside the allowed set at angle {0}")]
    ForbiddenNormal(f64),
    #[error("boundary constraint {which} equals {value}, expected 1")]
    Constraint { which: usize, value: f64 },
    #[error("bottom atom {0} is negative")]
    NegativeBottomAtom(f64),
    #[error("input is not in standard position: {0}")]
    NotStandardPosition(String),
    #[error("angle set is empty")]
    EmptyAngles,
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

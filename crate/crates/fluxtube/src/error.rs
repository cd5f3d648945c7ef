//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used by every fallible operation in the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by geometry construction, the Steiner solvers, the
/// spectral routines and the CLI plumbing.
#[derive(Debug, Error)]
pub enum Error {
    /// A coordinate or parameter was NaN or infinite.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// Sampling scale must be a strictly positive finite number.
    #[error("invalid sampling scale {0} (must be finite and > 0)")]
    InvalidScale(f64),

    /// Side lengths that cannot form a triangle.
    #[error("side lengths ({a1}, {a2}, {a3}) violate the triangle inequality")]
    TriangleInequality { a1: f64, a2: f64, a3: f64 },

    /// Two points that must be distinct coincide.
    #[error("coincident points in {context}")]
    CoincidentPoints { context: &'static str },

    /// The requested construction plane is ill-defined.
    #[error("plane normal is parallel to the base segment")]
    DegenerateNormal,

    /// A quark or antiquark pair has zero separation, so its equilateral
    /// circle degenerates to a point.
    #[error("degenerate segment {which}: endpoints coincide")]
    DegenerateSegment { which: &'static str },

    /// The two carrier lines are parallel, leaving the common-perpendicular
    /// frame undefined.
    #[error("carrier lines v1v2 and v3v4 are parallel; frame undefined")]
    ParallelLines,

    /// A fixed-point iteration exhausted its iteration budget.
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },

    /// Input to the planar solver is not coplanar.
    #[error("points deviate from a common plane by {deviation:e} of the extent")]
    NonPlanar { deviation: f64 },

    /// The planar construction produced junctions that do not form a genuine
    /// two-junction tree (collapsed or interchanged junctions).
    #[error("no genuine two-junction tree: construction length {length}")]
    NonGenuine { length: f64 },

    /// The stationary-point search of the polynomial solver failed to locate
    /// any admissible critical point.
    #[error("root isolation failed: {0}")]
    RootFindingFailure(&'static str),

    /// A bisection bracket did not enclose a sign change.
    #[error("no sign change in bracket [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    /// Mass ratios must be strictly positive.
    #[error("invalid mass ratio {0} (must be finite and > 0)")]
    InvalidMass(f64),

    /// A sweep range was empty or inverted.
    #[error("invalid range [{min}, {max}] with {points} points")]
    InvalidRange { min: f64, max: f64, points: usize },

    /// The violation search came up empty, which indicates a bug in the
    /// search families rather than a certified bound.
    #[error("no bound violation found over the search family")]
    NoViolationFound,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

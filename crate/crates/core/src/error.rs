//! Error type shared across the crate.

/// Unified error enum. Variants mirror the failure modes of the public
/// operations: geometric domain violations, order-contract breaches,
/// schedule arithmetic, and configuration problems.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Two points (or a point and a structure) belong to different spaces.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// Coordinates violate the space's point invariant.
    #[error("invalid point: {0}")]
    InvalidPoint(String),

    /// Geodesic between the given endpoints is not unique.
    #[error("non-unique geodesic: {0}")]
    NonUniqueGeodesic(String),

    /// Input lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Side lengths do not form a triangle in the requested model space.
    #[error("unrealizable triangle: {0}")]
    UnrealizableTriangle(String),

    /// Point is not on the reference segment.
    #[error("off segment: {0}")]
    OffSegment(String),

    /// A documented precondition was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Requested time is not on the schedule lattice.
    #[error("schedule incompatible: {0}")]
    ScheduleIncompatible(String),

    /// Schedule value exceeded the representable range.
    #[error("schedule exhausted: {0}")]
    ScheduleExhausted(String),

    /// An iteration that must be order-monotone produced a non-comparable
    /// or decreasing step.
    #[error("order contract violated: {0}")]
    OrderContract(String),

    /// Configuration parse or referential-consistency failure.
    #[error("config error: {0}")]
    Config(String),

    /// Numerical failure (overflow, iteration cap, non-finite value).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Filesystem failure while reading a config or writing an output.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

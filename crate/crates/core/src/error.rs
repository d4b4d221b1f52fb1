use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A construction would exceed the configured size budget.
    #[error("resource limit exceeded: {what} needs {needed}, limit is {limit}")]
    Resource {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The tiling builder reached a state that cannot be a patch of the target tiling.
    #[error("inconsistent tiling construction: {0}")]
    Inconsistent(String),

    /// An animal touches a vertex whose neighbourhood is not fully present in the host.
    #[error("animal touches non-interior vertex {vertex} of the host patch")]
    Frontier { vertex: usize },

    #[error("no sign change of p - 2/m + D_n(p) on (0, 1/2] at grid step {grid_step}")]
    NoSignChange { grid_step: f64 },

    #[error(
        "isoperimetry violated: animal with {edges} edges has only {boundary} boundary edges"
    )]
    IsoperimetryViolation { edges: u32, boundary: u32 },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

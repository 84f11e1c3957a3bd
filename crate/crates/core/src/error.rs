use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A coupling left the non-Hermitian branch (must be strictly positive).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("interval endpoint {endpoint} is a root; retry with {nudge}")]
    EndpointIsRoot { endpoint: String, nudge: String },

    #[error("interval does not isolate a simple root: {0}")]
    MultipleRoot(String),

    #[error("polynomial system is not zero-dimensional")]
    NotZeroDimensional,

    #[error("cannot back-substitute variable {0} uniquely")]
    AmbiguousVariable(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("no real EPN in non-Hermitian branch for N = {0}")]
    NoPhysicalEpn(usize),

    /// `trace` lists the max-norm change of every sweep.
    #[error("iteration did not converge after {iterations} steps (last change {last_change})")]
    NonConvergence { iterations: usize, last_change: String, trace: Vec<String> },

    /// A numerical decision (rank, singularity) could not be made at the
    /// working precision.
    #[error("numerical failure: {0}; try a higher precision")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

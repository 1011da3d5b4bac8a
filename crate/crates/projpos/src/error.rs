//! Crate-wide error type.
//!
//! Errors are split by how the caller should react: `Input`/`Domain` mean the
//! request itself is malformed (the CLI maps these to exit code 2), while the
//! convergence variants mean a numeric routine could not certify its result
//! and carry the diagnostic residuals needed to judge how close it got.

/// Errors produced by solvers, constructors, and verifiers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Structurally invalid input: wrong dimensions, non-positive weights,
    /// non-hermitian data, unparsable files, and similar.
    #[error("invalid input: {0}")]
    Input(String),

    /// Input is well-formed but outside an operation's mathematical domain
    /// (e.g. a Schatten exponent below 1, or eps below 1 for eps-positivity).
    #[error("domain error: {0}")]
    Domain(String),

    /// The state set `S_eps` is empty: eps is below the feasibility
    /// threshold `1/||e||_p` of the space.
    #[error("infeasible state set: eps = {eps} is below the feasibility threshold {threshold}")]
    Infeasible { eps: f64, threshold: f64 },

    /// The Jacobi eigensolver exhausted its sweep budget before the
    /// off-diagonal mass fell under the convergence threshold.
    #[error(
        "eigensolver did not converge: off-diagonal Frobenius residual {residual:.3e} \
         after {sweeps} sweeps (threshold {threshold:.3e})"
    )]
    EigNoConvergence {
        residual: f64,
        threshold: f64,
        sweeps: usize,
    },

    /// A bisection failed to bracket or meet its residual target.
    #[error(
        "bisection did not converge: bracket [{lo}, {hi}], residual {residual:.3e} \
         after {iterations} iterations"
    )]
    BisectionNoConvergence {
        lo: f64,
        hi: f64,
        residual: f64,
        iterations: usize,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for [`Error::Input`] with a formatted message.
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// Shorthand for [`Error::Domain`] with a formatted message.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by state constructors, generators, solvers, and the
/// sweep/CSV front end.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix failed the density-matrix invariants
    /// (Hermiticity, unit trace, positive semidefiniteness).
    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    /// Matrix dimensions incompatible with the requested operation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A scalar argument outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The closed-form population propagator degenerates when one of the
    /// two bath rates vanishes (|ωβ_B| = ∞); integrate numerically instead.
    #[error("degenerate rates: {0}")]
    DegenerateRates(String),

    /// A numerical procedure failed to produce a usable result.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Fixed-step integration became unstable (trace drift or an
    /// unphysical intermediate state); reduce the step size.
    #[error("integrator instability: {0}")]
    Instability(String),

    /// Invalid sweep configuration, grid, or config-file contents.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

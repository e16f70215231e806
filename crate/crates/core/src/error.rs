//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong while building or combining domain objects.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("vector norm {norm} differs from 1 beyond {tol:.0e}")]
    NotUnitNorm { norm: f64, tol: f64 },

    #[error("cannot normalize a (near-)zero vector")]
    ZeroVector,

    #[error("matrix is not Hermitian: max |A - A^dag| entry = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not a rank-1 projector: {reason}")]
    NotProjector { reason: String },

    #[error("operator is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("trace {trace} differs from 1 beyond {tol:.0e}")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("POVM elements do not sum to the identity: operator-norm residual {residual:.3e}")]
    IncompletePovm { residual: f64 },

    #[error("POVM element {index} is not rank-1: secondary eigenvalue {secondary:.3e}")]
    NotRankOne { index: usize, secondary: f64 },

    #[error("POVM element {index} has vanishing weight; its direction is undefined")]
    ZeroWeightElement { index: usize },

    #[error("probabilities sum to {sum}, expected 1 within {tol:.0e}")]
    ProbabilitiesNotNormalized { sum: f64, tol: f64 },

    #[error("negative probability {value:.3e} at index {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("length mismatch: {left} states vs {right} probabilities")]
    LengthMismatch { left: usize, right: usize },

    #[error("outcome count mismatch: {povm} POVM elements vs {strategy} resend states")]
    OutcomeCountMismatch { povm: usize, strategy: usize },

    #[error("ensemble map increases trace: apply(I) has trace {trace} > dim {dim}")]
    TraceIncreasing { trace: f64, dim: usize },

    #[error("{0} is not prime; complete MUB sets are only constructed for prime dimensions here")]
    DimensionNotPrime(usize),

    #[error("SIC ensemble is not certified: overlap residual {residual:.3e} exceeds {tol:.0e}")]
    UncertifiedSic { residual: f64, tol: f64 },

    #[error("inconsistent SIC probabilities: {reason}")]
    InconsistentProbabilities { reason: String },

    #[error("candidate ensemble has {found} states; the decomposition check admits at most {max}")]
    TooManyStates { found: usize, max: usize },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

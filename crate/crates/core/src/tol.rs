//! Numerical tolerances used across the crate.
//!
//! All dense problems here live in dimension <= ~100 and are far from
//! conditioning limits, so the thresholds below are generous relative to
//! f64 round-off while still tight enough to catch genuine defects.

/// Entrywise deviation allowed between a matrix and its conjugate transpose.
pub const HERMITICITY: f64 = 1e-12;

/// Deviation of a state vector's Euclidean norm from 1.
pub const UNIT_NORM: f64 = 1e-12;

/// Structural validation: projector idempotency and trace, density-operator
/// positivity and trace, POVM positivity and completeness.
pub const STRUCTURAL: f64 = 1e-10;

/// Deviation of a probability vector's sum from 1 (in-memory objects).
pub const PROB_SUM: f64 = 1e-12;

/// Operator-norm residual below which two linear maps are declared equal.
pub const MAP_EQUALITY: f64 = 1e-10;

/// Pairwise-overlap residual below which a SIC ensemble is certified.
pub const SIC_CERTIFICATION: f64 = 1e-9;

/// Tolerance on the forced weights/overlaps extracted by the d^2-decomposition
/// check. Looser than `MAP_EQUALITY` to leave error-propagation headroom.
pub const THEOREM5_CONCLUSION: f64 = 1e-9;

/// Positivity slack when rebuilding a density operator from measured
/// probabilities; beyond this the probabilities are declared inconsistent.
pub const RECONSTRUCTION_PSD: f64 = 1e-8;

/// Validation threshold for POVMs assembled by the numerical search.
pub const SEARCH_POVM: f64 = 1e-8;

/// Margin against the 2/(d+1) lower bound when sanity-checking optimizer
/// output: anything below the bound by more than this is an internal bug.
pub const LOWER_BOUND_MARGIN: f64 = 1e-6;

/// Fidelity values may exceed 1 by at most this much (accumulated round-off).
pub const FIDELITY_SLACK: f64 = 1e-9;

/// Relative rank cutoff for Gram-matrix eigenvalues.
pub const GRAM_RANK: f64 = 1e-8;

/// Second Schmidt coefficient above which a bipartite pure state counts
/// as entangled.
pub const SCHMIDT: f64 = 1e-10;

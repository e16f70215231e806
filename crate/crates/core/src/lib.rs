//! Eavesdropping fidelities of quantum signal ensembles.
//!
//! An intercept-resend eavesdropper measures each transmitted pure state and
//! forwards a substitute keyed to the outcome. This crate computes how well
//! she can do — the average, achievable, and accessible fidelity of a signal
//! ensemble — and verifies numerically that the hardest ensembles on a
//! d-dimensional space pin her at exactly `2/(d+1)`:
//!
//! * [`operators`] — dense complex operator algebra: states, projectors,
//!   POVMs, spectra, tensor products, Haar sampling;
//! * [`ensembles`] — signal ensembles, the conjugation (ensemble) map, the
//!   fidelity functionals, optimal and projective resend strategies;
//! * [`structured_states`] — SIC ensembles from Weyl-Heisenberg fiducials,
//!   complete MUB sets in prime dimension, the closed-form map identities,
//!   state reconstruction from SIC outcome statistics;
//! * [`optimization`] — accessible-fidelity search over POVMs, fiducial
//!   search by frame-potential minimization, Haar Monte Carlo;
//! * [`composite`] — product ensembles and the entanglement gap on
//!   bipartite spaces.
//!
//! All results are deterministic for a fixed seed: stochastic operations
//! take explicit 64-bit seeds and split counter-derived streams per work
//! unit, so thread count never changes an answer.

pub mod composite;
pub mod ensembles;
pub mod error;
pub mod operators;
pub mod optimization;
pub mod rng;
pub mod structured_states;
pub mod tol;

pub use error::{Error, Result};

/// The minimum accessible fidelity any signal ensemble on a d-dimensional
/// space can force on the eavesdropper: `2/(d+1)`.
pub fn quantumness(dim: usize) -> f64 {
    assert!(dim >= 1, "dimension must be positive");
    2.0 / (dim as f64 + 1.0)
}

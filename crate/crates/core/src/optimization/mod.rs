//! Numerical search and Monte Carlo: accessible-fidelity maximization over
//! POVMs, SIC fiducial search by frame-potential minimization, and the
//! Haar-average verification of the `2/(d+1)` lower bound.

pub mod fiducial;
pub mod monte_carlo;
pub mod povm_search;

pub use fiducial::{find_fiducial, frame_potential, FiducialSearchConfig, FiducialSearchReport};
pub use monte_carlo::{
    haar_average_fidelity, haar_integral_closed_form, haar_integral_factorial_form,
    MonteCarloConfig,
};
pub use povm_search::{
    accessible_fidelity_search, povm_from_vectors, random_rank_one_povm, PovmSearchConfig,
    PovmSearchOutcome, RestartTrace,
};

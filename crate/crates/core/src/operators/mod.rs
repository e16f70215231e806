//! Dense complex operator algebra on a d-dimensional Hilbert space:
//! states, projectors, POVMs, spectra, tensor products, Haar sampling.
//!
//! Everything here is immutable after construction and safe to share across
//! threads; stochastic samplers take an explicit generator.

pub mod haar;
pub mod matrix;
pub mod povm;
pub mod state;

pub use haar::{
    complex_gaussian_matrix, complex_gaussian_vector, haar_random_projective, haar_random_state,
    haar_random_unitary, haar_random_von_neumann, random_density, random_hermitian,
};
pub use matrix::{hs_inner, tensor, HermitianOperator, Spectrum};
pub use povm::{validate_povm_elements, Povm, PovmValidation, RankOnePovmElement};
pub use state::{DensityOperator, Projector, PureState};

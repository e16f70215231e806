//! Construction and certification of structured signal ensembles: SIC
//! configurations from Weyl-Heisenberg fiducials, complete MUB sets in
//! prime dimension, the closed-form conjugation map, and the
//! decomposition-uniqueness check.

pub mod mub;
pub mod sic;
pub mod weyl;

pub use mub::{is_prime, mub_construct, mub_ensemble, MubCollection};
pub use sic::{
    depolarizing_consistency, phi_closed_form, purity_from_probabilities, reconstruct_density,
    sic_from_fiducial, sic_overlap_target, sic_probabilities, theorem5_check, verify_sic, PhiMap,
    SicCertificate, SicEnsemble, SicProbabilities, SpanningDefect, Theorem5Report,
};
pub use weyl::{clock_operator, shift_operator, wh_displacement, WeylHeisenbergIndex};

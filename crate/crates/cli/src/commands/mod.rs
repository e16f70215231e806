//! Command implementations and the exit-code contract.
//!
//! Exit codes: 0 success, 1 usage or file-format problems, 2 verification
//! failure, 3 search failure. Every stochastic command either receives
//! `--seed` or draws one from entropy and prints it, so any run can be
//! reproduced exactly.

pub mod fidelity;
pub mod gap;
pub mod mub;
pub mod quantumness;
pub mod sic;

use qlab_core::operators::state::{Projector, PureState};
use qlab_core::optimization::{find_fiducial, FiducialSearchConfig};
use qlab_core::structured_states::{sic_from_fiducial, SicEnsemble};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Search(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Search(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Search(m) => m,
        }
    }
}

pub fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

pub fn kv(label: &str, value: impl std::fmt::Display) {
    println!("{label} = {value}");
}

/// A certified SIC ensemble for the given dimension: trivial for `d = 1`,
/// searched otherwise.
pub fn sic_for_dim(
    dim: usize,
    n_restarts: Option<usize>,
    max_iters: Option<usize>,
    seed: u64,
) -> Result<SicEnsemble, CliError> {
    if dim == 1 {
        return Ok(sic_from_fiducial(&PureState::basis_state(1, 0)));
    }
    let mut cfg = FiducialSearchConfig::new(dim);
    cfg.seed = seed;
    if let Some(r) = n_restarts {
        cfg.n_restarts = r;
    }
    if let Some(m) = max_iters {
        cfg.max_iters = m;
    }
    let report = find_fiducial(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    if !report.succeeded {
        return Err(CliError::Search(format!(
            "fiducial search failed in d = {dim}: best frame potential {:.3e} \
             (overlap residual {:.3e}) after {} restarts",
            report.potential,
            report.ensemble.overlap_residual(),
            report.restarts_used
        )));
    }
    Ok(report.ensemble)
}

/// Uniform signal ensemble used by verification commands when one is needed
/// for a given dimension: MUB when prime, SIC otherwise, trivial for d = 1.
pub fn verification_ensemble(
    dim: usize,
    seed: u64,
) -> Result<(&'static str, qlab_core::ensembles::Ensemble), CliError> {
    if dim == 1 {
        let state = Projector::from_state(&PureState::basis_state(1, 0));
        return Ok((
            "single-state",
            qlab_core::ensembles::Ensemble::single(state),
        ));
    }
    if qlab_core::structured_states::is_prime(dim) {
        let mub = qlab_core::structured_states::mub_construct(dim)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(("mub", qlab_core::structured_states::mub_ensemble(&mub)));
    }
    Ok((
        "sic",
        sic_for_dim(dim, None, None, seed)?.ensemble().clone(),
    ))
}

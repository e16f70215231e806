//! Accessible-fidelity maximization over rank-1 POVMs.
//!
//! A POVM with `n` rank-1 elements is parameterized by `n` unnormalized
//! vectors `v_b`: with `A = sum_b v_b v_b^dag`, the elements
//! `E_b = A^{-1/2} v_b v_b^dag A^{-1/2}` are complete by construction, so the
//! constrained problem becomes unconstrained ascent over the vectors.
//!
//! The ascent itself is a see-saw: with the measurement fixed, the optimal
//! resend states are the top eigenvectors of the mapped elements (that step
//! is exact); with the resends fixed, the measurement is pushed along the
//! fixed-point update `v_b <- R_b v_b` of the discrimination-style operators
//! `R_b` and re-completed. The objective `sum_b lambda_1(Psi(E_b))` is convex
//! in the POVM, so accepting only strict improvements cannot cycle, and the
//! recorded per-restart values are non-decreasing. Every value is a certified
//! lower bound on the accessible fidelity.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::ensembles::{achievable_fidelity, Ensemble, FidelityReport};
use crate::error::{Error, Result};
use crate::operators::haar::complex_gaussian_vector;
use crate::operators::matrix::HermitianOperator;
use crate::operators::povm::Povm;
use crate::rng;
use crate::tol;

/// Budget and seed for [`accessible_fidelity_search`].
#[derive(Debug, Clone, Copy)]
pub struct PovmSearchConfig {
    /// Number of rank-1 outcomes; `d^2` matches all known optimal
    /// structures and is the default.
    pub n_outcomes: usize,
    pub n_restarts: usize,
    pub max_iters: usize,
    /// Stop a restart once an iteration improves the value by less than this.
    pub tol: f64,
    pub seed: u64,
}

impl PovmSearchConfig {
    pub fn for_dim(dim: usize) -> Self {
        Self {
            n_outcomes: dim * dim,
            n_restarts: 24,
            max_iters: 500,
            tol: 1e-12,
            seed: 0,
        }
    }
}

/// Completes a family of vectors into a rank-1 POVM:
/// `E_b = A^{-1/2} v_b v_b^dag A^{-1/2}` with `A = sum_b v_b v_b^dag`.
pub fn povm_from_vectors(vectors: &[DVector<Complex64>]) -> Result<Povm> {
    let completed = complete_family(vectors).ok_or_else(|| {
        Error::InvalidConfig("vectors do not span the space; no completion exists".into())
    })?;
    let elements = completed.iter().map(HermitianOperator::outer).collect();
    Povm::with_tolerance(elements, tol::SEARCH_POVM)
}

/// A random complete rank-1 POVM with `n_outcomes` elements: the completion
/// of independent complex-Gaussian vectors.
pub fn random_rank_one_povm<R: rand::Rng + ?Sized>(
    dim: usize,
    n_outcomes: usize,
    rng: &mut R,
) -> Result<Povm> {
    if n_outcomes < dim {
        return Err(Error::InvalidConfig(format!(
            "{n_outcomes} rank-1 outcomes cannot resolve the identity in dimension {dim}"
        )));
    }
    let vectors: Vec<DVector<Complex64>> = (0..n_outcomes)
        .map(|_| complex_gaussian_vector(dim, rng))
        .collect();
    povm_from_vectors(&vectors)
}

/// `A^{-1/2} v_b` for every vector, or `None` when the family does not span.
fn complete_family(vectors: &[DVector<Complex64>]) -> Option<Vec<DVector<Complex64>>> {
    let dim = vectors.first()?.len();
    let mut a = DMatrix::<Complex64>::zeros(dim, dim);
    for v in vectors {
        a += v * v.adjoint();
    }
    let eig = HermitianOperator::from_hermitian_parts(a).eigh();
    let max = eig.max();
    if max <= 0.0 || eig.min() < 1e-12 * max {
        return None;
    }
    let mut inv_sqrt = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 0..dim {
        let u = eig.vector(k);
        inv_sqrt += &u * u.adjoint() * Complex64::from(1.0 / eig.values()[k].sqrt());
    }
    Some(vectors.iter().map(|v| &inv_sqrt * v).collect())
}

/// Dense `sum_i pi_i |<psi_i|v>|^2 P_i` — the ensemble map applied to
/// `v v^dag` using the rank-1 structure of both sides.
fn mapped_outer(p: &Ensemble, v: &DVector<Complex64>) -> HermitianOperator {
    let mut acc = DMatrix::<Complex64>::zeros(p.dim(), p.dim());
    for (state, &prob) in p.states().iter().zip(p.probs()) {
        let coeff = prob * state.direction().amplitudes().dotc(v).norm_sqr();
        acc += state.as_operator().entries() * Complex64::from(coeff);
    }
    HermitianOperator::from_hermitian_parts(acc)
}

/// Objective value and optimal resend directions for a completed family.
fn value_and_resends(
    p: &Ensemble,
    family: &[DVector<Complex64>],
) -> (f64, Vec<DVector<Complex64>>) {
    let mut value = 0.0;
    let mut resends = Vec::with_capacity(family.len());
    for w in family {
        let (top, vector) = mapped_outer(p, w).eigh().top();
        value += top;
        resends.push(vector);
    }
    (value, resends)
}

/// Progress of one restart: the objective value after the initial completion
/// and after every accepted iteration. Non-decreasing by construction.
#[derive(Debug, Clone)]
pub struct RestartTrace {
    pub restart: usize,
    pub values: Vec<f64>,
    /// True when the restart stopped by converging rather than by running
    /// out of iterations or losing the spanning property.
    pub converged: bool,
}

/// Search result: the best lower bound found, the measurement attaining it,
/// and per-restart diagnostics.
#[derive(Debug, Clone)]
pub struct PovmSearchOutcome {
    pub report: FidelityReport,
    pub povm: Povm,
    pub traces: Vec<RestartTrace>,
    pub best_restart: usize,
}

struct RestartResult {
    trace: RestartTrace,
    family: Option<Vec<DVector<Complex64>>>,
    value: f64,
}

fn run_restart(p: &Ensemble, cfg: &PovmSearchConfig, restart: usize) -> RestartResult {
    let dim = p.dim();
    let mut stream = rng::substream(cfg.seed, 1 + restart as u64);
    let raw: Vec<DVector<Complex64>> = (0..cfg.n_outcomes)
        .map(|_| complex_gaussian_vector(dim, &mut stream))
        .collect();
    let Some(mut family) = complete_family(&raw) else {
        return RestartResult {
            trace: RestartTrace {
                restart,
                values: Vec::new(),
                converged: false,
            },
            family: None,
            value: f64::NEG_INFINITY,
        };
    };

    let (mut value, mut resends) = value_and_resends(p, &family);
    let mut values = vec![value];
    let mut converged = false;

    for _ in 0..cfg.max_iters {
        // measurement update: push each vector along its discrimination
        // operator R_b built from the current resends, then re-complete
        let mut pushed = Vec::with_capacity(family.len());
        for (w, sigma) in family.iter().zip(&resends) {
            let r_b = mapped_outer(p, sigma);
            pushed.push(r_b.entries() * w);
        }
        let Some(candidate) = complete_family(&pushed) else {
            break;
        };
        let (candidate_value, candidate_resends) = value_and_resends(p, &candidate);
        if candidate_value <= value + cfg.tol {
            if candidate_value > value {
                family = candidate;
                value = candidate_value;
                values.push(value);
            }
            converged = true;
            break;
        }
        family = candidate;
        value = candidate_value;
        resends = candidate_resends;
        values.push(value);
    }

    RestartResult {
        trace: RestartTrace {
            restart,
            values,
            converged,
        },
        family: Some(family),
        value,
    }
}

/// Multi-restart see-saw maximization of `sum_b lambda_1(Psi(E_b))` over
/// POVMs with `cfg.n_outcomes` rank-1 elements.
///
/// Returns the best value found — a lower bound on the accessible fidelity,
/// recomputed through [`achievable_fidelity`] on the assembled measurement —
/// together with that measurement and the per-restart traces. Restarts use
/// counter-derived streams and are reduced in restart order, so the outcome
/// does not depend on thread count.
pub fn accessible_fidelity_search(
    p: &Ensemble,
    cfg: &PovmSearchConfig,
) -> Result<PovmSearchOutcome> {
    let dim = p.dim();
    if cfg.n_outcomes < dim {
        return Err(Error::InvalidConfig(format!(
            "{} rank-1 outcomes cannot resolve the identity in dimension {dim}",
            cfg.n_outcomes
        )));
    }
    if cfg.n_restarts == 0 {
        return Err(Error::InvalidConfig("at least one restart required".into()));
    }
    if cfg.tol <= 0.0 {
        return Err(Error::InvalidConfig("tol must be positive".into()));
    }

    let results: Vec<RestartResult> = (0..cfg.n_restarts)
        .into_par_iter()
        .map(|restart| run_restart(p, cfg, restart))
        .collect();

    let mut best: Option<usize> = None;
    for (k, r) in results.iter().enumerate() {
        if r.family.is_some() && best.map(|b| r.value > results[b].value).unwrap_or(true) {
            best = Some(k);
        }
    }
    let best = best
        .ok_or_else(|| Error::InvalidConfig("no restart produced a spanning measurement".into()))?;

    let family = results[best].family.as_ref().expect("selected above");
    let elements = family.iter().map(HermitianOperator::outer).collect();
    let povm = Povm::with_tolerance(elements, tol::SEARCH_POVM)?;
    let value = achievable_fidelity(p, &povm)?.value();
    let report = FidelityReport::optimizer(
        value,
        format!(
            "see-saw ascent (lower bound on the accessible fidelity): \
             {} outcomes, {} restarts, best restart {}, seed {}",
            cfg.n_outcomes, cfg.n_restarts, results[best].trace.restart, cfg.seed
        ),
    );
    Ok(PovmSearchOutcome {
        report,
        povm,
        traces: results.into_iter().map(|r| r.trace).collect(),
        best_restart: best,
    })
}

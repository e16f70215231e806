//! Signal ensembles, the ensemble map, the fidelity functionals, and
//! reconstruction strategies.
//!
//! An intercept-resend eavesdropper measures each signal with a POVM
//! `{E_b}` and retransmits a state `sigma_b` keyed to the outcome. Her
//! probability of going unnoticed is the average fidelity; optimizing over
//! resend strategies gives the achievable fidelity, which reduces to a sum
//! of top eigenvalues of the mapped POVM elements.

use rand::Rng;

use crate::error::{Error, Result};
use crate::operators::haar::random_hermitian;
use crate::operators::matrix::{hermitian_basis, HermitianOperator};
use crate::operators::povm::Povm;
use crate::operators::state::{DensityOperator, Projector};
use crate::tol;

/// A finite collection of pure signal states with prior probabilities.
#[derive(Debug, Clone)]
pub struct Ensemble {
    dim: usize,
    states: Vec<Projector>,
    probs: Vec<f64>,
}

impl Ensemble {
    /// Validates lengths, shared dimension, nonnegativity, and unit sum of
    /// the probabilities. Repeated states are allowed and kept as-is.
    pub fn new(states: Vec<Projector>, probs: Vec<f64>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if states.len() != probs.len() {
            return Err(Error::LengthMismatch {
                left: states.len(),
                right: probs.len(),
            });
        }
        let dim = states[0].dim();
        for s in &states {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
        }
        for (index, &p) in probs.iter().enumerate() {
            if p < 0.0 {
                return Err(Error::NegativeProbability { index, value: p });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol::PROB_SUM {
            return Err(Error::ProbabilitiesNotNormalized {
                sum,
                tol: tol::PROB_SUM,
            });
        }
        Ok(Self { dim, states, probs })
    }

    /// Uniform probabilities `1/n` over the given states.
    pub fn uniform(states: Vec<Projector>) -> Result<Self> {
        let n = states.len();
        Self::new(states, vec![1.0 / n as f64; n])
    }

    /// The one-state ensemble.
    pub fn single(state: Projector) -> Self {
        Self {
            dim: state.dim(),
            states: vec![state],
            probs: vec![1.0],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Projector] {
        &self.states
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// The ensemble map `X -> sum_i pi_i P_i X P_i` of this ensemble.
    pub fn map(&self) -> EnsembleMap {
        EnsembleMap {
            dim: self.dim,
            terms: self
                .probs
                .iter()
                .zip(&self.states)
                .map(|(&w, p)| (w, p.clone()))
                .collect(),
        }
    }
}

/// A completely positive map given by weighted rank-1 conjugations,
/// `X -> sum_i w_i P_i X P_i` with `w_i >= 0`.
#[derive(Debug, Clone)]
pub struct EnsembleMap {
    dim: usize,
    terms: Vec<(f64, Projector)>,
}

impl EnsembleMap {
    /// Validates weights and the trace-nonincreasing property
    /// (`tr apply(I) = sum_i w_i <= dim`).
    pub fn new(terms: Vec<(f64, Projector)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let dim = terms[0].1.dim();
        let mut weight_sum = 0.0;
        for (index, (w, p)) in terms.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if *w < 0.0 {
                return Err(Error::NegativeProbability { index, value: *w });
            }
            weight_sum += w;
        }
        if weight_sum > dim as f64 + tol::STRUCTURAL {
            return Err(Error::TraceIncreasing {
                trace: weight_sum,
                dim,
            });
        }
        Ok(Self { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(f64, Projector)] {
        &self.terms
    }

    /// Applies the map: `sum_i w_i <psi_i|X|psi_i> P_i`.
    ///
    /// Each conjugation by a rank-1 projector collapses to a quadratic form,
    /// so the cost is `O(terms * dim^2)`.
    pub fn apply(&self, x: &HermitianOperator) -> Result<HermitianOperator> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        let mut acc = nalgebra::DMatrix::zeros(self.dim, self.dim);
        for (w, p) in &self.terms {
            let c = w * p.direction().expectation(x);
            acc += p.as_operator().entries() * num_complex::Complex64::from(c);
        }
        Ok(HermitianOperator::from_hermitian_parts(acc))
    }
}

/// Anything acting linearly on Hermitian operators; lets conjugation-sum
/// maps be compared against closed forms.
pub trait OperatorMap {
    fn dim(&self) -> usize;
    fn apply(&self, x: &HermitianOperator) -> Result<HermitianOperator>;
}

impl OperatorMap for EnsembleMap {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &HermitianOperator) -> Result<HermitianOperator> {
        EnsembleMap::apply(self, x)
    }
}

/// Outcome of comparing two linear maps on a spanning operator basis.
#[derive(Debug, Clone, Copy)]
pub struct MapComparison {
    pub equal: bool,
    pub max_residual: f64,
}

/// Largest operator-norm residual of `a - b` over the spanning Hermitian
/// basis. Zero (up to round-off) iff the linear maps coincide.
pub fn map_residual_on_basis<A, B>(a: &A, b: &B) -> Result<f64>
where
    A: OperatorMap + ?Sized,
    B: OperatorMap + ?Sized,
{
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let mut max_residual: f64 = 0.0;
    for x in hermitian_basis(a.dim()) {
        let ya = a.apply(&x)?;
        let yb = b.apply(&x)?;
        max_residual = max_residual.max((&ya - &yb).operator_norm());
    }
    Ok(max_residual)
}

/// Decides equality of two linear maps on Hermitian operators.
///
/// The maps are applied to all `dim^2` elements of [`hermitian_basis`] —
/// which decides equality exactly for linear maps — plus `n_probes` random
/// Hermitian probes of unit operator norm as redundancy. Equal iff the
/// largest operator-norm residual stays below [`tol::MAP_EQUALITY`].
pub fn maps_equal<A, B, R>(a: &A, b: &B, n_probes: usize, rng: &mut R) -> Result<MapComparison>
where
    A: OperatorMap + ?Sized,
    B: OperatorMap + ?Sized,
    R: Rng + ?Sized,
{
    let mut max_residual = map_residual_on_basis(a, b)?;
    let dim = a.dim();
    for _ in 0..n_probes {
        let h = random_hermitian(dim, rng);
        let norm = h.operator_norm();
        if norm < 1e-12 {
            continue;
        }
        let x = h.scaled(1.0 / norm);
        let ya = a.apply(&x)?;
        let yb = b.apply(&x)?;
        max_residual = max_residual.max((&ya - &yb).operator_norm());
    }
    Ok(MapComparison {
        equal: max_residual < tol::MAP_EQUALITY,
        max_residual,
    })
}

/// Map from measurement outcomes to resend states.
#[derive(Debug, Clone)]
pub struct ReconstructionStrategy {
    outputs: Vec<DensityOperator>,
}

impl ReconstructionStrategy {
    pub fn new(outputs: Vec<DensityOperator>) -> Result<Self> {
        if outputs.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let dim = outputs[0].dim();
        for o in &outputs {
            if o.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: o.dim(),
                });
            }
        }
        Ok(Self { outputs })
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    pub fn outputs(&self) -> &[DensityOperator] {
        &self.outputs
    }

    pub fn dim(&self) -> usize {
        self.outputs[0].dim()
    }
}

/// How a fidelity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FidelityMethod {
    Formula,
    Optimizer,
    MonteCarlo,
}

impl std::fmt::Display for FidelityMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FidelityMethod::Formula => "formula",
            FidelityMethod::Optimizer => "optimizer",
            FidelityMethod::MonteCarlo => "monte_carlo",
        })
    }
}

/// A fidelity value in `[0, 1]` with provenance and, for Monte Carlo
/// estimates, a standard error.
#[derive(Debug, Clone)]
pub struct FidelityReport {
    value: f64,
    method: FidelityMethod,
    stderr: Option<f64>,
    meta: String,
}

impl FidelityReport {
    fn checked(value: f64, method: FidelityMethod, stderr: Option<f64>, meta: String) -> Self {
        assert!(
            value.is_finite()
                && (-tol::FIDELITY_SLACK..=1.0 + tol::FIDELITY_SLACK).contains(&value),
            "fidelity {value} outside [0, 1] beyond slack: internal bug"
        );
        Self {
            value: value.clamp(0.0, 1.0),
            method,
            stderr,
            meta,
        }
    }

    pub fn formula(value: f64, meta: impl Into<String>) -> Self {
        Self::checked(value, FidelityMethod::Formula, None, meta.into())
    }

    pub fn optimizer(value: f64, meta: impl Into<String>) -> Self {
        Self::checked(value, FidelityMethod::Optimizer, None, meta.into())
    }

    pub fn monte_carlo(value: f64, stderr: f64, meta: impl Into<String>) -> Self {
        assert!(stderr >= 0.0, "standard error must be nonnegative");
        Self::checked(value, FidelityMethod::MonteCarlo, Some(stderr), meta.into())
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn method(&self) -> FidelityMethod {
        self.method
    }

    /// Present exactly when `method` is Monte Carlo.
    pub fn stderr(&self) -> Option<f64> {
        self.stderr
    }

    pub fn meta(&self) -> &str {
        &self.meta
    }
}

fn check_dims(p: &Ensemble, e: &Povm) -> Result<()> {
    if p.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: e.dim(),
        });
    }
    Ok(())
}

/// Probability that the eavesdropper goes unnoticed:
/// `sum_{b,i} pi_i tr(P_i E_b) tr(P_i sigma_b)`.
pub fn average_fidelity(
    p: &Ensemble,
    e: &Povm,
    m: &ReconstructionStrategy,
) -> Result<FidelityReport> {
    check_dims(p, e)?;
    if e.len() != m.len() {
        return Err(Error::OutcomeCountMismatch {
            povm: e.len(),
            strategy: m.len(),
        });
    }
    if m.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: m.dim(),
        });
    }
    let mut value = 0.0;
    for (element, resend) in e.elements().iter().zip(m.outputs()) {
        for (state, &prob) in p.states().iter().zip(p.probs()) {
            let detect = state.direction().expectation(element);
            let reproduce = state.direction().expectation(resend.as_operator());
            value += prob * detect * reproduce;
        }
    }
    Ok(FidelityReport::formula(
        value,
        format!("average fidelity: {} states, {} outcomes", p.len(), e.len()),
    ))
}

/// Best average fidelity over all resend strategies at fixed measurement:
/// `sum_b lambda_1(Psi(E_b))`.
pub fn achievable_fidelity(p: &Ensemble, e: &Povm) -> Result<FidelityReport> {
    check_dims(p, e)?;
    let map = p.map();
    let mut value = 0.0;
    for element in e.elements() {
        // zero elements contribute lambda_1(0) = 0
        value += map.apply(element)?.largest_eigenvalue();
    }
    Ok(FidelityReport::formula(
        value,
        format!(
            "achievable fidelity: {} states, {} outcomes",
            p.len(),
            e.len()
        ),
    ))
}

/// The strategy attaining the achievable fidelity: per outcome, resend the
/// projector onto a top eigenvector of `Psi(E_b)`.
pub fn optimal_reconstruction(p: &Ensemble, e: &Povm) -> Result<ReconstructionStrategy> {
    check_dims(p, e)?;
    let map = p.map();
    let mut outputs = Vec::with_capacity(e.len());
    for element in e.elements() {
        let (_, top) = map.apply(element)?.largest_eigenpair();
        outputs.push(DensityOperator::from_state(&top));
    }
    ReconstructionStrategy::new(outputs)
}

/// The simple strategy for rank-1 measurements: resend the normalized
/// direction of the element that fired.
///
/// Fails on outcomes whose direction is undefined (zero weight) or whose
/// element is not rank-1.
pub fn projective_reproduction(e: &Povm) -> Result<ReconstructionStrategy> {
    let outputs = e
        .rank_one_elements()?
        .iter()
        .map(|el| DensityOperator::from_state(el.direction()))
        .collect();
    ReconstructionStrategy::new(outputs)
}

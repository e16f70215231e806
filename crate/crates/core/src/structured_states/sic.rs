//! Symmetric informationally complete ensembles and the map identities
//! they satisfy.
//!
//! A SIC configuration is a set of `d^2` unit vectors with all pairwise
//! squared overlaps equal to `1/(d+1)`. Here such sets are generated as
//! Weyl-Heisenberg orbits of a single fiducial vector, which is how every
//! known numerical solution arises; the orbit reduces the search space to
//! one state.

use crate::ensembles::{map_residual_on_basis, Ensemble, OperatorMap};
use crate::error::{Error, Result};
use crate::operators::matrix::{hs_inner, HermitianOperator};
use crate::operators::povm::Povm;
use crate::operators::state::{DensityOperator, Projector, PureState};
use crate::structured_states::weyl::{wh_displacement, WeylHeisenbergIndex};
use crate::tol;

/// Target pairwise squared overlap of a SIC configuration in dimension `d`.
pub fn sic_overlap_target(dim: usize) -> f64 {
    1.0 / (dim as f64 + 1.0)
}

/// The Weyl-Heisenberg orbit of a fiducial state, packaged as a uniform
/// ensemble over `d^2` projectors.
///
/// Construction never fails: a poor fiducial simply yields a large
/// `overlap_residual`, which keeps the type usable for search diagnostics.
#[derive(Debug, Clone)]
pub struct SicEnsemble {
    base: Ensemble,
    fiducial: PureState,
    overlap_residual: f64,
}

impl SicEnsemble {
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn ensemble(&self) -> &Ensemble {
        &self.base
    }

    pub fn fiducial(&self) -> &PureState {
        &self.fiducial
    }

    /// Largest deviation of a pairwise squared overlap from `1/(d+1)`.
    pub fn overlap_residual(&self) -> f64 {
        self.overlap_residual
    }

    /// Certified means every pairwise overlap sits within
    /// [`tol::SIC_CERTIFICATION`] of the target.
    pub fn is_certified(&self) -> bool {
        self.overlap_residual <= tol::SIC_CERTIFICATION
    }

    fn require_certified(&self) -> Result<()> {
        if self.is_certified() {
            Ok(())
        } else {
            Err(Error::UncertifiedSic {
                residual: self.overlap_residual,
                tol: tol::SIC_CERTIFICATION,
            })
        }
    }

    /// The measurement `{P_i / d}` built from the same states.
    pub fn povm(&self) -> Povm {
        let d = self.dim() as f64;
        let elements = self
            .base
            .states()
            .iter()
            .map(|p| p.as_operator().scaled(1.0 / d))
            .collect();
        Povm::new(elements).expect("orbit projectors scaled by 1/d sum to the identity")
    }
}

/// Applies all `d^2` displacements to the fiducial and forms the uniform
/// ensemble, recording the worst pairwise-overlap deviation.
pub fn sic_from_fiducial(fiducial: &PureState) -> SicEnsemble {
    let d = fiducial.dim();
    let states: Vec<Projector> = WeylHeisenbergIndex::all(d)
        .iter()
        .map(|idx| {
            let moved = wh_displacement(idx) * fiducial.amplitudes();
            Projector::from_state(
                &PureState::normalized(moved).expect("unitaries preserve the norm"),
            )
        })
        .collect();
    let target = sic_overlap_target(d);
    let mut overlap_residual: f64 = 0.0;
    for i in 0..states.len() {
        for j in 0..i {
            overlap_residual = overlap_residual.max((states[i].overlap(&states[j]) - target).abs());
        }
    }
    SicEnsemble {
        base: Ensemble::uniform(states).expect("uniform probabilities are valid"),
        fiducial: fiducial.clone(),
        overlap_residual,
    }
}

/// Closed form of the SIC conjugation map:
/// `Phi(X) = ((tr X) I + X) / (d (d+1))`.
pub fn phi_closed_form(x: &HermitianOperator) -> HermitianOperator {
    let d = x.dim() as f64;
    (&HermitianOperator::identity(x.dim()).scaled(x.trace()) + x).scaled(1.0 / (d * (d + 1.0)))
}

/// The closed-form map as a comparable [`OperatorMap`].
#[derive(Debug, Clone, Copy)]
pub struct PhiMap {
    dim: usize,
}

impl PhiMap {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self { dim }
    }
}

impl OperatorMap for PhiMap {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &HermitianOperator) -> Result<HermitianOperator> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(phi_closed_form(x))
    }
}

/// Certificate produced by [`verify_sic`].
#[derive(Debug, Clone, Copy)]
pub struct SicCertificate {
    pub dim: usize,
    /// Recomputed max deviation of pairwise squared overlaps from `1/(d+1)`.
    pub overlap_residual: f64,
    /// Rank of the `d^2 x d^2` Gram matrix of the projectors.
    pub gram_rank: usize,
    /// Residual of the conjugation map against the closed form.
    pub map_residual: f64,
    /// Overlaps within [`tol::SIC_CERTIFICATION`] and Gram rank full.
    pub pass: bool,
}

/// Independently certifies a candidate SIC: recomputes all pairwise
/// overlaps, checks linear independence through the Gram-matrix rank, and
/// compares the conjugation map against the closed form on a spanning basis.
pub fn verify_sic(s: &SicEnsemble) -> SicCertificate {
    let dim = s.dim();
    let states = s.ensemble().states();
    let n = states.len();
    let target = sic_overlap_target(dim);

    let mut overlap_residual: f64 = 0.0;
    let mut gram = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let g = hs_inner(states[i].as_operator(), states[j].as_operator())
                .expect("states share the ensemble dimension");
            gram[(i, j)] = g;
            if i != j {
                overlap_residual = overlap_residual.max((g - target).abs());
            }
        }
    }
    let gram_rank = symmetric_rank(&gram);

    let map_residual = map_residual_on_basis(&s.ensemble().map(), &PhiMap::new(dim))
        .expect("dimensions match by construction");

    SicCertificate {
        dim,
        overlap_residual,
        gram_rank,
        map_residual,
        pass: overlap_residual < tol::SIC_CERTIFICATION && gram_rank == dim * dim,
    }
}

/// Rank of a real symmetric PSD matrix by eigenvalue counting, with a
/// relative cutoff.
fn symmetric_rank(m: &nalgebra::DMatrix<f64>) -> usize {
    let eigenvalues = m.clone().symmetric_eigenvalues();
    let max = eigenvalues.iter().fold(0.0_f64, |acc, &v| acc.max(v.abs()));
    if max == 0.0 {
        return 0;
    }
    eigenvalues
        .iter()
        .filter(|&&v| v.abs() > tol::GRAM_RANK * max)
        .count()
}

/// Operator-norm distance between `Phi(rho)` and the rescaled depolarizing
/// channel `(1/d) * (lambda rho + (1-lambda) I/d)` at `lambda = 1/(d+1)`.
pub fn depolarizing_consistency(rho: &DensityOperator) -> f64 {
    let d = rho.dim() as f64;
    let lambda = 1.0 / (d + 1.0);
    let depolarized = &rho.as_operator().scaled(lambda)
        + &HermitianOperator::identity(rho.dim()).scaled((1.0 - lambda) / d);
    let lhs = phi_closed_form(rho.as_operator());
    (&lhs - &depolarized.scaled(1.0 / d)).operator_norm()
}

/// Outcome distribution of the SIC measurement `{P_i / d}` on a state.
#[derive(Debug, Clone)]
pub struct SicProbabilities {
    dim: usize,
    probs: Vec<f64>,
}

impl SicProbabilities {
    /// Validates length `d^2`, nonnegativity, unit sum, and the per-outcome
    /// bound `p(i) <= 1/d` that any quantum state obeys.
    pub fn new(dim: usize, probs: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if probs.len() != dim * dim {
            return Err(Error::LengthMismatch {
                left: dim * dim,
                right: probs.len(),
            });
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol::PROB_SUM {
            return Err(Error::ProbabilitiesNotNormalized {
                sum,
                tol: tol::PROB_SUM,
            });
        }
        let cap = 1.0 / dim as f64 + tol::STRUCTURAL;
        for (index, &p) in probs.iter().enumerate() {
            if p < -tol::STRUCTURAL {
                return Err(Error::NegativeProbability { index, value: p });
            }
            if p > cap {
                return Err(Error::InconsistentProbabilities {
                    reason: format!("p({index}) = {p} exceeds 1/d"),
                });
            }
        }
        Ok(Self { dim, probs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// `p(i) = tr(rho P_i) / d` for a certified SIC.
pub fn sic_probabilities(s: &SicEnsemble, rho: &DensityOperator) -> Result<SicProbabilities> {
    s.require_certified()?;
    if rho.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: rho.dim(),
        });
    }
    let d = s.dim() as f64;
    let probs = s
        .ensemble()
        .states()
        .iter()
        .map(|p| p.direction().expectation(rho.as_operator()) / d)
        .collect();
    SicProbabilities::new(s.dim(), probs)
}

/// Rebuilds the state from its SIC outcome distribution:
/// `rho = (d+1) sum_i p(i) P_i - I`.
///
/// Fails when the probabilities are not consistent with any quantum state
/// (the rebuilt operator leaves the density cone beyond
/// [`tol::RECONSTRUCTION_PSD`]).
pub fn reconstruct_density(s: &SicEnsemble, p: &SicProbabilities) -> Result<DensityOperator> {
    s.require_certified()?;
    if p.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: p.dim(),
        });
    }
    let d = s.dim() as f64;
    let mut acc = nalgebra::DMatrix::zeros(s.dim(), s.dim());
    for (proj, &prob) in s.ensemble().states().iter().zip(p.probs()) {
        acc += proj.as_operator().entries() * num_complex::Complex64::from((d + 1.0) * prob);
    }
    acc -= nalgebra::DMatrix::<num_complex::Complex64>::identity(s.dim(), s.dim());
    let candidate = HermitianOperator::from_hermitian_parts(acc);
    DensityOperator::with_psd_tolerance(candidate, tol::RECONSTRUCTION_PSD).map_err(|e| {
        Error::InconsistentProbabilities {
            reason: e.to_string(),
        }
    })
}

/// Purity read off the SIC outcome distribution:
/// `tr(rho^2) = d (d+1) sum_h p(h)^2 - 1`.
pub fn purity_from_probabilities(p: &SicProbabilities) -> f64 {
    let d = p.dim() as f64;
    let sum_sq: f64 = p.probs().iter().map(|&x| x * x).sum();
    d * (d + 1.0) * sum_sq - 1.0
}

/// Why a candidate decomposition cannot reproduce the closed-form map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanningDefect {
    /// Fewer than `d^2` states can never span the operator space, which the
    /// closed-form map's range fills.
    TooFewStates { have: usize, need: usize },
    /// `d^2` states whose projectors are linearly dependent.
    LinearlyDependent { gram_rank: usize },
}

/// Report of the d^2-decomposition uniqueness check.
#[derive(Debug, Clone)]
pub struct Theorem5Report {
    pub dim: usize,
    pub n_states: usize,
    /// Residual of the candidate's conjugation map against the closed form.
    pub map_residual: f64,
    pub map_equals_phi: bool,
    /// Present when map equality is structurally impossible.
    pub spanning_defect: Option<SpanningDefect>,
    /// Max deviation of the weights from `1/d^2`; present iff the map
    /// matches the closed form.
    pub forced_weights_deviation: Option<f64>,
    /// Max deviation of pairwise overlaps from `1/(d+1)`; present iff the
    /// map matches the closed form.
    pub forced_overlaps_deviation: Option<f64>,
    /// Whether both forced conclusions hold within
    /// [`tol::THEOREM5_CONCLUSION`].
    pub conclusions_hold: Option<bool>,
}

/// Checks the uniqueness statement for decompositions of the closed-form
/// map: a candidate with at most `d^2` rank-1 states whose conjugation map
/// equals the closed form must be a SIC ensemble with uniform weights.
///
/// When the candidate has fewer than `d^2` states or linearly dependent
/// projectors, the report notes that map equality is impossible instead.
pub fn theorem5_check(candidate: &Ensemble) -> Result<Theorem5Report> {
    let dim = candidate.dim();
    let need = dim * dim;
    let n = candidate.len();
    if n > need {
        return Err(Error::TooManyStates {
            found: n,
            max: need,
        });
    }

    let mut gram = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = candidate.states()[i].overlap(&candidate.states()[j]);
        }
    }
    let gram_rank = symmetric_rank(&gram);

    let spanning_defect = if n < need {
        Some(SpanningDefect::TooFewStates { have: n, need })
    } else if gram_rank < need {
        Some(SpanningDefect::LinearlyDependent { gram_rank })
    } else {
        None
    };

    let map_residual = map_residual_on_basis(&candidate.map(), &PhiMap::new(dim))?;
    let map_equals_phi = map_residual < tol::MAP_EQUALITY;

    let (mut weights_dev, mut overlaps_dev, mut conclusions) = (None, None, None);
    if map_equals_phi {
        let uniform = 1.0 / need as f64;
        let w_dev = candidate
            .probs()
            .iter()
            .fold(0.0_f64, |acc, &p| acc.max((p - uniform).abs()));
        let target = sic_overlap_target(dim);
        let mut o_dev: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                o_dev = o_dev.max((gram[(i, j)] - target).abs());
            }
        }
        conclusions = Some(w_dev <= tol::THEOREM5_CONCLUSION && o_dev <= tol::THEOREM5_CONCLUSION);
        weights_dev = Some(w_dev);
        overlaps_dev = Some(o_dev);
    }

    Ok(Theorem5Report {
        dim,
        n_states: n,
        map_residual,
        map_equals_phi,
        spanning_defect,
        forced_weights_deviation: weights_dev,
        forced_overlaps_deviation: overlaps_dev,
        conclusions_hold: conclusions,
    })
}


#[cfg(test)]
mod tests {
    use super::test_fiducials::qubit_fiducial;
    use super::*;
    use crate::ensembles::maps_equal;
    use crate::operators::haar::{haar_random_state, random_density};
    use crate::operators::state::PureState;
    use crate::rng;
    use approx::assert_relative_eq;

    #[test]
    fn qubit_orbit_is_a_certified_sic() {
        let sic = sic_from_fiducial(&qubit_fiducial());
        assert_eq!(sic.ensemble().len(), 4);
        assert!(
            sic.overlap_residual() < 1e-12,
            "residual {}",
            sic.overlap_residual()
        );
        assert!(sic.is_certified());
        for p in sic.ensemble().probs() {
            assert_relative_eq!(*p, 0.25, epsilon = 1e-15);
        }
        let cert = verify_sic(&sic);
        assert!(cert.pass);
        assert_eq!(cert.gram_rank, 4);
        assert!(cert.map_residual < 1e-12);
    }

    #[test]
    fn basis_state_orbit_is_not_a_sic() {
        // the orbit of |0> in d=2 is {|0>, |0>, |1>, |1>} up to phases:
        // overlaps take values 0 and 1, residual max(1/3, 2/3) = 2/3
        let sic = sic_from_fiducial(&PureState::basis_state(2, 0));
        assert!(sic.overlap_residual() > 0.5);
        assert!(!sic.is_certified());
        let cert = verify_sic(&sic);
        assert!(!cert.pass);
        assert!(cert.gram_rank < 4, "gram rank {}", cert.gram_rank);
        assert!(matches!(
            sic_probabilities(&sic, &DensityOperator::maximally_mixed(2)),
            Err(Error::UncertifiedSic { .. })
        ));
    }

    #[test]
    fn sic_map_matches_closed_form_and_sends_identity_to_maximally_mixed() {
        let sic = sic_from_fiducial(&qubit_fiducial());
        let mut rng = rng::master(60);
        let cmp = maps_equal(&sic.ensemble().map(), &PhiMap::new(2), 10, &mut rng).unwrap();
        assert!(cmp.equal, "residual {}", cmp.max_residual);

        let image = sic
            .ensemble()
            .map()
            .apply(&HermitianOperator::identity(2))
            .unwrap();
        let expected = HermitianOperator::identity(2).scaled(0.5);
        assert!((&image - &expected).operator_norm() < 1e-12);
    }

    #[test]
    fn phi_closed_form_known_values() {
        // identity in d=4: (1/20)(4 I + I) = I/4
        let x = HermitianOperator::identity(4);
        let y = phi_closed_form(&x);
        assert!((&y - &HermitianOperator::identity(4).scaled(0.25)).operator_norm() < 1e-14);

        // rank-1 projector in d=2: (1/6)(I + P) has eigenvalues 1/3 and 1/6
        let p = Projector::from_state(&PureState::basis_state(2, 0));
        let ev = phi_closed_form(p.as_operator()).eigenvalues();
        assert_relative_eq!(ev[0], 1.0 / 6.0, epsilon = 1e-14);
        assert_relative_eq!(ev[1], 1.0 / 3.0, epsilon = 1e-14);

        // traceless input: X / (d(d+1))
        let traceless = HermitianOperator::new(nalgebra::dmatrix![
            num_complex::Complex64::from(1.0), num_complex::Complex64::ZERO;
            num_complex::Complex64::ZERO, num_complex::Complex64::from(-1.0)
        ])
        .unwrap();
        let img = phi_closed_form(&traceless);
        assert!((&img - &traceless.scaled(1.0 / 6.0)).operator_norm() < 1e-14);
    }

    #[test]
    fn depolarizing_identity_holds() {
        let mut rng = rng::master(61);
        assert!(depolarizing_consistency(&DensityOperator::maximally_mixed(3)) < 1e-15);
        for dim in [2usize, 3, 5] {
            let rho = random_density(dim, &mut rng);
            assert!(depolarizing_consistency(&rho) < 1e-12);
            let pure = DensityOperator::from_state(&haar_random_state(dim, &mut rng));
            assert!(depolarizing_consistency(&pure) < 1e-12);
        }
    }

    #[test]
    fn probabilities_of_known_states() {
        let sic = sic_from_fiducial(&qubit_fiducial());

        // maximally mixed state: uniform 1/d^2
        let uniform = sic_probabilities(&sic, &DensityOperator::maximally_mixed(2)).unwrap();
        for &p in uniform.probs() {
            assert_relative_eq!(p, 0.25, epsilon = 1e-12);
        }

        // a SIC state itself: 1/2 on itself, 1/6 elsewhere
        let rho = DensityOperator::from_projector(&sic.ensemble().states()[0]);
        let p = sic_probabilities(&sic, &rho).unwrap();
        assert_relative_eq!(p.probs()[0], 0.5, epsilon = 1e-10);
        for &q in &p.probs()[1..] {
            assert_relative_eq!(q, 1.0 / 6.0, epsilon = 1e-10);
        }

        // any pure state: sum of squares = 2/(d(d+1)) = 1/3
        let mut rng = rng::master(62);
        let pure = DensityOperator::from_state(&haar_random_state(2, &mut rng));
        let pp = sic_probabilities(&sic, &pure).unwrap();
        let sum_sq: f64 = pp.probs().iter().map(|x| x * x).sum();
        assert_relative_eq!(sum_sq, 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn reconstruction_roundtrip_and_purity() {
        let sic = sic_from_fiducial(&qubit_fiducial());
        let mut rng = rng::master(63);

        // uniform distribution reconstructs the maximally mixed state
        let uniform = SicProbabilities::new(2, vec![0.25; 4]).unwrap();
        let mixed = reconstruct_density(&sic, &uniform).unwrap();
        assert!(
            (mixed.as_operator() - DensityOperator::maximally_mixed(2).as_operator())
                .operator_norm()
                < 1e-12
        );
        assert_relative_eq!(purity_from_probabilities(&uniform), 0.5, epsilon = 1e-12);

        for _ in 0..10 {
            let rho = random_density(2, &mut rng);
            let p = sic_probabilities(&sic, &rho).unwrap();
            let rebuilt = reconstruct_density(&sic, &p).unwrap();
            assert!(
                (rebuilt.as_operator() - rho.as_operator()).operator_norm() < 1e-10,
                "roundtrip failed"
            );
            assert_relative_eq!(purity_from_probabilities(&p), rho.purity(), epsilon = 1e-10);
        }
    }

    #[test]
    fn inconsistent_probabilities_are_rejected() {
        let sic = sic_from_fiducial(&qubit_fiducial());
        // concentrate as much weight as the per-outcome cap allows on two
        // orthogonal-ish outcomes; no quantum state produces this
        let p = SicProbabilities::new(2, vec![0.5, 0.5, 0.0, 0.0]).unwrap();
        assert!(matches!(
            reconstruct_density(&sic, &p),
            Err(Error::InconsistentProbabilities { .. })
        ));
    }

    #[test]
    fn sic_states_resolve_the_identity() {
        let sic = sic_from_fiducial(&qubit_fiducial());
        let mut sum = HermitianOperator::zero(2);
        for s in sic.ensemble().states() {
            sum = &sum + s.as_operator();
        }
        assert!((&sum - &HermitianOperator::identity(2).scaled(2.0)).operator_norm() < 1e-12);
        assert!(sic.povm().validate().pass());
    }

    #[test]
    fn theorem5_accepts_sic_and_flags_deviations() {
        let sic = sic_from_fiducial(&qubit_fiducial());
        let report = theorem5_check(sic.ensemble()).unwrap();
        assert!(report.map_equals_phi);
        assert!(report.spanning_defect.is_none());
        assert_eq!(report.conclusions_hold, Some(true));

        // perturb the weights: map must leave phi
        let eps = 1e-3;
        let mut probs = sic.ensemble().probs().to_vec();
        probs[0] += eps;
        probs[1] -= eps;
        let perturbed = Ensemble::new(sic.ensemble().states().to_vec(), probs).unwrap();
        let report = theorem5_check(&perturbed).unwrap();
        assert!(!report.map_equals_phi);
        assert!(report.map_residual > 1e-5);

        // fewer than d^2 states: impossibility
        let mut rng = rng::master(64);
        let small = Ensemble::uniform(
            (0..3)
                .map(|_| Projector::from_state(&haar_random_state(2, &mut rng)))
                .collect(),
        )
        .unwrap();
        let report = theorem5_check(&small).unwrap();
        assert_eq!(
            report.spanning_defect,
            Some(SpanningDefect::TooFewStates { have: 3, need: 4 })
        );
        assert!(!report.map_equals_phi);

        // more than d^2 states violates the hypothesis
        let big = Ensemble::uniform(
            (0..5)
                .map(|_| Projector::from_state(&haar_random_state(2, &mut rng)))
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            theorem5_check(&big),
            Err(Error::TooManyStates { .. })
        ));
    }
}

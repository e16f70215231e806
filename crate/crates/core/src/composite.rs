//! Tensor-product ensembles and the entanglement gap.
//!
//! The smallest accessible fidelity reachable with product signals on
//! `H_{d1} (x) H_{d2}` is `(2/(d1+1)) (2/(d2+1))`, strictly above the
//! composite space's own floor `2/(d1 d2 + 1)`. The experiment here
//! witnesses that gap numerically: a product-SIC ensemble cannot get below
//! the product value, while the composite-space SIC ensemble — which
//! necessarily contains entangled states — reaches the floor.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::ensembles::{achievable_fidelity, Ensemble};
use crate::error::{Error, Result};
use crate::operators::povm::Povm;
use crate::operators::state::PureState;
use crate::operators::tensor;
use crate::optimization::{accessible_fidelity_search, PovmSearchConfig};
use crate::structured_states::SicEnsemble;
use crate::tol;

/// A pair of component ensembles together with their joint product ensemble.
#[derive(Debug, Clone)]
pub struct ProductEnsemble {
    left: Ensemble,
    right: Ensemble,
    joint: Ensemble,
}

impl ProductEnsemble {
    pub fn left(&self) -> &Ensemble {
        &self.left
    }

    pub fn right(&self) -> &Ensemble {
        &self.right
    }

    pub fn joint(&self) -> &Ensemble {
        &self.joint
    }
}

/// Forms all products `|psi_i> (x) |chi_j>` with probabilities
/// `pi_i rho_j`, the left index varying slowest.
pub fn product_ensemble(a: &Ensemble, b: &Ensemble) -> ProductEnsemble {
    let mut states = Vec::with_capacity(a.len() * b.len());
    let mut probs = Vec::with_capacity(a.len() * b.len());
    for (sa, &pa) in a.states().iter().zip(a.probs()) {
        for (sb, &pb) in b.states().iter().zip(b.probs()) {
            states.push(sa.tensor(sb));
            probs.push(pa * pb);
        }
    }
    // renormalize away the round-off of the pairwise products
    let sum: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= sum;
    }
    ProductEnsemble {
        left: a.clone(),
        right: b.clone(),
        joint: Ensemble::new(states, probs).expect("products of valid ensembles are valid"),
    }
}

/// `2 / (d1 d2 + 1)`: the fidelity floor of the composite space.
pub fn composite_quantumness(d1: usize, d2: usize) -> f64 {
    assert!(d1 >= 1 && d2 >= 1, "dimensions must be positive");
    2.0 / ((d1 * d2) as f64 + 1.0)
}

/// `(2/(d1+1)) (2/(d2+1))`: the best accessible fidelity reachable with
/// product signal states.
pub fn product_fidelity_value(d1: usize, d2: usize) -> f64 {
    assert!(d1 >= 1 && d2 >= 1, "dimensions must be positive");
    (2.0 / (d1 as f64 + 1.0)) * (2.0 / (d2 as f64 + 1.0))
}

/// Schmidt rank of a pure state on `H_{d1} (x) H_{d2}`: the number of
/// singular values of the reshaped amplitude matrix above [`tol::SCHMIDT`].
pub fn schmidt_rank(state: &PureState, d1: usize, d2: usize) -> Result<usize> {
    if state.dim() != d1 * d2 {
        return Err(Error::DimensionMismatch {
            expected: d1 * d2,
            found: state.dim(),
        });
    }
    let m = DMatrix::<Complex64>::from_fn(d1, d2, |i, j| state.amplitudes()[i * d2 + j]);
    let singular = m.svd(false, false).singular_values;
    Ok(singular.iter().filter(|&&s| s > tol::SCHMIDT).count())
}

/// Numerical witness of the entanglement gap.
#[derive(Debug, Clone)]
pub struct QuantumnessGapReport {
    pub d1: usize,
    pub d2: usize,
    /// `(2/(d1+1)) (2/(d2+1))`, the product-signal optimum.
    pub product_value: f64,
    /// `2/(d1 d2 + 1)`, the composite floor.
    pub composite_quantumness: f64,
    /// `product_value - composite_quantumness`; positive iff both factors
    /// are nontrivial.
    pub gap: f64,
    /// Search result on the product-SIC ensemble (lower bound on its
    /// accessible fidelity).
    pub optimizer_value: f64,
    /// Achievable fidelity of the product-SIC ensemble under the product
    /// SIC measurement; evaluates to the product value.
    pub product_povm_value: f64,
    /// Achievable fidelity of the composite-space SIC ensemble under its
    /// own SIC measurement; evaluates to the composite floor.
    pub composite_sic_value: f64,
    /// Number of composite-SIC states with Schmidt rank > 1.
    pub entangled_states: usize,
    pub max_schmidt_rank: usize,
}

fn require_certified(s: &SicEnsemble) -> Result<()> {
    if s.is_certified() {
        Ok(())
    } else {
        Err(Error::UncertifiedSic {
            residual: s.overlap_residual(),
            tol: tol::SIC_CERTIFICATION,
        })
    }
}

/// Runs the composite-space comparison on certified SIC ensembles for both
/// factors and for the joint space.
///
/// The optimizer value is a lower bound consistent with the product value;
/// the composite-SIC evaluation lands on the floor `2/(d1 d2 + 1)`; and at
/// least one joint-SIC state is certified entangled via its Schmidt rank
/// whenever the composite space is genuinely bipartite.
pub fn entanglement_gap_experiment(
    left: &SicEnsemble,
    right: &SicEnsemble,
    joint: &SicEnsemble,
    cfg: &PovmSearchConfig,
) -> Result<QuantumnessGapReport> {
    require_certified(left)?;
    require_certified(right)?;
    require_certified(joint)?;
    let (d1, d2) = (left.dim(), right.dim());
    if joint.dim() != d1 * d2 {
        return Err(Error::DimensionMismatch {
            expected: d1 * d2,
            found: joint.dim(),
        });
    }

    let product = product_ensemble(left.ensemble(), right.ensemble());
    let optimizer_value = accessible_fidelity_search(product.joint(), cfg)?
        .report
        .value();

    let (left_povm, right_povm) = (left.povm(), right.povm());
    let product_povm = Povm::new(
        left_povm
            .elements()
            .iter()
            .flat_map(|a| right_povm.elements().iter().map(move |b| tensor(a, b)))
            .collect(),
    )?;
    let product_povm_value = achievable_fidelity(product.joint(), &product_povm)?.value();

    let composite_sic_value = achievable_fidelity(joint.ensemble(), &joint.povm())?.value();

    let mut entangled_states = 0;
    let mut max_schmidt_rank = 0;
    for state in joint.ensemble().states() {
        let rank = schmidt_rank(state.direction(), d1, d2)?;
        max_schmidt_rank = max_schmidt_rank.max(rank);
        if rank > 1 {
            entangled_states += 1;
        }
    }

    let product_value = product_fidelity_value(d1, d2);
    let floor = composite_quantumness(d1, d2);
    Ok(QuantumnessGapReport {
        d1,
        d2,
        product_value,
        composite_quantumness: floor,
        gap: product_value - floor,
        optimizer_value,
        product_povm_value,
        composite_sic_value,
        entangled_states,
        max_schmidt_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::haar::{haar_random_state, random_hermitian};
    use crate::operators::matrix::HermitianOperator;
    use crate::operators::state::Projector;
    use crate::rng;
    use crate::structured_states::sic::test_fiducials::qubit_fiducial;
    use crate::structured_states::sic_from_fiducial;
    use approx::assert_relative_eq;
    use nalgebra::dvector;

    #[test]
    fn closed_form_values() {
        assert_relative_eq!(composite_quantumness(2, 2), 0.4, epsilon = 1e-15);
        assert_relative_eq!(composite_quantumness(2, 3), 2.0 / 7.0, epsilon = 1e-15);
        assert_relative_eq!(composite_quantumness(1, 4), 0.4, epsilon = 1e-15);
        assert_relative_eq!(product_fidelity_value(2, 2), 4.0 / 9.0, epsilon = 1e-15);
        assert_relative_eq!(product_fidelity_value(2, 3), 1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(product_fidelity_value(1, 4), 0.4, epsilon = 1e-15);
    }

    #[test]
    fn gap_is_positive_iff_both_factors_are_nontrivial() {
        for d1 in 1..=4usize {
            for d2 in 1..=4usize {
                let gap = product_fidelity_value(d1, d2) - composite_quantumness(d1, d2);
                if d1 >= 2 && d2 >= 2 {
                    assert!(gap > 0.0, "({d1},{d2})");
                } else {
                    assert!(gap.abs() < 1e-15, "({d1},{d2})");
                }
            }
        }
    }

    #[test]
    fn product_of_qubit_sics_has_sixteen_uniform_states() {
        let sic = sic_from_fiducial(&qubit_fiducial());
        let product = product_ensemble(sic.ensemble(), sic.ensemble());
        assert_eq!(product.joint().len(), 16);
        assert_eq!(product.joint().dim(), 4);
        for &p in product.joint().probs() {
            assert_relative_eq!(p, 1.0 / 16.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn single_times_single_is_a_single_product_state() {
        let a = Ensemble::single(Projector::from_state(&PureState::basis_state(2, 0)));
        let b = Ensemble::single(Projector::from_state(&PureState::basis_state(3, 2)));
        let product = product_ensemble(&a, &b);
        assert_eq!(product.joint().len(), 1);
        assert_eq!(product.joint().dim(), 6);
        let expected = PureState::basis_state(2, 0).tensor(&PureState::basis_state(3, 2));
        assert_relative_eq!(
            product.joint().states()[0]
                .direction()
                .overlap_squared(&expected),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn joint_map_factorizes_on_product_operators() {
        // term-by-term Kronecker expansion: the joint conjugation map applied
        // to A (x) B equals the tensor of the component images
        let mut rng = rng::master(110);
        let a_states: Vec<Projector> = (0..3)
            .map(|_| Projector::from_state(&haar_random_state(2, &mut rng)))
            .collect();
        let b_states: Vec<Projector> = (0..2)
            .map(|_| Projector::from_state(&haar_random_state(2, &mut rng)))
            .collect();
        let a = Ensemble::new(a_states, vec![0.2, 0.3, 0.5]).unwrap();
        let b = Ensemble::new(b_states, vec![0.4, 0.6]).unwrap();
        let product = product_ensemble(&a, &b);

        for _ in 0..3 {
            let xa = random_hermitian(2, &mut rng);
            let xb = random_hermitian(2, &mut rng);
            let joint_image = product.joint().map().apply(&tensor(&xa, &xb)).unwrap();
            let split_image = tensor(&a.map().apply(&xa).unwrap(), &b.map().apply(&xb).unwrap());
            assert!(
                (&joint_image - &split_image).operator_norm() < 1e-12,
                "joint map does not factorize"
            );
        }

        let id_image = product
            .joint()
            .map()
            .apply(&HermitianOperator::identity(4))
            .unwrap();
        let split_id = tensor(
            &a.map().apply(&HermitianOperator::identity(2)).unwrap(),
            &b.map().apply(&HermitianOperator::identity(2)).unwrap(),
        );
        assert!((&id_image - &split_id).operator_norm() < 1e-12);
    }

    #[test]
    fn schmidt_rank_distinguishes_product_from_bell() {
        let product = PureState::basis_state(2, 0).tensor(&PureState::basis_state(2, 1));
        assert_eq!(schmidt_rank(&product, 2, 2).unwrap(), 1);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::new(dvector![
            Complex64::from(s),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::from(s)
        ])
        .unwrap();
        assert_eq!(schmidt_rank(&bell, 2, 2).unwrap(), 2);

        assert!(schmidt_rank(&bell, 2, 3).is_err());
    }

    #[test]
    fn uncertified_sic_is_rejected() {
        let good = sic_from_fiducial(&qubit_fiducial());
        let bad = sic_from_fiducial(&PureState::basis_state(2, 0));
        let cfg = PovmSearchConfig::for_dim(4);
        assert!(matches!(
            entanglement_gap_experiment(&good, &bad, &good, &cfg),
            Err(Error::UncertifiedSic { .. })
        ));
    }
}

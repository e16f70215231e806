//! Positive operator-valued measures.

use crate::error::{Error, Result};
use crate::operators::matrix::HermitianOperator;
use crate::operators::state::{Projector, PureState};
use crate::tol;

/// A measurement: positive operators summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    dim: usize,
    elements: Vec<HermitianOperator>,
}

impl Povm {
    /// Validates positivity and completeness within [`tol::STRUCTURAL`].
    pub fn new(elements: Vec<HermitianOperator>) -> Result<Self> {
        Self::with_tolerance(elements, tol::STRUCTURAL)
    }

    /// Validates with an explicit tolerance (numerical-search output is
    /// accepted at [`tol::SEARCH_POVM`]).
    pub fn with_tolerance(elements: Vec<HermitianOperator>, tolerance: f64) -> Result<Self> {
        let report = validate_povm_elements(&elements)?;
        if report.positivity_margin < -tolerance {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: report.positivity_margin,
            });
        }
        if report.completeness_residual > tolerance {
            return Err(Error::IncompletePovm {
                residual: report.completeness_residual,
            });
        }
        Ok(Self {
            dim: elements[0].dim(),
            elements,
        })
    }

    /// The trivial one-outcome measurement `{I}`.
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            elements: vec![HermitianOperator::identity(dim)],
        }
    }

    /// Builds a POVM from rank-1 elements `g_b |phi_b><phi_b|`.
    pub fn from_rank_one(elements: Vec<RankOnePovmElement>) -> Result<Self> {
        let ops = elements
            .iter()
            .map(RankOnePovmElement::to_operator)
            .collect();
        Self::new(ops)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    /// Positivity margin and completeness residual of this measurement.
    pub fn validate(&self) -> PovmValidation {
        validate_povm_elements(&self.elements).expect("dimensions checked at construction")
    }

    /// Decomposes every element as `g_b |phi_b><phi_b|`.
    ///
    /// Fails on an element whose weight (trace) vanishes, since its
    /// direction is then undefined, and on any element of rank > 1.
    pub fn rank_one_elements(&self) -> Result<Vec<RankOnePovmElement>> {
        let mut out = Vec::with_capacity(self.elements.len());
        for (index, e) in self.elements.iter().enumerate() {
            let weight = e.trace();
            if weight < tol::STRUCTURAL {
                return Err(Error::ZeroWeightElement { index });
            }
            let spectrum = e.eigh();
            let values = spectrum.values();
            let secondary = if values.len() >= 2 {
                values[values.len() - 2].abs()
            } else {
                0.0
            };
            if secondary > tol::STRUCTURAL * weight.max(1.0) {
                return Err(Error::NotRankOne { index, secondary });
            }
            let (_, direction) = spectrum.top();
            out.push(RankOnePovmElement::new(
                weight,
                PureState::new(direction).expect("eigenvectors are unit vectors"),
            )?);
        }
        Ok(out)
    }
}

/// A weight `g >= 0` together with the unit direction it projects onto.
#[derive(Debug, Clone)]
pub struct RankOnePovmElement {
    weight: f64,
    direction: PureState,
}

impl RankOnePovmElement {
    pub fn new(weight: f64, direction: PureState) -> Result<Self> {
        if weight < 0.0 {
            return Err(Error::NegativeProbability {
                index: 0,
                value: weight,
            });
        }
        Ok(Self { weight, direction })
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn direction(&self) -> &PureState {
        &self.direction
    }

    pub fn projector(&self) -> Projector {
        Projector::from_state(&self.direction)
    }

    /// `g |phi><phi|`.
    pub fn to_operator(&self) -> HermitianOperator {
        HermitianOperator::outer(self.direction.amplitudes()).scaled(self.weight)
    }
}

/// Validation report for a candidate POVM.
#[derive(Debug, Clone, Copy)]
pub struct PovmValidation {
    /// Minimum eigenvalue over all elements (negative means not positive).
    pub positivity_margin: f64,
    /// `||sum_b E_b - I||` in operator norm.
    pub completeness_residual: f64,
}

impl PovmValidation {
    /// Both positivity and completeness hold within `tolerance`.
    pub fn passes_at(&self, tolerance: f64) -> bool {
        self.positivity_margin >= -tolerance && self.completeness_residual <= tolerance
    }

    /// The standard structural check at [`tol::STRUCTURAL`].
    pub fn pass(&self) -> bool {
        self.passes_at(tol::STRUCTURAL)
    }
}

/// Reports positivity margin and completeness residual for raw elements.
///
/// Errs only on structurally unusable input (no elements, mixed dimensions);
/// a failing measurement still gets a report.
pub fn validate_povm_elements(elements: &[HermitianOperator]) -> Result<PovmValidation> {
    let Some(first) = elements.first() else {
        return Err(Error::ZeroDimension);
    };
    let dim = first.dim();
    let mut sum = HermitianOperator::zero(dim);
    let mut positivity_margin = f64::INFINITY;
    for e in elements {
        if e.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: e.dim(),
            });
        }
        positivity_margin = positivity_margin.min(e.smallest_eigenvalue());
        sum = &sum + e;
    }
    let completeness_residual = (&sum - &HermitianOperator::identity(dim)).operator_norm();
    Ok(PovmValidation {
        positivity_margin,
        completeness_residual,
    })
}

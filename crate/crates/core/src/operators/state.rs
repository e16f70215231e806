//! Pure states, rank-1 projectors, and density operators.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::matrix::HermitianOperator;
use crate::tol;

/// A unit vector in the `dim`-dimensional Hilbert space.
///
/// The global phase is kept exactly as given; all physical comparisons go
/// through projectors or squared overlaps, so canonicalizing it would buy
/// nothing and risk subtle bugs.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
}

impl PureState {
    /// Wraps an amplitude vector, requiring unit norm within [`tol::UNIT_NORM`].
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > tol::UNIT_NORM {
            return Err(Error::NotUnitNorm {
                norm,
                tol: tol::UNIT_NORM,
            });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(raw: DVector<Complex64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let norm = raw.norm();
        if norm < 1e-14 {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            amplitudes: raw / Complex64::from(norm),
        })
    }

    /// Computational basis state `|k>`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut v = DVector::zeros(dim);
        v[k] = Complex64::ONE;
        Self { amplitudes: v }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "state dimensions differ");
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|<self|other>|^2`.
    pub fn overlap_squared(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `<self|x|self>`; real because `x` is Hermitian.
    pub fn expectation(&self, x: &HermitianOperator) -> f64 {
        assert_eq!(self.dim(), x.dim(), "state/operator dimensions differ");
        self.amplitudes.dotc(&(x.entries() * &self.amplitudes)).re
    }

    /// Product state on the composite space (left factor varying slowest).
    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }
}

/// A rank-1 projector `|psi><psi|`.
///
/// Stores both the matrix and the direction it projects onto; the latter
/// makes sandwich products `P X P = <psi|X|psi> P` cheap.
#[derive(Debug, Clone)]
pub struct Projector {
    matrix: HermitianOperator,
    direction: PureState,
}

impl Projector {
    /// The projector onto a pure state.
    pub fn from_state(state: &PureState) -> Self {
        Self {
            matrix: HermitianOperator::outer(state.amplitudes()),
            direction: state.clone(),
        }
    }

    /// Validates a Hermitian matrix as a rank-1 projector (idempotent and
    /// unit trace within [`tol::STRUCTURAL`]) and extracts its direction.
    pub fn from_operator(op: HermitianOperator) -> Result<Self> {
        let trace = op.trace();
        if (trace - 1.0).abs() > tol::STRUCTURAL {
            return Err(Error::NotProjector {
                reason: format!("trace {trace} differs from 1"),
            });
        }
        let squared = op.entries() * op.entries();
        let idem = (&squared - op.entries()).camax();
        if idem > tol::STRUCTURAL {
            return Err(Error::NotProjector {
                reason: format!("idempotency residual {idem:.3e}"),
            });
        }
        let (_, top) = op.eigh().top();
        let direction = PureState::new(top)?;
        Ok(Self {
            matrix: op,
            direction,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn as_operator(&self) -> &HermitianOperator {
        &self.matrix
    }

    pub fn direction(&self) -> &PureState {
        &self.direction
    }

    /// `tr(P Q) = |<psi|phi>|^2`.
    pub fn overlap(&self, other: &Projector) -> f64 {
        self.direction.overlap_squared(&other.direction)
    }

    /// Projector onto the tensor product of the two directions.
    pub fn tensor(&self, other: &Projector) -> Projector {
        Projector::from_state(&self.direction.tensor(&other.direction))
    }
}

/// A positive semidefinite, unit-trace Hermitian operator.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: HermitianOperator,
}

impl DensityOperator {
    /// Validates positivity (min eigenvalue >= -[`tol::STRUCTURAL`]) and
    /// unit trace.
    pub fn new(matrix: HermitianOperator) -> Result<Self> {
        Self::with_psd_tolerance(matrix, tol::STRUCTURAL)
    }

    /// Same as [`DensityOperator::new`] with an explicit positivity slack.
    pub fn with_psd_tolerance(matrix: HermitianOperator, psd_tol: f64) -> Result<Self> {
        let trace = matrix.trace();
        if (trace - 1.0).abs() > tol::STRUCTURAL {
            return Err(Error::TraceNotOne {
                trace,
                tol: tol::STRUCTURAL,
            });
        }
        let min = matrix.smallest_eigenvalue();
        if min < -psd_tol {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
        Ok(Self { matrix })
    }

    pub fn from_projector(p: &Projector) -> Self {
        Self {
            matrix: p.as_operator().clone(),
        }
    }

    pub fn from_state(state: &PureState) -> Self {
        Self {
            matrix: HermitianOperator::outer(state.amplitudes()),
        }
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: HermitianOperator::identity(dim).scaled(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn as_operator(&self) -> &HermitianOperator {
        &self.matrix
    }

    /// `tr(rho^2)`, in `[1/d, 1]` for valid states.
    pub fn purity(&self) -> f64 {
        crate::operators::matrix::hs_inner(&self.matrix, &self.matrix)
            .expect("same operator, same dimension")
    }
}

impl HermitianOperator {
    /// Largest eigenvalue together with a unit eigenvector attaining it.
    ///
    /// In degenerate top eigenspaces the vector is the one the solver
    /// produces last in ascending order, which is deterministic for a
    /// given input.
    pub fn largest_eigenpair(&self) -> (f64, PureState) {
        let (value, vector) = self.eigh().top();
        (
            value,
            PureState::new(vector).expect("eigenvectors are unit vectors"),
        )
    }
}

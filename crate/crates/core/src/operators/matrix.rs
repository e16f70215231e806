//! Dense Hermitian operators: construction, algebra, spectra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// A `dim x dim` complex matrix equal to its own conjugate transpose.
///
/// Hermiticity is checked once at construction (entrywise, within
/// [`tol::HERMITICITY`]); afterwards every operation may rely on it.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    entries: DMatrix<Complex64>,
}

impl HermitianOperator {
    /// Validates and wraps a square complex matrix.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() == 0 {
            return Err(Error::ZeroDimension);
        }
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        let deviation = (&entries - entries.adjoint()).camax();
        if deviation > tol::HERMITICITY {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { entries })
    }

    /// Wraps a matrix that is Hermitian by construction (e.g. an outer
    /// product or a real combination of Hermitian matrices).
    pub(crate) fn from_hermitian_parts(entries: DMatrix<Complex64>) -> Self {
        debug_assert!(entries.is_square());
        debug_assert!((&entries - entries.adjoint()).camax() <= 1e-11);
        Self { entries }
    }

    /// The identity operator on a `dim`-dimensional space.
    pub fn identity(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self {
            entries: DMatrix::identity(dim, dim),
        }
    }

    /// The zero operator.
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self {
            entries: DMatrix::zeros(dim, dim),
        }
    }

    /// Outer product `v v^dag` (exactly Hermitian in floating point).
    pub fn outer(v: &DVector<Complex64>) -> Self {
        Self {
            entries: v * v.adjoint(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Trace; real because the diagonal of a Hermitian matrix is real.
    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|z| z.re).sum()
    }

    /// `s * self` for real `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            entries: &self.entries * Complex64::from(s),
        }
    }

    /// Full spectrum with eigenvalues sorted ascending; eigenvector columns
    /// permuted to match. The ordering is deterministic for a given input,
    /// which fixes the eigenvector chosen in degenerate top eigenspaces.
    pub fn eigh(&self) -> Spectrum {
        let eig = self.entries.clone().symmetric_eigen();
        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut vectors = DMatrix::<Complex64>::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        Spectrum { values, vectors }
    }

    /// Eigenvalues only, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Largest eigenvalue.
    pub fn largest_eigenvalue(&self) -> f64 {
        *self
            .eigenvalues()
            .last()
            .expect("dimension is positive by construction")
    }

    /// Smallest eigenvalue.
    pub fn smallest_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Spectral radius, i.e. the operator norm of a Hermitian matrix.
    pub fn operator_norm(&self) -> f64 {
        let ev = self.eigenvalues();
        ev[0].abs().max(ev[ev.len() - 1].abs())
    }
}

impl std::ops::Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: &HermitianOperator) -> HermitianOperator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions differ");
        HermitianOperator {
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl std::ops::Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: &HermitianOperator) -> HermitianOperator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions differ");
        HermitianOperator {
            entries: &self.entries - &rhs.entries,
        }
    }
}

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Unit eigenvector belonging to `values()[k]`.
    pub fn vector(&self, k: usize) -> DVector<Complex64> {
        self.vectors.column(k).into_owned()
    }

    /// Top eigenpair `(max eigenvalue, unit eigenvector)`.
    pub fn top(&self) -> (f64, DVector<Complex64>) {
        let k = self.values.len() - 1;
        (self.values[k], self.vector(k))
    }
}

/// Hilbert-Schmidt inner product `tr(a^dag b)`; real for Hermitian arguments.
pub fn hs_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let mut acc = Complex64::ZERO;
    for (x, y) in a.entries().iter().zip(b.entries().iter()) {
        acc += x.conj() * y;
    }
    debug_assert!(
        acc.im.abs() < 1e-9,
        "HS inner product of Hermitian pair must be real"
    );
    Ok(acc.re)
}

/// Kronecker product; the result acts on the `a.dim() * b.dim()`-dimensional
/// composite space, with the left factor varying slowest.
pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    HermitianOperator::from_hermitian_parts(a.entries().kronecker(b.entries()))
}

/// A real basis of the Hermitian operators on a `dim`-dimensional space:
/// the `dim` diagonal matrix units plus the symmetrized and antisymmetrized
/// off-diagonal pairs, `dim^2` elements in total, each of unit operator norm.
///
/// Hermitian operators span the full operator space over the complex field,
/// so agreement of two linear maps on this basis decides their equality.
pub fn hermitian_basis(dim: usize) -> Vec<HermitianOperator> {
    let mut basis = Vec::with_capacity(dim * dim);
    for k in 0..dim {
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        m[(k, k)] = Complex64::ONE;
        basis.push(HermitianOperator::from_hermitian_parts(m));
    }
    for k in 0..dim {
        for l in (k + 1)..dim {
            let mut sym = DMatrix::<Complex64>::zeros(dim, dim);
            sym[(k, l)] = Complex64::ONE;
            sym[(l, k)] = Complex64::ONE;
            basis.push(HermitianOperator::from_hermitian_parts(sym));

            let mut asym = DMatrix::<Complex64>::zeros(dim, dim);
            asym[(k, l)] = Complex64::I;
            asym[(l, k)] = -Complex64::I;
            basis.push(HermitianOperator::from_hermitian_parts(asym));
        }
    }
    basis
}

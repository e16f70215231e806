//! Weyl-Heisenberg displacement operators on a d-dimensional space.
//!
//! `X` is the cyclic shift `X|k> = |k+1 mod d>` and `Z` the modular phase
//! `Z|k> = exp(2 pi i k / d)|k>`; the displacements `X^a Z^b` generate the
//! orbit of a fiducial state under the group.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// A displacement label `(a, b)` with both components reduced mod `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeylHeisenbergIndex {
    dim: usize,
    shift: usize,
    boost: usize,
}

impl WeylHeisenbergIndex {
    pub fn new(dim: usize, shift: usize, boost: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            dim,
            shift: shift % dim,
            boost: boost % dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The power of the cyclic shift `X`.
    pub fn shift(&self) -> usize {
        self.shift
    }

    /// The power of the modular phase `Z`.
    pub fn boost(&self) -> usize {
        self.boost
    }

    /// All `dim^2` indices in lexicographic `(shift, boost)` order, the
    /// identity first.
    pub fn all(dim: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(dim * dim);
        for shift in 0..dim {
            for boost in 0..dim {
                out.push(Self { dim, shift, boost });
            }
        }
        out
    }
}

fn root_of_unity(dim: usize, power: usize) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * power as f64 / dim as f64;
    Complex64::new(angle.cos(), angle.sin())
}

/// The cyclic shift `X`.
pub fn shift_operator(dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |row, col| {
        if row == (col + 1) % dim {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    })
}

/// The modular phase `Z`.
pub fn clock_operator(dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |row, col| {
        if row == col {
            root_of_unity(dim, row)
        } else {
            Complex64::ZERO
        }
    })
}

/// The displacement `X^a Z^b`, assembled entrywise:
/// `(X^a Z^b)|k> = exp(2 pi i b k / d) |k+a mod d>`.
pub fn wh_displacement(idx: &WeylHeisenbergIndex) -> DMatrix<Complex64> {
    let d = idx.dim();
    let mut m = DMatrix::zeros(d, d);
    for k in 0..d {
        m[((k + idx.shift()) % d, k)] = root_of_unity(d, (idx.boost() * k) % d);
    }
    m
}

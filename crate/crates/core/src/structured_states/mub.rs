//! Complete sets of mutually unbiased bases in prime dimensions.
//!
//! For an odd prime `d` the `d+1` bases are the computational basis plus the
//! quadratic Gauss-sum bases with components
//! `<k|psi^j_m> = d^{-1/2} exp(2 pi i (j k^2 + m k) / d)`; for `d = 2` the
//! Gauss-sum construction needs odd characteristic, so the three Pauli
//! eigenbases are written out explicitly. Prime powers would need finite
//! field arithmetic and are out of scope.

use nalgebra::{dvector, DVector};
use num_complex::Complex64;

use crate::ensembles::Ensemble;
use crate::error::{Error, Result};
use crate::operators::state::{Projector, PureState};

/// Trial-division primality; dimensions here are tiny.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// `d + 1` orthonormal bases with all cross-basis squared overlaps `1/d`.
#[derive(Debug, Clone)]
pub struct MubCollection {
    dim: usize,
    bases: Vec<Vec<Projector>>,
}

impl MubCollection {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The `d + 1` bases, the computational basis first.
    pub fn bases(&self) -> &[Vec<Projector>] {
        &self.bases
    }

    /// Max deviation from orthonormality within the bases:
    /// `max |tr(P^j_i P^j_k) - delta_ik|`.
    pub fn max_intra_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for basis in &self.bases {
            for (i, a) in basis.iter().enumerate() {
                for (k, b) in basis.iter().enumerate() {
                    let expected = if i == k { 1.0 } else { 0.0 };
                    worst = worst.max((a.overlap(b) - expected).abs());
                }
            }
        }
        worst
    }

    /// Max deviation of cross-basis overlaps from `1/d`.
    pub fn max_cross_residual(&self) -> f64 {
        let target = 1.0 / self.dim as f64;
        let mut worst: f64 = 0.0;
        for (j, left) in self.bases.iter().enumerate() {
            for right in self.bases.iter().skip(j + 1) {
                for a in left {
                    for b in right {
                        worst = worst.max((a.overlap(b) - target).abs());
                    }
                }
            }
        }
        worst
    }
}

fn basis_from_columns(columns: Vec<DVector<Complex64>>) -> Vec<Projector> {
    columns
        .into_iter()
        .map(|v| Projector::from_state(&PureState::normalized(v).expect("explicit unit columns")))
        .collect()
}

/// Builds the complete MUB set for a prime dimension.
pub fn mub_construct(dim: usize) -> Result<MubCollection> {
    if !is_prime(dim) {
        return Err(Error::DimensionNotPrime(dim));
    }

    let mut bases = Vec::with_capacity(dim + 1);
    bases.push(
        (0..dim)
            .map(|k| Projector::from_state(&PureState::basis_state(dim, k)))
            .collect::<Vec<_>>(),
    );

    if dim == 2 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = dvector![Complex64::from(h), Complex64::from(h)];
        let minus = dvector![Complex64::from(h), Complex64::from(-h)];
        let right = dvector![Complex64::from(h), Complex64::new(0.0, h)];
        let left = dvector![Complex64::from(h), Complex64::new(0.0, -h)];
        bases.push(basis_from_columns(vec![plus, minus]));
        bases.push(basis_from_columns(vec![right, left]));
    } else {
        let scale = 1.0 / (dim as f64).sqrt();
        for j in 0..dim {
            let basis = (0..dim)
                .map(|m| {
                    DVector::from_fn(dim, |k, _| {
                        let phase = (j * k * k + m * k) % dim;
                        let angle = 2.0 * std::f64::consts::PI * phase as f64 / dim as f64;
                        Complex64::from_polar(scale, angle)
                    })
                })
                .collect();
            bases.push(basis_from_columns(basis));
        }
    }

    Ok(MubCollection { dim, bases })
}

/// The uniform ensemble over all `d(d+1)` MUB states; its conjugation map
/// coincides with the closed-form SIC map.
pub fn mub_ensemble(m: &MubCollection) -> Ensemble {
    let states: Vec<Projector> = m.bases.iter().flatten().cloned().collect();
    Ensemble::uniform(states).expect("uniform probabilities over a nonempty family")
}

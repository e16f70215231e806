//! Haar-distributed samples: states, unitaries, von Neumann measurements,
//! and generic random Hermitian/density operators for probing.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::operators::matrix::HermitianOperator;
use crate::operators::povm::Povm;
use crate::operators::state::{DensityOperator, Projector, PureState};

fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Vector of independent standard complex Gaussian entries.
pub fn complex_gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<Complex64> {
    DVector::from_fn(dim, |_, _| standard_complex(rng))
}

/// Matrix of independent standard complex Gaussian entries (Ginibre).
pub fn complex_gaussian_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |_, _| standard_complex(rng))
}

/// A state distributed by the unitarily invariant measure: a normalized
/// vector of independent standard complex Gaussians.
pub fn haar_random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    loop {
        if let Ok(state) = PureState::normalized(complex_gaussian_vector(dim, rng)) {
            return state;
        }
        // astronomically unlikely: all Gaussians at once below the zero cutoff
    }
}

/// A Haar-distributed unitary via QR of a Ginibre matrix.
///
/// The triangular factor's diagonal phases must be absorbed into Q;
/// without that correction the distribution is not Haar.
pub fn haar_random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let qr = complex_gaussian_matrix(dim, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 1e-300 {
            d / d.norm()
        } else {
            Complex64::ONE
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// A Haar-random complete von Neumann measurement: `dim` mutually orthogonal
/// rank-1 projectors built from the columns of a Haar unitary.
pub fn haar_random_von_neumann<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Povm {
    let u = haar_random_unitary(dim, rng);
    let elements = (0..dim)
        .map(|j| HermitianOperator::outer(&u.column(j).into_owned()))
        .collect();
    Povm::new(elements).expect("unitary columns form a complete projective measurement")
}

/// Same measurement, but returned as projectors (useful when the directions
/// themselves are needed).
pub fn haar_random_projective<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Projector> {
    let u = haar_random_unitary(dim, rng);
    (0..dim)
        .map(|j| {
            Projector::from_state(
                &PureState::new(u.column(j).into_owned()).expect("unitary columns are unit"),
            )
        })
        .collect()
}

/// GUE-style random Hermitian matrix `(G + G^dag)/2`, for probing linear maps.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianOperator {
    let g = complex_gaussian_matrix(dim, rng);
    HermitianOperator::from_hermitian_parts((&g + g.adjoint()).scale(0.5))
}

/// Full-rank random density operator `W W^dag / tr(W W^dag)`.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityOperator {
    let w = complex_gaussian_matrix(dim, rng);
    let m = &w * w.adjoint();
    let trace: f64 = m.diagonal().iter().map(|z| z.re).sum();
    DensityOperator::new(HermitianOperator::from_hermitian_parts(
        m / Complex64::from(trace),
    ))
    .expect("Wishart matrices are positive with unit trace after scaling")
}

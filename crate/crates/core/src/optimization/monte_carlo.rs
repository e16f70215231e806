//! Monte Carlo verification of the random-measurement lower bound.
//!
//! An eavesdropper who applies a Haar-random von Neumann measurement and
//! resends the projector she observed attains, on average over measurements,
//! a fidelity of exactly `2/(d+1)` for every signal ensemble. Estimating
//! that average and comparing against the closed form exercises both the
//! Haar sampler and the fidelity formulas.

use rayon::prelude::*;

use crate::ensembles::{Ensemble, FidelityReport};
use crate::error::{Error, Result};
use crate::operators::haar::haar_random_unitary;
use crate::rng;

/// Sample count and seed for a Monte Carlo run.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloConfig {
    pub n_samples: usize,
    pub seed: u64,
}

impl MonteCarloConfig {
    pub fn new(n_samples: usize, seed: u64) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::InvalidConfig("n_samples must be at least 1".into()));
        }
        Ok(Self { n_samples, seed })
    }
}

/// Mean of `sum_{b,i} pi_i tr(P_i G_b)^2` over Haar-random complete von
/// Neumann measurements `{G_b}` with projective reproduction.
///
/// Each sample draws from its own counter-derived stream, so the estimate is
/// bit-reproducible for a fixed `(seed, n_samples)` regardless of thread
/// count; the per-sample values are reduced in index order.
pub fn haar_average_fidelity(p: &Ensemble, cfg: &MonteCarloConfig) -> FidelityReport {
    let dim = p.dim();
    let values: Vec<f64> = (0..cfg.n_samples)
        .into_par_iter()
        .map(|sample| {
            let mut stream = rng::substream(cfg.seed, 1 + sample as u64);
            let u = haar_random_unitary(dim, &mut stream);
            let mut value = 0.0;
            for b in 0..dim {
                let column = u.column(b);
                for (state, &prob) in p.states().iter().zip(p.probs()) {
                    let overlap = state.direction().amplitudes().dotc(&column).norm_sqr();
                    value += prob * overlap * overlap;
                }
            }
            value
        })
        .collect();

    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let stderr = if values.len() > 1 {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    FidelityReport::monte_carlo(
        mean,
        stderr,
        format!(
            "haar von Neumann + projective reproduction: {} samples, seed {}",
            cfg.n_samples, cfg.seed
        ),
    )
}

fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Numerator and denominator of `d (d-1)! 2! / (d+1)!` in exact integer
/// arithmetic; available up to `d = 20`, beyond which the check would need
/// wider integers than the simplification is worth.
pub fn haar_integral_factorial_form(dim: usize) -> Option<(u128, u128)> {
    if dim == 0 || dim > 20 {
        return None;
    }
    let num = 2 * dim as u128 * factorial_u128(dim - 1);
    let den = factorial_u128(dim + 1);
    Some((num, den))
}

/// The closed form of the Haar average, `2/(d+1)`.
///
/// For `d <= 20` the simplification is re-derived from the factorial form in
/// exact integer arithmetic on every call; it is cheap and keeps the two
/// routes permanently in agreement.
pub fn haar_integral_closed_form(dim: usize) -> f64 {
    assert!(dim >= 1, "dimension must be positive");
    if let Some((num, den)) = haar_integral_factorial_form(dim) {
        assert!(
            num * (dim as u128 + 1) == 2 * den,
            "factorial form of the Haar integral disagrees with 2/(d+1)"
        );
    }
    2.0 / (dim as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::haar::haar_random_state;
    use crate::operators::state::Projector;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_known_values() {
        assert_relative_eq!(haar_integral_closed_form(1), 1.0, epsilon = 1e-15);
        assert_relative_eq!(haar_integral_closed_form(2), 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(haar_integral_closed_form(10), 2.0 / 11.0, epsilon = 1e-15);
    }

    #[test]
    fn factorial_form_is_exact_up_to_twenty() {
        for d in 1..=20usize {
            let (num, den) = haar_integral_factorial_form(d).unwrap();
            assert_eq!(num * (d as u128 + 1), 2 * den, "d = {d}");
        }
        assert!(haar_integral_factorial_form(21).is_none());
        assert!(haar_integral_factorial_form(0).is_none());
    }

    #[test]
    fn single_sample_is_reproducible() {
        let mut rng = crate::rng::master(80);
        let ensemble = Ensemble::single(Projector::from_state(&haar_random_state(2, &mut rng)));
        let cfg = MonteCarloConfig::new(1, 9).unwrap();
        let a = haar_average_fidelity(&ensemble, &cfg);
        let b = haar_average_fidelity(&ensemble, &cfg);
        assert_eq!(a.value(), b.value());
        assert_eq!(a.stderr(), Some(0.0));
    }

    #[test]
    fn thread_count_does_not_change_the_estimate() {
        let mut rng = crate::rng::master(81);
        let ensemble = Ensemble::single(Projector::from_state(&haar_random_state(3, &mut rng)));
        let cfg = MonteCarloConfig::new(500, 4).unwrap();
        let baseline = haar_average_fidelity(&ensemble, &cfg);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| haar_average_fidelity(&ensemble, &cfg));
        assert_eq!(baseline.value(), single.value());
        assert_eq!(baseline.stderr(), single.stderr());
    }

    #[test]
    fn zero_samples_is_rejected() {
        assert!(MonteCarloConfig::new(0, 1).is_err());
    }
}

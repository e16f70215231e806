//! `quantumness <d> [--verify --samples N --seed S]`

use qlab_core::ensembles::achievable_fidelity;
use qlab_core::optimization::{haar_average_fidelity, random_rank_one_povm, MonteCarloConfig};
use qlab_core::{quantumness, rng};

use super::{kv, resolve_seed, verification_ensemble, CliError};

pub fn run(d: usize, verify: bool, samples: usize, seed: Option<u64>) -> Result<(), CliError> {
    if d == 0 {
        return Err(CliError::Usage("dimension must be at least 1".into()));
    }
    kv("command", "quantumness");
    kv("d", d);
    let q = quantumness(d);
    kv("Q_d", q);
    if !verify {
        return Ok(());
    }

    let seed = resolve_seed(seed);
    kv("seed", seed);
    let (kind, ensemble) = verification_ensemble(d, seed)?;
    kv("ensemble", kind);
    kv("ensemble_states", ensemble.len());

    // Monte Carlo over random von Neumann measurements with projective
    // reproduction: the mean must sit within 3 standard errors of Q_d
    let cfg = MonteCarloConfig::new(samples, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let mc = haar_average_fidelity(&ensemble, &cfg);
    let stderr = mc
        .stderr()
        .expect("monte carlo reports carry a standard error");
    kv("mc_samples", samples);
    kv("mc_mean", mc.value());
    kv("mc_stderr", stderr);
    let mc_dev = (mc.value() - q).abs();
    let mc_ok = mc_dev <= 3.0 * stderr + 1e-12;
    kv("check_monte_carlo", if mc_ok { "PASS" } else { "FAIL" });

    // the ensemble's achievable fidelity under a random rank-1 measurement
    // must equal Q_d exactly (up to round-off)
    let mut stream = rng::substream(seed, 0);
    let povm =
        random_rank_one_povm(d, d * d, &mut stream).map_err(|e| CliError::Usage(e.to_string()))?;
    let ach = achievable_fidelity(&ensemble, &povm).map_err(|e| CliError::Usage(e.to_string()))?;
    kv("achievable_rank1", ach.value());
    let ach_ok = (ach.value() - q).abs() <= 1e-9;
    kv(
        "check_achievable_rank1",
        if ach_ok { "PASS" } else { "FAIL" },
    );

    if mc_ok && ach_ok {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "quantumness verification failed in d = {d}: \
             |mc_mean - Q_d| = {mc_dev:.3e} vs 3 stderr = {:.3e}, \
             |achievable - Q_d| = {:.3e}",
            3.0 * stderr,
            (ach.value() - q).abs()
        )))
    }
}

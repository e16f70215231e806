//! `sic <d> [--seed S --restarts R --max-iters M --out FILE]`

use std::path::Path;

use qlab_core::ensembles::achievable_fidelity;
use qlab_core::quantumness;
use qlab_core::structured_states::verify_sic;

use super::{kv, resolve_seed, sic_for_dim, CliError};
use crate::files::{write_json, EnsembleFile};

#[allow(clippy::too_many_arguments)]
pub fn run(
    d: usize,
    seed: Option<u64>,
    restarts: Option<usize>,
    max_iters: Option<usize>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if d < 2 {
        return Err(CliError::Usage(
            "SIC search needs a dimension of at least 2".into(),
        ));
    }
    let seed = resolve_seed(seed);
    kv("command", "sic");
    kv("d", d);
    kv("seed", seed);

    let sic = sic_for_dim(d, restarts, max_iters, seed)?;
    let cert = verify_sic(&sic);
    kv("states", sic.ensemble().len());
    kv(
        "overlap_target",
        qlab_core::structured_states::sic_overlap_target(d),
    );
    kv("overlap_residual", cert.overlap_residual);
    kv("gram_rank", cert.gram_rank);
    kv("gram_rank_expected", d * d);
    kv("phi_map_residual", cert.map_residual);
    kv("certificate", if cert.pass { "PASS" } else { "FAIL" });

    // rank-1 optimality: the SIC's own measurement attains 2/(d+1)
    let theorem_value = achievable_fidelity(sic.ensemble(), &sic.povm())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    kv("achievable_rank1", theorem_value.value());
    kv("expected_quantumness", quantumness(d));

    if let Some(path) = out {
        write_json(path, &EnsembleFile::from_sic(&sic)).map_err(CliError::Usage)?;
        kv("out", path.display());
    }

    if cert.pass {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "found orbit failed certification: overlap residual {:.3e}, gram rank {}",
            cert.overlap_residual, cert.gram_rank
        )))
    }
}

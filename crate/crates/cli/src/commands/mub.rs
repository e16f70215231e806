//! `mub <d> [--out FILE]`

use std::path::Path;

use qlab_core::ensembles::map_residual_on_basis;
use qlab_core::structured_states::{is_prime, mub_construct, mub_ensemble, PhiMap};

use super::{kv, CliError};
use crate::files::{write_json, EnsembleFile};

pub fn run(d: usize, out: Option<&Path>) -> Result<(), CliError> {
    if !is_prime(d) {
        return Err(CliError::Usage(format!(
            "d = {d} is not prime. Complete sets of mutually unbiased bases are known for \
             prime power dimensions only, and are believed not to exist in general — \
             d = 6 being the notorious candidate; this tool builds the prime case."
        )));
    }
    kv("command", "mub");
    kv("d", d);

    let mub = mub_construct(d).map_err(|e| CliError::Usage(e.to_string()))?;
    let ensemble = mub_ensemble(&mub);
    kv("bases", mub.bases().len());
    kv("states", ensemble.len());
    kv("intra_basis_residual", mub.max_intra_residual());
    kv("cross_basis_residual", mub.max_cross_residual());

    let residual = map_residual_on_basis(&ensemble.map(), &PhiMap::new(d))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    kv("phi_map_residual", residual);

    if let Some(path) = out {
        write_json(path, &EnsembleFile::from_ensemble(&ensemble)).map_err(CliError::Usage)?;
        kv("out", path.display());
    }
    Ok(())
}

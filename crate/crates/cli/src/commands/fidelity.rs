//! `fidelity <ensemble.json> [--povm FILE | --optimize | --haar] ...`

use std::path::Path;

use qlab_core::ensembles::{achievable_fidelity, Ensemble};
use qlab_core::optimization::{
    accessible_fidelity_search, haar_average_fidelity, MonteCarloConfig, PovmSearchConfig,
};
use qlab_core::{quantumness, tol};

use super::{kv, resolve_seed, CliError};
use crate::files::{read_json, EnsembleFile, PovmFile};

pub struct FidelityArgs<'a> {
    pub ensemble: &'a Path,
    pub povm: Option<&'a Path>,
    pub optimize: bool,
    pub haar: bool,
    pub outcomes: Option<usize>,
    pub restarts: Option<usize>,
    pub samples: usize,
    pub seed: Option<u64>,
    pub trace: Option<&'a Path>,
}

fn load_ensemble(path: &Path) -> Result<Ensemble, CliError> {
    let file: EnsembleFile = read_json(path).map_err(CliError::Usage)?;
    file.to_ensemble()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn run(args: &FidelityArgs<'_>) -> Result<(), CliError> {
    kv("command", "fidelity");
    kv("ensemble_file", args.ensemble.display());
    let ensemble = load_ensemble(args.ensemble)?;
    kv("dim", ensemble.dim());
    kv("states", ensemble.len());

    if let Some(povm_path) = args.povm {
        let file: PovmFile = read_json(povm_path).map_err(CliError::Usage)?;
        let povm = file
            .to_povm()
            .map_err(|e| CliError::Usage(format!("{}: {e}", povm_path.display())))?;
        if povm.dim() != ensemble.dim() {
            return Err(CliError::Usage(format!(
                "dimension mismatch: ensemble is {}, POVM is {}",
                ensemble.dim(),
                povm.dim()
            )));
        }
        kv("povm_file", povm_path.display());
        kv("povm_outcomes", povm.len());
        let report =
            achievable_fidelity(&ensemble, &povm).map_err(|e| CliError::Usage(e.to_string()))?;
        kv("method", report.method());
        kv("achievable_fidelity", report.value());
        return Ok(());
    }

    if args.optimize {
        let seed = resolve_seed(args.seed);
        kv("seed", seed);
        let mut cfg = PovmSearchConfig::for_dim(ensemble.dim());
        cfg.seed = seed;
        if let Some(n) = args.outcomes {
            cfg.n_outcomes = n;
        }
        if let Some(r) = args.restarts {
            cfg.n_restarts = r;
        }
        kv("outcomes", cfg.n_outcomes);
        kv("restarts", cfg.n_restarts);
        let outcome = accessible_fidelity_search(&ensemble, &cfg)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        kv("method", outcome.report.method());
        kv("accessible_fidelity_lower_bound", outcome.report.value());
        kv("best_restart", outcome.best_restart);
        kv(
            "povm_validation",
            if outcome.povm.validate().passes_at(tol::SEARCH_POVM) {
                "PASS"
            } else {
                "FAIL"
            },
        );

        if let Some(trace_path) = args.trace {
            let mut csv = String::from("restart,iter,value\n");
            for trace in &outcome.traces {
                for (iter, value) in trace.values.iter().enumerate() {
                    csv.push_str(&format!("{},{},{}\n", trace.restart, iter, value));
                }
            }
            std::fs::write(trace_path, csv).map_err(|e| {
                CliError::Usage(format!("cannot write {}: {e}", trace_path.display()))
            })?;
            kv("trace", trace_path.display());
        }

        // a searched value materially below the universal floor means the
        // optimizer itself is broken
        let floor = quantumness(ensemble.dim()) - tol::LOWER_BOUND_MARGIN;
        if outcome.report.value() < floor {
            return Err(CliError::Verification(format!(
                "optimized value {} sits below the universal bound {}; internal defect",
                outcome.report.value(),
                quantumness(ensemble.dim())
            )));
        }
        return Ok(());
    }

    if args.haar {
        let seed = resolve_seed(args.seed);
        kv("seed", seed);
        let cfg = MonteCarloConfig::new(args.samples, seed)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let report = haar_average_fidelity(&ensemble, &cfg);
        kv("method", report.method());
        kv("mc_samples", args.samples);
        kv("mc_mean", report.value());
        kv(
            "mc_stderr",
            report.stderr().expect("monte carlo has a standard error"),
        );
        kv("expected_quantumness", quantumness(ensemble.dim()));
        return Ok(());
    }

    Err(CliError::Usage(
        "choose a mode: --povm FILE, --optimize, or --haar".into(),
    ))
}

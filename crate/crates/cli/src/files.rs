//! JSON file formats for ensembles and rank-1 POVMs.
//!
//! Both formats are UTF-8 JSON with an explicit `schema_version` of "1" and
//! complex numbers spelled out as `{"re": .., "im": ..}` records. Floats are
//! written in the shortest representation that round-trips f64 exactly, so
//! serialize -> deserialize is the identity on the stored amplitudes.
//! Deserialization is slightly forgiving: state norms and probability sums
//! may be off by up to 1e-9 (hand-edited files) and are renormalized.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qlab_core::ensembles::Ensemble;
use qlab_core::operators::povm::Povm;
use qlab_core::operators::state::{Projector, PureState};
use qlab_core::structured_states::SicEnsemble;

pub const SCHEMA_VERSION: &str = "1";

/// Norm / probability-sum slack accepted from text files.
const FILE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexEntry {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleFile {
    pub schema_version: String,
    pub dim: usize,
    /// State vectors as arrays of complex entries, one per signal state.
    pub states: Vec<Vec<ComplexEntry>>,
    pub probs: Vec<f64>,
    /// Present when the ensemble is a Weyl-Heisenberg orbit; the generating
    /// state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiducial: Option<Vec<ComplexEntry>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmFile {
    pub schema_version: String,
    pub dim: usize,
    /// Directions of the rank-1 elements.
    pub states: Vec<Vec<ComplexEntry>>,
    /// Element weights `g_b >= 0`; no sum constraint, completeness is
    /// checked on load instead.
    pub weights: Vec<f64>,
}

fn encode_vector(v: &DVector<Complex64>) -> Vec<ComplexEntry> {
    v.iter()
        .map(|z| ComplexEntry { re: z.re, im: z.im })
        .collect()
}

fn decode_vector(entries: &[ComplexEntry]) -> DVector<Complex64> {
    DVector::from_iterator(
        entries.len(),
        entries.iter().map(|e| Complex64::new(e.re, e.im)),
    )
}

/// Decodes a stored state vector, accepting norm drift up to `FILE_TOL`.
fn decode_state(entries: &[ComplexEntry], dim: usize, what: &str) -> Result<PureState, String> {
    if entries.len() != dim {
        return Err(format!(
            "{what} has {} entries, expected dim = {dim}",
            entries.len()
        ));
    }
    let raw = decode_vector(entries);
    let norm = raw.norm();
    if (norm - 1.0).abs() > FILE_TOL {
        return Err(format!(
            "{what} has norm {norm}, expected 1 within {FILE_TOL:e}"
        ));
    }
    PureState::new(raw.clone())
        .or_else(|_| PureState::normalized(raw))
        .map_err(|e| format!("{what}: {e}"))
}

fn check_schema(version: &str) -> Result<(), String> {
    if version != SCHEMA_VERSION {
        return Err(format!(
            "unsupported schema_version {version:?}, expected {SCHEMA_VERSION:?}"
        ));
    }
    Ok(())
}

impl EnsembleFile {
    pub fn from_ensemble(ensemble: &Ensemble) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            dim: ensemble.dim(),
            states: ensemble
                .states()
                .iter()
                .map(|p| encode_vector(p.direction().amplitudes()))
                .collect(),
            probs: ensemble.probs().to_vec(),
            fiducial: None,
        }
    }

    pub fn from_sic(sic: &SicEnsemble) -> Self {
        let mut file = Self::from_ensemble(sic.ensemble());
        file.fiducial = Some(encode_vector(sic.fiducial().amplitudes()));
        file
    }

    pub fn to_ensemble(&self) -> Result<Ensemble, String> {
        check_schema(&self.schema_version)?;
        if self.dim == 0 {
            return Err("dim must be positive".into());
        }
        if self.states.len() != self.probs.len() {
            return Err(format!(
                "{} states but {} probabilities",
                self.states.len(),
                self.probs.len()
            ));
        }
        if self.states.is_empty() {
            return Err("ensemble has no states".into());
        }
        let mut states = Vec::with_capacity(self.states.len());
        for (k, entries) in self.states.iter().enumerate() {
            states.push(Projector::from_state(&decode_state(
                entries,
                self.dim,
                &format!("states[{k}]"),
            )?));
        }
        let sum: f64 = self.probs.iter().sum();
        if (sum - 1.0).abs() > FILE_TOL {
            return Err(format!(
                "probabilities sum to {sum}, expected 1 within {FILE_TOL:e}"
            ));
        }
        let probs: Vec<f64> = if (sum - 1.0).abs() > 1e-12 {
            self.probs.iter().map(|p| p / sum).collect()
        } else {
            self.probs.clone()
        };
        Ensemble::new(states, probs).map_err(|e| e.to_string())
    }
}

impl PovmFile {
    pub fn from_povm(povm: &Povm) -> Result<Self, String> {
        let elements = povm.rank_one_elements().map_err(|e| e.to_string())?;
        Ok(Self {
            schema_version: SCHEMA_VERSION.to_string(),
            dim: povm.dim(),
            states: elements
                .iter()
                .map(|e| encode_vector(e.direction().amplitudes()))
                .collect(),
            weights: elements.iter().map(|e| e.weight()).collect(),
        })
    }

    pub fn to_povm(&self) -> Result<Povm, String> {
        check_schema(&self.schema_version)?;
        if self.dim == 0 {
            return Err("dim must be positive".into());
        }
        if self.states.len() != self.weights.len() {
            return Err(format!(
                "{} states but {} weights",
                self.states.len(),
                self.weights.len()
            ));
        }
        if self.states.is_empty() {
            return Err("POVM has no elements".into());
        }
        let mut elements = Vec::with_capacity(self.states.len());
        for (k, (entries, &weight)) in self.states.iter().zip(&self.weights).enumerate() {
            if weight < 0.0 {
                return Err(format!("weights[{k}] = {weight} is negative"));
            }
            let state = decode_state(entries, self.dim, &format!("states[{k}]"))?;
            elements.push(
                qlab_core::operators::matrix::HermitianOperator::outer(state.amplitudes())
                    .scaled(weight),
            );
        }
        Povm::with_tolerance(elements, 1e-8)
            .map_err(|e| format!("elements do not form a POVM: {e}"))
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| format!("cannot encode {}: {e}", path.display()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

//! JSON state files: `{"n_qubits": k, "labels": [...], "amplitudes": [[re, im], ...]}`.

use std::fs;
use std::path::Path;

use monoq_core::{StateVector, C64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Accepted deviation of the squared norm from 1; the amplitudes are
/// renormalized after the check.
pub const FILE_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n_qubits: usize,
    pub labels: Vec<String>,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(psi: &StateVector) -> Self {
        Self {
            n_qubits: psi.n_qubits(),
            labels: psi.labels().to_vec(),
            amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_state(self) -> CliResult<StateVector> {
        if self.n_qubits == 0 || self.n_qubits > monoq_core::state::MAX_QUBITS {
            return Err(CliError::StateFile(format!("unsupported qubit count {}", self.n_qubits)));
        }
        let expected = 1usize << self.n_qubits;
        if self.amplitudes.len() != expected {
            return Err(CliError::StateFile(format!(
                "expected {expected} amplitudes for {} qubits, found {}",
                self.n_qubits,
                self.amplitudes.len()
            )));
        }
        let amps: Vec<C64> = self.amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect();
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > FILE_NORM_TOL || norm_sq.is_nan() {
            return Err(CliError::StateFile(format!(
                "squared norm {norm_sq} is outside 1 ± {FILE_NORM_TOL:e}"
            )));
        }
        Ok(StateVector::normalized(amps, self.labels)?)
    }
}

pub fn load_state(path: &Path) -> CliResult<StateVector> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: StateFile =
        serde_json::from_str(&text).map_err(|e| CliError::StateFile(format!("{}: {e}", path.display())))?;
    file.into_state()
}

pub fn save_state(path: &Path, psi: &StateVector) -> CliResult<()> {
    let text = serde_json::to_string_pretty(&StateFile::from_state(psi))?;
    fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
}

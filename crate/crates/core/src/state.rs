//! Pure states, density matrices, partial traces and spectra.
//!
//! Basis convention: qubit 0 (label `A`) is the leftmost tensor factor, so
//! it addresses the most significant bit of a basis index.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // float methods come from `Float` when std is absent
use num_traits::Float;
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{eigh, CMatrix, C64};
use crate::seed::rng_from_seed;
use crate::{Error, Result};

/// Squared-norm tolerance for [`StateVector`].
pub const NORM_TOL: f64 = 1e-12;
/// Elementwise Hermiticity tolerance for [`DensityMatrix`].
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues in `[-CLIP_TOL, 0)` are clipped to zero; anything lower is an error.
pub const CLIP_TOL: f64 = 1e-10;
pub const SPECTRUM_SUM_TOL: f64 = 1e-9;
pub const MAX_QUBITS: usize = 10;

/// `A, B1, …, B{n-1}`
pub fn default_labels(n_qubits: usize) -> Vec<String> {
    (0..n_qubits)
        .map(|i| {
            if i == 0 {
                "A".to_string()
            } else {
                format!("B{i}")
            }
        })
        .collect()
}

fn check_labels(labels: &[String], n_qubits: usize) -> Result<()> {
    if labels.len() != n_qubits {
        return Err(Error::InvalidSubsystem(format!(
            "{} labels for {} qubits",
            labels.len(),
            n_qubits
        )));
    }
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() || labels[..i].contains(l) {
            return Err(Error::InvalidSubsystem(format!("empty or duplicate label {l:?}")));
        }
    }
    Ok(())
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::Size(format!("dimension {dim} is not 2^n with n >= 1")));
    }
    let n = dim.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::Size(format!("{n} qubits exceeds the maximum of {MAX_QUBITS}")));
    }
    Ok(n)
}

/// Sorted, deduplicated label lookup. Rejects empty and unknown selections.
fn resolve_labels(all: &[String], keep: &[&str]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::InvalidSubsystem("empty subsystem".into()));
    }
    let mut idx = Vec::with_capacity(keep.len());
    for name in keep {
        match all.iter().position(|l| l == name) {
            Some(i) => idx.push(i),
            None => return Err(Error::InvalidSubsystem(format!("unknown label {name:?}"))),
        }
    }
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

fn check_indices(keep: &[usize], n_qubits: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::InvalidSubsystem("empty subsystem".into()));
    }
    let mut k = keep.to_vec();
    k.sort_unstable();
    k.dedup();
    if k.len() != keep.len() || k[k.len() - 1] >= n_qubits {
        return Err(Error::InvalidSubsystem(format!(
            "qubit indices {keep:?} invalid for {n_qubits} qubits"
        )));
    }
    Ok(k)
}

fn complement(keep: &[usize], n_qubits: usize) -> Vec<usize> {
    (0..n_qubits).filter(|q| !keep.contains(q)).collect()
}

/// Places the bits of `value` (most significant first) on qubit `positions`.
fn scatter(value: usize, positions: &[usize], n_qubits: usize) -> usize {
    let k = positions.len();
    positions.iter().enumerate().fold(0, |acc, (t, &q)| {
        let bit = (value >> (k - 1 - t)) & 1;
        acc | (bit << (n_qubits - 1 - q))
    })
}

/// `table[i][e]`: full basis index for kept-register value `i` and
/// environment value `e`.
fn index_table(keep: &[usize], env: &[usize], n_qubits: usize) -> Vec<Vec<usize>> {
    let kept: Vec<usize> = (0..1usize << keep.len())
        .map(|i| scatter(i, keep, n_qubits))
        .collect();
    let envs: Vec<usize> = (0..1usize << env.len())
        .map(|e| scatter(e, env, n_qubits))
        .collect();
    kept.iter()
        .map(|&ki| envs.iter().map(|&ei| ki | ei).collect())
        .collect()
}

/// Normalized pure state of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    labels: Vec<String>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>, labels: Vec<String>) -> Result<Self> {
        let n = qubits_for_dim(amplitudes.len())?;
        check_labels(&labels, n)?;
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization { norm_sq });
        }
        Ok(Self { amplitudes, labels })
    }

    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let n = qubits_for_dim(amplitudes.len())?;
        Self::new(amplitudes, default_labels(n))
    }

    /// Rescales to unit norm before validating. Fails only on a zero vector
    /// or bad shape.
    pub fn normalized(mut amplitudes: Vec<C64>, labels: Vec<String>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::Normalization { norm_sq });
        }
        let inv = 1.0 / norm_sq.sqrt();
        amplitudes.iter_mut().for_each(|z| *z *= inv);
        Self::new(amplitudes, labels)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS || index >= 1 << n_qubits {
            return Err(Error::Size(format!("basis state {index} of {n_qubits} qubits")));
        }
        let mut amps = vec![C64::zero(); 1 << n_qubits];
        amps[index] = C64::new(1.0, 0.0);
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        Self::new(self.amplitudes, labels)
    }

    pub fn qubit_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::InvalidSubsystem(format!("unknown label {label:?}")))
    }

    pub fn qubit_indices(&self, labels: &[&str]) -> Result<Vec<usize>> {
        resolve_labels(&self.labels, labels)
    }

    /// Reduced state on the qubits `keep` (any order; result keeps the
    /// original qubit order).
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.n_qubits();
        let keep = check_indices(keep, n)?;
        let env = complement(&keep, n);
        let table = index_table(&keep, &env, n);
        let d = table.len();
        let mut m = CMatrix::zeros(d);
        for i in 0..d {
            for j in i..d {
                let mut acc = C64::zero();
                for (&xi, &xj) in table[i].iter().zip(&table[j]) {
                    acc += self.amplitudes[xi] * self.amplitudes[xj].conj();
                }
                m[(i, j)] = acc;
                m[(j, i)] = acc.conj();
            }
        }
        let labels = keep.iter().map(|&q| self.labels[q].clone()).collect();
        Ok(DensityMatrix { matrix: m, labels })
    }

    pub fn reduced_by_labels(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let idx = self.qubit_indices(keep)?;
        self.reduced(&idx)
    }

    /// Reorders tensor factors: new qubit `k` is old qubit `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.n_qubits();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&q| q >= n || core::mem::replace(&mut seen[q], true)) {
            return Err(Error::InvalidSubsystem(format!("{order:?} is not a permutation of {n} qubits")));
        }
        let mut amps = vec![C64::zero(); self.dim()];
        for (x, &amp) in self.amplitudes.iter().enumerate() {
            let y = order.iter().enumerate().fold(0, |acc, (k, &old)| {
                acc | (((x >> (n - 1 - old)) & 1) << (n - 1 - k))
            });
            amps[y] = amp;
        }
        let labels = order.iter().map(|&q| self.labels[q].clone()).collect();
        Ok(Self {
            amplitudes: amps,
            labels,
        })
    }

    /// Nonzero Schmidt spectrum across `part | rest`, computed on the
    /// smaller side.
    pub fn bipartition_spectrum(&self, part: &[usize]) -> Result<Spectrum> {
        let n = self.n_qubits();
        let part = check_indices(part, n)?;
        if part.len() == n {
            return Err(Error::InvalidSubsystem("partition covers every qubit".into()));
        }
        let other = complement(&part, n);
        let side = if part.len() <= other.len() { part } else { other };
        hermitian_spectrum(&self.reduced(&side)?)
    }

    /// Single-excitation amplitudes `(a, [b_1, …])` if the state lives in the
    /// one-excitation subspace within `tol`, else `None`.
    pub fn single_excitation_amplitudes(&self, tol: f64) -> Option<Vec<C64>> {
        let n = self.n_qubits();
        let mut out = vec![C64::zero(); n];
        for (x, &amp) in self.amplitudes.iter().enumerate() {
            if x.count_ones() == 1 {
                let q = n - 1 - x.trailing_zeros() as usize;
                out[q] = amp;
            } else if amp.norm() > tol {
                return None;
            }
        }
        Some(out)
    }
}

/// Hermitian, PSD, unit-trace operator on a labeled set of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    labels: Vec<String>,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix, labels: Vec<String>) -> Result<Self> {
        let n = qubits_for_dim(matrix.dim())?;
        check_labels(&labels, n)?;
        let defect = matrix.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::Hermiticity { defect });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Trace { trace: tr.re });
        }
        let min = eigh(&matrix).values[0];
        if min < -CLIP_TOL {
            return Err(Error::Positivity { min_eigenvalue: min });
        }
        Ok(Self { matrix, labels })
    }

    pub fn with_default_labels(matrix: CMatrix) -> Result<Self> {
        let n = qubits_for_dim(matrix.dim())?;
        Self::new(matrix, default_labels(n))
    }

    /// Skips validation. The caller guarantees the invariants.
    pub(crate) fn from_parts(matrix: CMatrix, labels: Vec<String>) -> Self {
        Self { matrix, labels }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `tr ρ²`
    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn partial_trace_indices(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.n_qubits();
        let keep = check_indices(keep, n)?;
        let env = complement(&keep, n);
        let table = index_table(&keep, &env, n);
        let d = table.len();
        let mut m = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = table[i]
                    .iter()
                    .zip(&table[j])
                    .map(|(&xi, &xj)| self.matrix[(xi, xj)])
                    .sum();
            }
        }
        let labels = keep.iter().map(|&q| self.labels[q].clone()).collect();
        Ok(DensityMatrix { matrix: m, labels })
    }
}

/// `|ψ⟩⟨ψ|`. Normalization is already guaranteed by [`StateVector`].
pub fn pure_to_density(psi: &StateVector) -> DensityMatrix {
    DensityMatrix {
        matrix: CMatrix::outer(psi.amplitudes()),
        labels: psi.labels().to_vec(),
    }
}

/// Reduced state on the labeled qubits `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[&str]) -> Result<DensityMatrix> {
    let idx = resolve_labels(&rho.labels, keep)?;
    rho.partial_trace_indices(&idx)
}

/// Descending eigenvalues in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Validates, clips and sorts raw eigenvalues.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Size("empty spectrum".into()));
        }
        for v in values.iter_mut() {
            if !v.is_finite() || *v > 1.0 + CLIP_TOL {
                return Err(Error::Domain {
                    value: *v,
                    lo: -CLIP_TOL,
                    hi: 1.0 + CLIP_TOL,
                });
            }
            if *v < -CLIP_TOL {
                return Err(Error::Positivity { min_eigenvalue: *v });
            }
            *v = v.clamp(0.0, 1.0);
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SPECTRUM_SUM_TOL {
            return Err(Error::Trace { trace: sum });
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Eigenvalues of a Hermitian matrix, validated as a spectrum.
pub fn matrix_spectrum(m: &CMatrix) -> Result<Spectrum> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::Hermiticity { defect });
    }
    Spectrum::new(eigh(m).values)
}

pub fn hermitian_spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    matrix_spectrum(&rho.matrix)
}

pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Haar-random pure state from normalized complex Gaussian amplitudes.
pub fn haar_random_state_with<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<StateVector> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Size(format!(
            "n_qubits {n_qubits} outside [1, {MAX_QUBITS}]"
        )));
    }
    let amps = (0..1usize << n_qubits).map(|_| complex_gaussian(rng)).collect();
    StateVector::normalized(amps, default_labels(n_qubits))
}

/// Three-qubit canonical form
/// `λ0|000⟩ + λ1 e^{iφ}|100⟩ + λ2|101⟩ + λ3|110⟩ + λ4|111⟩`.
pub fn three_qubit_canonical(lambda: [f64; 5], phase: f64) -> Result<StateVector> {
    if lambda.iter().any(|&l| l < 0.0 || l.is_nan()) {
        return Err(Error::Parameter("canonical coefficients must be nonnegative".into()));
    }
    let mut amps = vec![C64::zero(); 8];
    amps[0] = C64::new(lambda[0], 0.0);
    amps[4] = C64::from_polar(lambda[1], phase);
    amps[5] = C64::new(lambda[2], 0.0);
    amps[6] = C64::new(lambda[3], 0.0);
    amps[7] = C64::new(lambda[4], 0.0);
    StateVector::from_amplitudes(amps)
}

pub fn haar_random_state(n_qubits: usize, seed: u64) -> Result<StateVector> {
    haar_random_state_with(n_qubits, &mut rng_from_seed(seed))
}

/// Random mixed state of the given rank from the induced measure:
/// `G G† / tr(G G†)` with `G` a `2^n x rank` complex Gaussian matrix.
pub fn random_density_matrix<R: Rng + ?Sized>(
    n_qubits: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Size(format!("n_qubits {n_qubits} outside [1, {MAX_QUBITS}]")));
    }
    let d = 1usize << n_qubits;
    if rank == 0 || rank > d {
        return Err(Error::Parameter(format!("rank {rank} outside [1, {d}]")));
    }
    let g: Vec<C64> = (0..d * rank).map(|_| complex_gaussian(rng)).collect();
    let mut m = CMatrix::zeros(d);
    for i in 0..d {
        for j in i..d {
            let acc: C64 = (0..rank).map(|k| g[i * rank + k] * g[j * rank + k].conj()).sum();
            m[(i, j)] = acc;
            m[(j, i)] = acc.conj();
        }
    }
    let tr = m.trace().re;
    Ok(DensityMatrix::from_parts(m.scale(1.0 / tr), default_labels(n_qubits)))
}

//! Generalized W-class states and weighted polygamy bounds on the Rényi-α
//! entanglement of assistance (REoA).
//!
//! For a W-class state `a|10…0⟩ + Σ b_i|0…1_i…0⟩` every two-qubit marginal
//! `ρ_{AB_i}` has `C = C^a = 2|a||b_i|`, and the pair REoA is evaluated as
//! `f_α((C^a)²)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // float methods come from `Float` when std is absent
use num_traits::Float;
use num_traits::Zero;
use rand::Rng;

use crate::linalg::C64;
use crate::measures::{
    coa_two_qubit, concurrence_pure_indices, f_alpha, renyi_entanglement_pure_indices,
    renyi_entropy, AlphaMu, Concurrence, Entanglement,
};
use crate::monogamy::{weight_ladder, BoundDirection, BoundReport, OrderingProfile, WeightedTerm};
use crate::state::{
    complex_gaussian, default_labels, hermitian_spectrum, DensityMatrix, StateVector, MAX_QUBITS,
    NORM_TOL,
};
use crate::{Error, Result};

/// Purity below `1 − PURE_TOL` marks a mixed state.
pub const PURE_TOL: f64 = 1e-10;

/// Upper-bound report; `margin = rhs − lhs`, `tightness_gain = baseline − rhs`.
pub type PolygamyReport = BoundReport;

#[derive(Debug, Clone, PartialEq)]
pub struct WClassState {
    a: C64,
    b: Vec<C64>,
}

impl WClassState {
    /// `a|10…0⟩ + Σ b_i|0…1_i…0⟩` with `N = 1 + b.len()` parties, `N ≥ 3`.
    pub fn new(a: C64, b: Vec<C64>) -> Result<Self> {
        let n = b.len() + 1;
        if !(3..=MAX_QUBITS).contains(&n) {
            return Err(Error::Size(format!("W-class state needs 3..={MAX_QUBITS} parties, got {n}")));
        }
        let norm_sq = a.norm_sqr() + b.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization { norm_sq });
        }
        Ok(Self { a, b })
    }

    /// Normalized complex Gaussian amplitudes on the one-excitation subspace.
    pub fn random<R: Rng + ?Sized>(n_parties: usize, rng: &mut R) -> Result<Self> {
        if !(3..=MAX_QUBITS).contains(&n_parties) {
            return Err(Error::Size(format!("W-class state needs 3..={MAX_QUBITS} parties, got {n_parties}")));
        }
        let raw: Vec<C64> = (0..n_parties).map(|_| complex_gaussian(rng)).collect();
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let a = raw[0] / norm;
        let b = raw[1..].iter().map(|z| z / norm).collect();
        Self::new(a, b)
    }

    /// Recognises a W-class state (single-excitation support within `1e-12`).
    pub fn from_state(psi: &StateVector) -> Result<Self> {
        if psi.n_qubits() < 3 {
            return Err(Error::UnsupportedStateClass("W-class states have at least 3 qubits".into()));
        }
        let amps = psi.single_excitation_amplitudes(1e-12).ok_or_else(|| {
            Error::UnsupportedStateClass("state has support outside the one-excitation subspace".into())
        })?;
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Self::new(amps[0] / norm, amps[1..].iter().map(|z| z / norm).collect())
    }

    /// The `N`-qubit W state, all amplitudes `1/√N`.
    pub fn uniform(n_parties: usize) -> Result<Self> {
        let t = C64::new(1.0 / (n_parties as f64).sqrt(), 0.0);
        Self::new(t, vec![t; n_parties.saturating_sub(1)])
    }

    pub fn n_parties(&self) -> usize {
        self.b.len() + 1
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> &[C64] {
        &self.b
    }

    pub fn to_state_vector(&self) -> StateVector {
        let n = self.n_parties();
        let mut amps = vec![C64::zero(); 1 << n];
        amps[1 << (n - 1)] = self.a;
        for (i, &bi) in self.b.iter().enumerate() {
            amps[1 << (n - 2 - i)] = bi;
        }
        StateVector::normalized(amps, default_labels(n)).expect("W-class amplitudes are normalized")
    }

    /// `C_{A|B_{i+2}…B_{N-1}} = 2|a|√(Σ_{j>i+1}|b_j|²)` for 0-based `i`, i.e.
    /// the tail after party `B_{i+1}`.
    pub fn tail_concurrence(&self, i: usize) -> Result<f64> {
        if i >= self.b.len() {
            return Err(Error::InvalidSubsystem(format!("party index {i} out of range")));
        }
        let rest: f64 = self.b[i + 1..].iter().map(|z| z.norm_sqr()).sum();
        Ok(2.0 * self.a.norm() * rest.sqrt())
    }
}

/// Builds the W-class state and its state vector.
pub fn build_wclass(a: C64, b: Vec<C64>) -> Result<(WClassState, StateVector)> {
    let w = WClassState::new(a, b)?;
    let psi = w.to_state_vector();
    Ok((w, psi))
}

/// `C(ρ_{AB_{i+1}}) = C^a(ρ_{AB_{i+1}}) = 2|a||b_{i+1}|` for 0-based `i`.
pub fn wclass_pair_coa(w: &WClassState, i: usize) -> Result<Concurrence> {
    let bi = w
        .b
        .get(i)
        .ok_or_else(|| Error::InvalidSubsystem(format!("party index {i} out of range")))?;
    Ok(Concurrence::from_raw(2.0 * w.a.norm() * bi.norm()))
}

/// Pair REoA `f_α((C^a)²)` of a W-class marginal.
pub fn wclass_pair_reoa(w: &WClassState, i: usize, alpha: f64) -> Result<Entanglement> {
    let ca = wclass_pair_coa(w, i)?.get();
    f_alpha(ca * ca, alpha)
}

/// REoA across `A | rest` of a pure state, which equals its Rényi-α
/// entanglement.
pub fn reoa_cut(psi: &StateVector, alpha: f64) -> Result<Entanglement> {
    renyi_entanglement_pure_indices(psi, &[0], alpha)
}

/// Same as [`reoa_cut`] for a density matrix, which must be pure.
pub fn reoa_cut_mixed(rho: &DensityMatrix, alpha: f64) -> Result<Entanglement> {
    if rho.purity() < 1.0 - PURE_TOL {
        return Err(Error::UnsupportedStateClass(format!(
            "REoA across a cut is only evaluated for pure states (purity {})",
            rho.purity()
        )));
    }
    let reduced = rho.partial_trace_indices(&[0])?;
    renyi_entropy(&hermitian_spectrum(&reduced)?, alpha)
}

/// Weighted polygamy bound for a W-class state.
///
/// `lhs = [E^a_α(A|rest)]^μ`; pair terms `f_α((C^a_{AB_i})²)^μ` in the
/// profile's party order, weighted by the ladder of the profile's
/// hypothesis. The baseline is the unweighted sum.
pub fn theorem3_bound(w: &WClassState, profile: &OrderingProfile, params: AlphaMu) -> Result<PolygamyReport> {
    let params = AlphaMu::polygamy(params.alpha, params.mu)?;
    let n = w.n_parties();
    if profile.n_parties != n || profile.party_order.len() != n || profile.party_order[0] != 0 {
        return Err(Error::Parameter(
            "profile must describe this W-class state with focus A".into(),
        ));
    }
    if !profile.is_satisfied() {
        return Err(Error::Precondition(
            "ordering hypothesis is not satisfied; no bound is claimed".into(),
        ));
    }
    let psi = w.to_state_vector();
    let lhs = reoa_cut(&psi, params.alpha)?.get().powf(params.mu);
    let weights = weight_ladder(n, profile.hypothesis, params.mu)?;
    let terms = profile.party_order[1..]
        .iter()
        .zip(&weights)
        .map(|(&q, &weight)| {
            let e = wclass_pair_reoa(w, q - 1, params.alpha)?.get();
            Ok(WeightedTerm { weight, value: e.powf(params.mu) })
        })
        .collect::<Result<Vec<_>>>()?;
    let baseline = terms.iter().map(|t| t.value).sum();
    Ok(BoundReport::new(BoundDirection::Upper, lhs, terms, baseline))
}

/// `C²_{A|rest} ≤ Σ_i [C^a(ρ_{AB_i})]²` for a pure state of at most 6 qubits.
pub fn coa_polygamy_check(psi: &StateVector) -> Result<BoundReport> {
    let n = psi.n_qubits();
    if !(2..=6).contains(&n) {
        return Err(Error::Size(format!("CoA polygamy check needs 2..=6 qubits, got {n}")));
    }
    let cut = concurrence_pure_indices(psi, &[0])?.get();
    let terms = (1..n)
        .map(|b| {
            let ca = coa_two_qubit(&psi.reduced(&[0, b])?)?.get();
            Ok(WeightedTerm { weight: 1.0, value: ca * ca })
        })
        .collect::<Result<Vec<_>>>()?;
    let baseline = terms.iter().map(|t| t.value).sum();
    Ok(BoundReport::new(BoundDirection::Upper, cut * cut, terms, baseline))
}

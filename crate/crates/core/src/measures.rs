//! Entanglement measures in bits.
//!
//! Two-qubit Rényi-α entanglement is evaluated analytically as
//! `f_α(C²)`, with `C` the Wootters concurrence. The argument of `f_α` is
//! always the *squared* concurrence. [`convex_roof_oracle`] and
//! [`coa_oracle`] search over explicit pure-state decompositions and give an
//! independent check of the analytic values.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // float methods come from `Float` when std is absent
use num_traits::Float;
use num_traits::Zero;
use rand::Rng;

use crate::linalg::{eigh, orthonormalize_columns, singular_values, CMatrix, C64};
use crate::seed::rng_from_seed;
use crate::state::{complex_gaussian, DensityMatrix, Spectrum, StateVector};
use crate::{Error, Result};

/// `(√7 − 1)/2`, lower end of the α range covered by the bounds.
pub const ALPHA_THEOREM_MIN: f64 = 0.822_875_655_532_295_3;
/// `(√13 − 1)/2`, upper end of the α range covered by the bounds.
pub const ALPHA_THEOREM_MAX: f64 = 1.302_775_637_731_994_6;
/// Below this `|α − 1|` the von Neumann limit is used.
pub const VON_NEUMANN_SWITCH: f64 = 1e-6;
/// Slack on the `[0, 1]` domain of [`f_alpha`].
pub const F_ALPHA_DOMAIN_TOL: f64 = 1e-12;

/// Concurrence-type value (concurrence or concurrence of assistance).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    pub fn get(self) -> f64 {
        self.0
    }

    pub(crate) fn from_raw(c: f64) -> Self {
        Self(c)
    }
}

/// Entropy or entanglement value in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Entanglement(f64);

impl Entanglement {
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Rényi order `alpha` and power `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaMu {
    pub alpha: f64,
    pub mu: f64,
}

impl AlphaMu {
    pub fn new(alpha: f64, mu: f64) -> Result<Self> {
        if alpha <= 0.0 || !alpha.is_finite() {
            return Err(Error::Parameter(format!("alpha must be positive, got {alpha}")));
        }
        if mu < 0.0 || !mu.is_finite() {
            return Err(Error::Parameter(format!("mu must be nonnegative, got {mu}")));
        }
        Ok(Self { alpha, mu })
    }

    pub fn alpha_in_theorem_range(alpha: f64) -> bool {
        (ALPHA_THEOREM_MIN..=ALPHA_THEOREM_MAX).contains(&alpha)
    }

    fn theorem_alpha(self) -> Result<Self> {
        if Self::alpha_in_theorem_range(self.alpha) {
            Ok(self)
        } else {
            Err(Error::Parameter(format!(
                "alpha {} outside [{ALPHA_THEOREM_MIN}, {ALPHA_THEOREM_MAX}]",
                self.alpha
            )))
        }
    }

    /// Parameters for the monogamy bounds: α in range, μ ≥ 2.
    pub fn monogamy(alpha: f64, mu: f64) -> Result<Self> {
        let p = Self::new(alpha, mu)?.theorem_alpha()?;
        if mu < 2.0 {
            return Err(Error::Parameter(format!("monogamy bounds need mu >= 2, got {mu}")));
        }
        Ok(p)
    }

    /// Parameters for the polygamy bounds: α in range, 0 ≤ μ ≤ 1.
    pub fn polygamy(alpha: f64, mu: f64) -> Result<Self> {
        let p = Self::new(alpha, mu)?.theorem_alpha()?;
        if mu > 1.0 {
            return Err(Error::Parameter(format!("polygamy bounds need mu in [0, 1], got {mu}")));
        }
        Ok(p)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("alpha must be positive, got {alpha}")))
    }
}

/// Rényi entropy of a probability vector; zero entries contribute nothing.
fn entropy_of(probs: &[f64], alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < VON_NEUMANN_SWITCH {
        return probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum();
    }
    let s: f64 = probs.iter().filter(|&&p| p > 0.0).map(|&p| p.powf(alpha)).sum();
    // tiny negative values are rounding noise around a pure spectrum
    (s.log2() / (1.0 - alpha)).max(0.0)
}

pub fn von_neumann_entropy(spec: &Spectrum) -> f64 {
    entropy_of(spec.values(), 1.0)
}

/// `S_α = log2(Σ λ^α) / (1 − α)`, von Neumann entropy when `|α − 1| < 1e-6`.
pub fn renyi_entropy(spec: &Spectrum, alpha: f64) -> Result<Entanglement> {
    check_alpha(alpha)?;
    Ok(Entanglement(entropy_of(spec.values(), alpha)))
}

/// Smaller eigenvalue of a qubit state with squared concurrence `x`:
/// `(1 − √(1−x))/2`, written without cancellation.
fn minor_eigenvalue(x: f64) -> f64 {
    x / (2.0 * (1.0 + (1.0 - x).sqrt()))
}

/// `f_α(x) = log2[((1−√(1−x))/2)^α + ((1+√(1−x))/2)^α] / (1 − α)`.
///
/// `x` is a squared concurrence. Increasing on `[0, 1]` with `f_α(0) = 0`
/// and `f_α(1) = 1`.
pub fn f_alpha(x: f64, alpha: f64) -> Result<Entanglement> {
    check_alpha(alpha)?;
    if !(-F_ALPHA_DOMAIN_TOL..=1.0 + F_ALPHA_DOMAIN_TOL).contains(&x) {
        return Err(Error::Domain {
            value: x,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let x = x.clamp(0.0, 1.0);
    let p = minor_eigenvalue(x);
    Ok(Entanglement(entropy_of(&[p, 1.0 - p], alpha)))
}

/// `√(2(1 − tr ρ²))` of the reduced state on `part` (indices).
pub fn concurrence_pure_indices(psi: &StateVector, part: &[usize]) -> Result<Concurrence> {
    let spec = psi.bipartition_spectrum(part)?;
    let purity: f64 = spec.values().iter().map(|l| l * l).sum();
    Ok(Concurrence((2.0 * (1.0 - purity)).max(0.0).sqrt()))
}

/// Pure-state concurrence across `partition | rest`.
///
/// In `[0, 1]` when either side is a single qubit; larger cuts can exceed 1.
pub fn concurrence_pure(psi: &StateVector, partition: &[&str]) -> Result<Concurrence> {
    let idx = psi.qubit_indices(partition)?;
    concurrence_pure_indices(psi, &idx)
}

fn check_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() == 4 {
        Ok(())
    } else {
        Err(Error::Size(format!("expected a 4x4 two-qubit state, got {0}x{0}", rho.dim())))
    }
}

/// `σ_y ⊗ σ_y`
fn spin_flip() -> CMatrix {
    let mut yy = CMatrix::zeros(4);
    yy[(0, 3)] = C64::new(-1.0, 0.0);
    yy[(1, 2)] = C64::new(1.0, 0.0);
    yy[(2, 1)] = C64::new(1.0, 0.0);
    yy[(3, 0)] = C64::new(-1.0, 0.0);
    yy
}

/// Eigenvalues of `ρ` below this are treated as zero when forming the
/// Wootters matrix.
const RANK_CUTOFF: f64 = 1e-14;

/// Descending square roots of the eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
///
/// Computed as the singular values of `τ_ij = v_iᵀ (σ_y⊗σ_y) v_j` over the
/// subnormalized eigenvectors `v_i = √p_i e_i` of `ρ`, which avoids the
/// `√ε` noise of taking square roots of near-zero eigenvalues.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    check_two_qubit(rho)?;
    let yy = spin_flip();
    let eig = eigh(rho.matrix());
    let vs: Vec<Vec<C64>> = (0..4)
        .filter(|&k| eig.values[k] > RANK_CUTOFF)
        .map(|k| {
            let w = eig.values[k].sqrt();
            (0..4).map(|i| eig.vectors[(i, k)] * w).collect()
        })
        .collect();
    let k = vs.len();
    let mut tau = Vec::with_capacity(k * k);
    for vi in &vs {
        for vj in &vs {
            let mut acc = C64::zero();
            for r in 0..4 {
                for c in 0..4 {
                    acc += vi[r] * yy[(r, c)] * vj[c];
                }
            }
            tau.push(acc);
        }
    }
    let mut out = [0.0; 4];
    for (o, sv) in out.iter_mut().zip(singular_values(&tau, k, k)) {
        *o = sv;
    }
    Ok(out)
}

/// `max(0, λ1 − λ2 − λ3 − λ4)`
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<Concurrence> {
    let l = wootters_lambdas(rho)?;
    Ok(Concurrence((l[0] - l[1] - l[2] - l[3]).max(0.0)))
}

/// Concurrence of assistance of a two-qubit state, `Σ λ_i`.
pub fn coa_two_qubit(rho: &DensityMatrix) -> Result<Concurrence> {
    let l = wootters_lambdas(rho)?;
    Ok(Concurrence(l.iter().sum()))
}

/// `f_α(C²(ρ))`
pub fn renyi_entanglement_two_qubit(rho: &DensityMatrix, alpha: f64) -> Result<Entanglement> {
    let c = wootters_concurrence(rho)?.get();
    f_alpha(c * c, alpha)
}

/// Rényi-α entropy of the reduced state on `partition`.
pub fn renyi_entanglement_pure(
    psi: &StateVector,
    partition: &[&str],
    alpha: f64,
) -> Result<Entanglement> {
    let idx = psi.qubit_indices(partition)?;
    renyi_entanglement_pure_indices(psi, &idx, alpha)
}

pub fn renyi_entanglement_pure_indices(
    psi: &StateVector,
    part: &[usize],
    alpha: f64,
) -> Result<Entanglement> {
    check_alpha(alpha)?;
    renyi_entropy(&psi.bipartition_spectrum(part)?, alpha)
}

/// Concurrence `2|ad − bc|` of an unnormalized two-qubit vector divided by
/// its squared norm.
fn pure_pair_concurrence(v: &[C64; 4], norm_sq: f64) -> f64 {
    2.0 * (v[0] * v[3] - v[1] * v[2]).norm() / norm_sq
}

/// Rényi entropy of qubit A for an unnormalized two-qubit vector, from the
/// closed-form 2x2 reduced spectrum.
fn pure_pair_entropy(v: &[C64; 4], norm_sq: f64, alpha: f64) -> f64 {
    let p00 = (v[0].norm_sqr() + v[1].norm_sqr()) / norm_sq;
    let p11 = (v[2].norm_sqr() + v[3].norm_sqr()) / norm_sq;
    let off = (v[0] * v[2].conj() + v[1] * v[3].conj()) / norm_sq;
    let disc = ((p00 - p11) * (p00 - p11) + 4.0 * off.norm_sqr()).sqrt();
    let hi = ((p00 + p11 + disc) / 2.0).min(1.0);
    entropy_of(&[hi, (1.0 - hi).max(0.0)], alpha)
}

const MAX_DECOMPOSITION: usize = 4;
const LOCAL_STEP_START: f64 = 0.3;
const LOCAL_STEP_DECAY: f64 = 0.7;
const LOCAL_STEP_BLOCKS: usize = 25;

/// Search over pure-state decompositions `ρ = Σ p_i |ψ_i⟩⟨ψ_i|`.
///
/// A decomposition of size `n` is `|ψ̃_i⟩ = Σ_k U_ik √λ_k |v_k⟩` for an
/// `n x rank` isometry `U`. The first half of the trials draws Haar
/// isometries; the second half perturbs the incumbent and re-orthonormalizes
/// with a geometrically shrinking step. Every trial is a valid
/// decomposition, so the optimum found is a one-sided bound.
struct DecompositionSearch {
    /// `√λ_k |v_k⟩` for the nonzero eigenpairs.
    weighted: Vec<[C64; 4]>,
}

impl DecompositionSearch {
    fn new(rho: &DensityMatrix) -> Result<Self> {
        check_two_qubit(rho)?;
        let eig = eigh(rho.matrix());
        let weighted = eig
            .values
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 1e-14)
            .map(|(k, &l)| {
                let s = l.sqrt();
                let mut v = [C64::zero(); 4];
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi = eig.vectors[(i, k)] * s;
                }
                v
            })
            .collect();
        Ok(Self { weighted })
    }

    fn rank(&self) -> usize {
        self.weighted.len()
    }

    /// `Σ p_i g(ψ_i)` for the isometry `u` (`n x rank`, row-major).
    fn average(&self, u: &[C64], n: usize, g: &impl Fn(&[C64; 4], f64) -> f64) -> f64 {
        let r = self.rank();
        let mut total = 0.0;
        for i in 0..n {
            let mut v = [C64::zero(); 4];
            for k in 0..r {
                let uik = u[i * r + k];
                for (vj, wj) in v.iter_mut().zip(&self.weighted[k]) {
                    *vj += uik * wj;
                }
            }
            let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if p > 1e-300 {
                total += p * g(&v, p);
            }
        }
        total
    }

    fn random_isometry<R: Rng>(&self, n: usize, rng: &mut R) -> Vec<C64> {
        let r = self.rank();
        loop {
            let mut u: Vec<C64> = (0..n * r).map(|_| complex_gaussian(rng)).collect();
            if orthonormalize_columns(&mut u, n, r) {
                return u;
            }
        }
    }

    fn run<R: Rng>(
        &self,
        n_trials: usize,
        rng: &mut R,
        g: impl Fn(&[C64; 4], f64) -> f64,
        minimize: bool,
    ) -> f64 {
        let r = self.rank();
        if r == 1 {
            let v = self.weighted[0];
            let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            return g(&v, p);
        }
        let better = |new: f64, old: f64| if minimize { new < old } else { new > old };
        let sizes: Vec<usize> = (r.max(2)..=MAX_DECOMPOSITION).collect();
        let n_global = n_trials.div_ceil(2);
        let n_local = n_trials - n_global;
        let block = (n_local / LOCAL_STEP_BLOCKS).max(1);

        let mut best = if minimize { f64::INFINITY } else { f64::NEG_INFINITY };
        let mut best_u: Vec<C64> = Vec::new();
        let mut best_n = sizes[0];
        for t in 0..n_global {
            let n = sizes[t % sizes.len()];
            let u = self.random_isometry(n, rng);
            let val = self.average(&u, n, &g);
            if better(val, best) {
                best = val;
                best_u = u;
                best_n = n;
            }
        }
        let mut step = LOCAL_STEP_START;
        for t in 0..n_local {
            if t > 0 && t % block == 0 {
                step *= LOCAL_STEP_DECAY;
            }
            let mut u: Vec<C64> = best_u
                .iter()
                .map(|&z| z + complex_gaussian(rng) * step)
                .collect();
            if !orthonormalize_columns(&mut u, best_n, r) {
                continue;
            }
            let val = self.average(&u, best_n, &g);
            if better(val, best) {
                best = val;
                best_u = u;
            }
        }
        best
    }
}

/// Upper estimate of the convex-roof Rényi-α entanglement of a two-qubit
/// state: the best average `Σ p_i E_α(ψ_i)` over `n_trials` decompositions of
/// size up to 4. Exact for pure input.
pub fn convex_roof_oracle(
    rho: &DensityMatrix,
    alpha: f64,
    n_trials: usize,
    seed: u64,
) -> Result<Entanglement> {
    check_alpha(alpha)?;
    if n_trials == 0 {
        return Err(Error::Parameter("n_trials must be at least 1".into()));
    }
    let search = DecompositionSearch::new(rho)?;
    let mut rng = rng_from_seed(seed);
    let best = search.run(n_trials, &mut rng, |v, p| pure_pair_entropy(v, p, alpha), true);
    Ok(Entanglement(best))
}

/// Lower estimate of the concurrence of assistance: the best average
/// `Σ p_i C(ψ_i)` over `n_trials` decompositions.
pub fn coa_oracle(rho: &DensityMatrix, n_trials: usize, seed: u64) -> Result<Concurrence> {
    if n_trials == 0 {
        return Err(Error::Parameter("n_trials must be at least 1".into()));
    }
    let search = DecompositionSearch::new(rho)?;
    let mut rng = rng_from_seed(seed);
    Ok(Concurrence(search.run(n_trials, &mut rng, pure_pair_concurrence, false)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{haar_random_state, pure_to_density, random_density_matrix};
    use alloc::vec;

    const ROUNDED_ALPHA: f64 = 0.823;
    const S: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn bell_rho() -> DensityMatrix {
        pure_to_density(&StateVector::from_amplitudes(vec![c(S), c(0.0), c(0.0), c(S)]).unwrap())
    }

    fn w_state() -> StateVector {
        let t = 1.0 / 3f64.sqrt();
        let mut a = vec![c(0.0); 8];
        a[4] = c(t);
        a[2] = c(t);
        a[1] = c(t);
        StateVector::from_amplitudes(a).unwrap()
    }

    /// λ0|000⟩ + λ1|100⟩ + λ2|101⟩ + λ3|110⟩ + λ4|111⟩ with the parameters of
    /// the worked monogamy example.
    fn schmidt_example() -> StateVector {
        let l = 6f64.sqrt() / 6.0;
        let mut a = vec![c(0.0); 8];
        a[0] = c(0.5);
        a[4] = c(0.5);
        a[5] = c(l);
        a[6] = c(l);
        a[7] = c(l);
        StateVector::from_amplitudes(a).unwrap()
    }

    #[test]
    fn theorem_alpha_constants() {
        assert!((ALPHA_THEOREM_MIN - (7f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert!((ALPHA_THEOREM_MAX - (13f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn renyi_entropy_examples() {
        for alpha in [0.5, 0.823, 1.0, 1.3, 2.0] {
            let pure = Spectrum::new(vec![1.0, 0.0]).unwrap();
            assert_eq!(renyi_entropy(&pure, alpha).unwrap().get(), 0.0);
            let mixed = Spectrum::new(vec![0.5, 0.5]).unwrap();
            assert!((renyi_entropy(&mixed, alpha).unwrap().get() - 1.0).abs() < 1e-14);
        }
        let w = Spectrum::new(vec![2.0 / 3.0, 1.0 / 3.0]).unwrap();
        assert!((renyi_entropy(&w, ROUNDED_ALPHA).unwrap().get() - 0.932108).abs() < 1e-6);
        assert!(matches!(renyi_entropy(&w, 0.0), Err(Error::Parameter(_))));
        assert!(matches!(renyi_entropy(&w, -1.0), Err(Error::Parameter(_))));
    }

    #[test]
    fn renyi_entropy_continuity_at_one() {
        let s = Spectrum::new(vec![0.6, 0.25, 0.15]).unwrap();
        let vn = von_neumann_entropy(&s);
        for alpha in [1.0 - 1e-7, 1.0 + 1e-7, 1.0 - 2e-6, 1.0 + 2e-6] {
            assert!((renyi_entropy(&s, alpha).unwrap().get() - vn).abs() < 1e-5);
        }
    }

    #[test]
    fn f_alpha_examples() {
        for alpha in [0.8229, 1.0, 1.3027] {
            assert_eq!(f_alpha(0.0, alpha).unwrap().get(), 0.0);
            assert!((f_alpha(1.0, alpha).unwrap().get() - 1.0).abs() < 1e-14);
        }
        assert!((f_alpha(0.5, ROUNDED_ALPHA).unwrap().get() - 0.654205).abs() < 1e-6);
        assert!((f_alpha(4.0 / 9.0, ROUNDED_ALPHA).unwrap().get() - 0.607218).abs() < 1e-6);
        assert!((f_alpha(1.0 / 6.0, ROUNDED_ALPHA).unwrap().get() - 0.318620).abs() < 1e-6);
        assert!(matches!(f_alpha(1.1, 0.9), Err(Error::Domain { .. })));
        assert!(matches!(f_alpha(-0.01, 0.9), Err(Error::Domain { .. })));
        assert!(f_alpha(1.0 + 1e-13, 0.9).is_ok());
    }

    #[test]
    fn f_alpha_matches_qubit_entropy() {
        // f_α(C²) is the entropy of a qubit marginal with concurrence C
        let psi = haar_random_state(3, 21).unwrap();
        let cut = concurrence_pure(&psi, &["A"]).unwrap().get();
        for alpha in [0.85, 1.0, 1.25] {
            let e = renyi_entanglement_pure(&psi, &["A"], alpha).unwrap().get();
            assert!((f_alpha(cut * cut, alpha).unwrap().get() - e).abs() < 1e-12);
        }
    }

    #[test]
    fn concurrence_pure_examples() {
        let prod = StateVector::basis(3, 0).unwrap();
        assert!(concurrence_pure(&prod, &["A"]).unwrap().get() < 1e-10);
        let bell = StateVector::from_amplitudes(vec![c(S), c(0.0), c(0.0), c(S)]).unwrap();
        assert!((concurrence_pure(&bell, &["A"]).unwrap().get() - 1.0).abs() < 1e-12);
        let ex = schmidt_example();
        assert!((concurrence_pure(&ex, &["A"]).unwrap().get() - 0.5f64.sqrt()).abs() < 1e-12);
        // the cut is symmetric
        assert!((concurrence_pure(&ex, &["B1", "B2"]).unwrap().get() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(matches!(concurrence_pure(&ex, &["A", "B1", "B2"]), Err(Error::InvalidSubsystem(_))));
        assert!(matches!(concurrence_pure(&ex, &[]), Err(Error::InvalidSubsystem(_))));
    }

    #[test]
    fn example_state_marginal_spectrum() {
        let ex = schmidt_example();
        let s = crate::state::hermitian_spectrum(&ex.reduced(&[0]).unwrap()).unwrap();
        assert!((s.values()[0] - 0.853553).abs() < 1e-6);
        assert!((s.values()[1] - 0.146447).abs() < 1e-6);
    }

    #[test]
    fn wootters_examples() {
        let mixed = DensityMatrix::with_default_labels(CMatrix::identity(4).scale(0.25)).unwrap();
        assert!(wootters_concurrence(&mixed).unwrap().get() < 1e-12);
        assert!((wootters_concurrence(&bell_rho()).unwrap().get() - 1.0).abs() < 1e-12);
        let w_ab = w_state().reduced(&[0, 1]).unwrap();
        assert!((wootters_concurrence(&w_ab).unwrap().get() - 2.0 / 3.0).abs() < 1e-12);
        assert!((coa_two_qubit(&w_ab).unwrap().get() - 2.0 / 3.0).abs() < 1e-12);
        let one = DensityMatrix::with_default_labels(CMatrix::identity(2).scale(0.5)).unwrap();
        assert!(matches!(wootters_concurrence(&one), Err(Error::Size(_))));
        assert!(matches!(coa_two_qubit(&one), Err(Error::Size(_))));
    }

    #[test]
    fn coa_equals_concurrence_on_pure_states() {
        for seed in 0..20 {
            let psi = haar_random_state(2, seed).unwrap();
            let rho = pure_to_density(&psi);
            let c = wootters_concurrence(&rho).unwrap().get();
            let ca = coa_two_qubit(&rho).unwrap().get();
            let cp = concurrence_pure(&psi, &["A"]).unwrap().get();
            assert!((c - ca).abs() < 1e-7, "{c} vs {ca}");
            assert!((c - cp).abs() < 1e-7);
        }
    }

    #[test]
    fn coa_dominates_concurrence() {
        let mut rng = rng_from_seed(8);
        for _ in 0..300 {
            let rank = rng.random_range(1..=4);
            let rho = random_density_matrix(2, rank, &mut rng).unwrap();
            assert!(coa_two_qubit(&rho).unwrap().get() >= wootters_concurrence(&rho).unwrap().get() - 1e-12);
        }
    }

    #[test]
    fn renyi_entanglement_two_qubit_examples() {
        let prod = pure_to_density(&StateVector::basis(2, 1).unwrap());
        assert!(renyi_entanglement_two_qubit(&prod, 0.9).unwrap().get() < 1e-12);
        assert!((renyi_entanglement_two_qubit(&bell_rho(), 1.3).unwrap().get() - 1.0).abs() < 1e-10);
        let ab = schmidt_example().reduced(&[0, 1]).unwrap();
        assert!((renyi_entanglement_two_qubit(&ab, ROUNDED_ALPHA).unwrap().get() - 0.318620).abs() < 1e-6);
    }

    #[test]
    fn two_qubit_analytic_matches_pure_formula() {
        for seed in 100..130 {
            let psi = haar_random_state(2, seed).unwrap();
            let rho = pure_to_density(&psi);
            for alpha in [0.8229, 1.0, 1.3027] {
                let a = renyi_entanglement_two_qubit(&rho, alpha).unwrap().get();
                let b = renyi_entanglement_pure(&psi, &["A"], alpha).unwrap().get();
                assert!((a - b).abs() < 1e-10, "seed {seed} alpha {alpha}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn renyi_entanglement_pure_examples() {
        let prod = StateVector::basis(3, 5).unwrap();
        assert!(renyi_entanglement_pure(&prod, &["A"], 0.9).unwrap().get() < 1e-12);
        let e = renyi_entanglement_pure(&schmidt_example(), &["A"], ROUNDED_ALPHA).unwrap().get();
        assert!((e - 0.654205).abs() < 1e-6);
        let e = renyi_entanglement_pure(&w_state(), &["A"], ROUNDED_ALPHA).unwrap().get();
        assert!((e - 0.932108).abs() < 1e-6);
    }

    #[test]
    fn oracle_pure_and_bell() {
        let psi = haar_random_state(2, 4).unwrap();
        let rho = pure_to_density(&psi);
        let exact = renyi_entanglement_pure(&psi, &["A"], 0.9).unwrap().get();
        assert!((convex_roof_oracle(&rho, 0.9, 1, 0).unwrap().get() - exact).abs() < 1e-12);
        assert!((convex_roof_oracle(&bell_rho(), 1.2, 3, 0).unwrap().get() - 1.0).abs() < 1e-12);
        assert!(matches!(convex_roof_oracle(&rho, 0.9, 0, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn oracle_w_marginal_converges() {
        let w_ab = w_state().reduced(&[0, 1]).unwrap();
        let est = convex_roof_oracle(&w_ab, ALPHA_THEOREM_MIN, 10_000, 17).unwrap().get();
        let exact = f_alpha(4.0 / 9.0, ALPHA_THEOREM_MIN).unwrap().get();
        assert!(est >= exact - 1e-9 && est - exact < 1e-3, "{est} vs {exact}");
        let ca = coa_oracle(&w_ab, 4_000, 3).unwrap().get();
        assert!((ca - 2.0 / 3.0).abs() < 1e-3 && ca <= 2.0 / 3.0 + 1e-9);
    }

    #[test]
    fn coa_oracle_random_rank_two() {
        let mut rng = rng_from_seed(77);
        for k in 0..5 {
            let rho = random_density_matrix(2, 2, &mut rng).unwrap();
            let exact = coa_two_qubit(&rho).unwrap().get();
            let est = coa_oracle(&rho, 10_000, k).unwrap().get();
            assert!(est <= exact + 1e-9 && exact - est < 1e-3, "{est} vs {exact}");
        }
    }

    #[test]
    fn alpha_mu_modes() {
        assert!(AlphaMu::monogamy(0.9, 2.0).is_ok());
        assert!(AlphaMu::monogamy(0.9, 1.5).is_err());
        assert!(AlphaMu::monogamy(0.8, 2.0).is_err());
        assert!(AlphaMu::polygamy(1.3027, 0.0).is_ok());
        assert!(AlphaMu::polygamy(1.31, 0.5).is_err());
        assert!(AlphaMu::polygamy(1.0, 1.5).is_err());
        assert!(AlphaMu::new(0.0, 1.0).is_err());
        assert!(AlphaMu::new(1.0, -1.0).is_err());
    }
}

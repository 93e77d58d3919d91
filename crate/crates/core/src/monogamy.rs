//! Weighted monogamy bounds on `E_α^μ(A|B_1…B_{N-1})`.
//!
//! The weights come from the ladder `(2^μ − 1)^k`. Which ladder applies is
//! decided by comparing each pair concurrence `C_{AB_i}` with the tail
//! concurrence `C_{A|B_{i+1}…B_{N-1}}` ([`detect_ordering`]).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)] // float methods come from `Float` when std is absent
use num_traits::Float;

use crate::measures::{
    concurrence_pure_indices, renyi_entanglement_pure_indices, renyi_entanglement_two_qubit,
    wootters_concurrence, AlphaMu,
};
use crate::state::StateVector;
use crate::{Error, Result};

/// Tolerance of the ordering comparisons; ties count as satisfied.
pub const ORDERING_TOL: f64 = 1e-12;
/// Concurrences below this count as a product cut.
pub const PRODUCT_CUT_TOL: f64 = 1e-10;
/// Amplitudes outside the one-excitation subspace below this are ignored
/// when recognising W-class states.
pub const WCLASS_TOL: f64 = 1e-12;
/// Slack of the scalar weight inequality.
pub const SCALAR_TOL: f64 = 1e-12;

/// Which ordering hypothesis a state satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// `C_{AB_i} ≥ C_{A|B_{i+1}…}` for every `i = 1..N-2`.
    Full,
    /// `≥` for `i ≤ m`, `≤` for `m < j ≤ N-2`, with `1 ≤ m ≤ N-3`.
    Split(usize),
    Unsatisfied,
}

/// How the tail concurrences were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSource {
    /// Three qubits: the only tail is itself a pair concurrence.
    ThreeQubit,
    /// Generalized W-class: `2|a|√(Σ_{j>i}|b_j|²)`.
    WClass,
    /// `A` is in a product state with the rest, so every tail vanishes.
    ProductCut,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Full => f.write_str("full"),
            Self::Split(m) => write!(f, "split({m})"),
            Self::Unsatisfied => f.write_str("unsatisfied"),
        }
    }
}

impl fmt::Display for TailSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ThreeQubit => "three-qubit",
            Self::WClass => "w-class",
            Self::ProductCut => "product-cut",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingCondition {
    pub pair: f64,
    pub tail: f64,
    pub ge: bool,
    pub le: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderingProfile {
    pub n_parties: usize,
    pub focus: String,
    /// Qubit indices `[A, B_1, …, B_{N-1}]` in the order the bound uses.
    pub party_order: Vec<usize>,
    pub tail_source: TailSource,
    /// `C_{A|B_1…B_{N-1}}`
    pub cut_concurrence: f64,
    /// `C_{AB_i}` for `i = 1..N-1`.
    pub pair_concurrences: Vec<f64>,
    /// `C_{A|B_{i+1}…B_{N-1}}` for `i = 1..N-2`.
    pub tail_concurrences: Vec<f64>,
    pub hypothesis: Hypothesis,
}

impl OrderingProfile {
    pub fn conditions(&self) -> Vec<OrderingCondition> {
        self.pair_concurrences
            .iter()
            .zip(&self.tail_concurrences)
            .map(|(&pair, &tail)| OrderingCondition {
                pair,
                tail,
                ge: pair >= tail - ORDERING_TOL,
                le: pair <= tail + ORDERING_TOL,
            })
            .collect()
    }

    pub fn is_satisfied(&self) -> bool {
        self.hypothesis != Hypothesis::Unsatisfied
    }
}

/// Hypothesis implied by pair and tail concurrences (`tails.len() == N-2`).
pub fn classify_ordering(pairs: &[f64], tails: &[f64]) -> Hypothesis {
    let ge: Vec<bool> = pairs.iter().zip(tails).map(|(p, t)| *p >= t - ORDERING_TOL).collect();
    let le: Vec<bool> = pairs.iter().zip(tails).map(|(p, t)| *p <= t + ORDERING_TOL).collect();
    if ge.iter().all(|&g| g) {
        return Hypothesis::Full;
    }
    let n_parties = pairs.len() + 1;
    (1..=n_parties.saturating_sub(3))
        .rev()
        .find(|&m| ge[..m].iter().all(|&g| g) && le[m..].iter().all(|&l| l))
        .map_or(Hypothesis::Unsatisfied, Hypothesis::Split)
}

/// Weights `(2^μ−1)^k` of the bound selected by `hypothesis`, one per pair
/// `AB_1 … AB_{N-1}`.
///
/// - `Full`: `(2^μ−1)^{i−1}`.
/// - `Split(m)`: `(2^μ−1)^{i−1}` for `i ≤ m`, `(2^μ−1)^{m+1}` for
///   `m < j ≤ N−2` and `(2^μ−1)^m` for the last party.
pub fn weight_ladder(n_parties: usize, hypothesis: Hypothesis, mu: f64) -> Result<Vec<f64>> {
    if mu < 0.0 || !mu.is_finite() {
        return Err(Error::Parameter(format!("mu must be nonnegative, got {mu}")));
    }
    let r = 2f64.powf(mu) - 1.0;
    match hypothesis {
        Hypothesis::Full => {
            if n_parties < 3 {
                return Err(Error::Parameter(format!("need N >= 3, got {n_parties}")));
            }
            Ok((0..n_parties - 1).map(|k| r.powi(k as i32)).collect())
        }
        Hypothesis::Split(m) => {
            if n_parties < 4 || m < 1 || m > n_parties - 3 {
                return Err(Error::Parameter(format!(
                    "split index {m} invalid for N = {n_parties} (need N >= 4, 1 <= m <= N-3)"
                )));
            }
            let mut w: Vec<f64> = (0..m).map(|k| r.powi(k as i32)).collect();
            w.extend(core::iter::repeat_n(r.powi(m as i32 + 1), n_parties - 2 - m));
            w.push(r.powi(m as i32));
            Ok(w)
        }
        Hypothesis::Unsatisfied => Err(Error::Parameter(
            "no weight ladder for an unsatisfied ordering hypothesis".into(),
        )),
    }
}

fn ordering_with(psi: &StateVector, focus: usize, others: Vec<usize>, sort_three: bool) -> Result<OrderingProfile> {
    let n = psi.n_qubits();
    let mut pairs = others
        .iter()
        .map(|&b| Ok(wootters_concurrence(&psi.reduced(&[focus, b])?)?.get()))
        .collect::<Result<Vec<f64>>>()?;
    let mut others = others;
    if n == 3 && sort_three && pairs[0] < pairs[1] {
        others.swap(0, 1);
        pairs.swap(0, 1);
    }
    let cut = concurrence_pure_indices(psi, &[focus])?.get();

    let mut party_order = Vec::with_capacity(n);
    party_order.push(focus);
    party_order.extend_from_slice(&others);

    let (tails, source) = if n == 3 {
        (alloc::vec![pairs[1]], TailSource::ThreeQubit)
    } else if cut < PRODUCT_CUT_TOL {
        (alloc::vec![0.0; n - 2], TailSource::ProductCut)
    } else if let Some(amps) = psi.permuted(&party_order)?.single_excitation_amplitudes(WCLASS_TOL) {
        let a = amps[0].norm();
        let tails = (1..n - 1)
            .map(|i| {
                let rest: f64 = amps[i + 1..].iter().map(|z| z.norm_sqr()).sum();
                2.0 * a * rest.sqrt()
            })
            .collect();
        (tails, TailSource::WClass)
    } else {
        return Err(Error::UnsupportedStateClass(format!(
            "tail concurrences C_(A|B_i+1...) of a {n}-qubit state are only available for \
             three qubits, generalized W-class states, or a product cut"
        )));
    };

    let hypothesis = classify_ordering(&pairs, &tails);
    Ok(OrderingProfile {
        n_parties: n,
        focus: psi.labels()[focus].clone(),
        party_order,
        tail_source: source,
        cut_concurrence: cut,
        pair_concurrences: pairs,
        tail_concurrences: tails,
        hypothesis,
    })
}

/// Ordering profile of a pure state with `focus` as party `A`.
///
/// The remaining qubits keep their order, except for three qubits where
/// they are relabeled so that `C_{AB} ≥ C_{AC}`.
pub fn detect_ordering(psi: &StateVector, focus: &str) -> Result<OrderingProfile> {
    let n = psi.n_qubits();
    if n < 3 {
        return Err(Error::Size(format!("ordering needs at least 3 qubits, got {n}")));
    }
    let f = psi.qubit_index(focus)?;
    let others = (0..n).filter(|&q| q != f).collect();
    ordering_with(psi, f, others, true)
}

/// Profile for an explicit order of the `B` parties (qubit indices).
pub fn ordering_for_parties(psi: &StateVector, focus: &str, parties: &[usize]) -> Result<OrderingProfile> {
    let n = psi.n_qubits();
    if n < 3 {
        return Err(Error::Size(format!("ordering needs at least 3 qubits, got {n}")));
    }
    let f = psi.qubit_index(focus)?;
    let mut check: Vec<usize> = parties.to_vec();
    check.push(f);
    check.sort_unstable();
    if check != (0..n).collect::<Vec<_>>() {
        return Err(Error::InvalidSubsystem(format!("{parties:?} are not the parties other than {focus}")));
    }
    ordering_with(psi, f, parties.to_vec(), false)
}

/// Every ordering of the `B` parties whose hypothesis holds. Limited to at
/// most 6 parties.
pub fn satisfied_reorderings(psi: &StateVector, focus: &str) -> Result<Vec<OrderingProfile>> {
    let n = psi.n_qubits();
    if n > 6 {
        return Err(Error::Size(format!("reordering search limited to 6 parties, got {n}")));
    }
    let f = psi.qubit_index(focus)?;
    let mut others: Vec<usize> = (0..n).filter(|&q| q != f).collect();
    let mut out = Vec::new();
    loop {
        let p = ordering_for_parties(psi, focus, &others)?;
        if p.is_satisfied() {
            out.push(p);
        }
        if !next_permutation(&mut others) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundDirection {
    /// `lhs ≥ rhs` (monogamy).
    Lower,
    /// `lhs ≤ rhs` (polygamy).
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedTerm {
    pub weight: f64,
    pub value: f64,
}

/// One evaluated inequality.
///
/// `margin` is positive when the inequality holds strictly;
/// `tightness_gain` is positive when the weighted bound is tighter than the
/// unweighted baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub direction: BoundDirection,
    pub lhs: f64,
    pub terms: Vec<WeightedTerm>,
    pub rhs: f64,
    pub margin: f64,
    pub baseline_rhs: f64,
    pub tightness_gain: f64,
}

impl BoundReport {
    pub fn new(direction: BoundDirection, lhs: f64, terms: Vec<WeightedTerm>, baseline_rhs: f64) -> Self {
        let rhs: f64 = terms.iter().map(|t| t.weight * t.value).sum();
        let (margin, tightness_gain) = match direction {
            BoundDirection::Lower => (lhs - rhs, rhs - baseline_rhs),
            BoundDirection::Upper => (rhs - lhs, baseline_rhs - rhs),
        };
        Self {
            direction,
            lhs,
            terms,
            rhs,
            margin,
            baseline_rhs,
            tightness_gain,
        }
    }

    pub fn holds(&self, tolerance: f64) -> bool {
        self.margin >= -tolerance
    }

    pub fn weights(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.weight).collect()
    }
}

/// `C²_{A|B_1…} ≥ Σ_i C²_{AB_i}` with `A` the first qubit.
pub fn ckw_check(psi: &StateVector) -> Result<BoundReport> {
    let n = psi.n_qubits();
    if n < 2 {
        return Err(Error::Size("CKW check needs at least 2 qubits".into()));
    }
    let cut = concurrence_pure_indices(psi, &[0])?.get();
    let terms = (1..n)
        .map(|b| {
            let c = wootters_concurrence(&psi.reduced(&[0, b])?)?.get();
            Ok(WeightedTerm { weight: 1.0, value: c * c })
        })
        .collect::<Result<Vec<_>>>()?;
    let baseline = terms.iter().map(|t| t.value).sum();
    Ok(BoundReport::new(BoundDirection::Lower, cut * cut, terms, baseline))
}

/// `C^x_{A|BC} ≥ C^x_{AB} + (2^{x/2} − 1) C^x_{AC}` for a three-qubit pure
/// state, with `B` and `C` swapped if needed so that `C_{AB} ≥ C_{AC}`.
/// The baseline is the unweighted `C^x_{AB} + C^x_{AC}`.
pub fn lemma1_check(psi: &StateVector, x: f64) -> Result<BoundReport> {
    if psi.n_qubits() != 3 {
        return Err(Error::Size(format!("lemma check needs 3 qubits, got {}", psi.n_qubits())));
    }
    if x < 2.0 || !x.is_finite() {
        return Err(Error::Parameter(format!("power must be >= 2, got {x}")));
    }
    let cut = concurrence_pure_indices(psi, &[0])?.get();
    let mut cab = wootters_concurrence(&psi.reduced(&[0, 1])?)?.get();
    let mut cac = wootters_concurrence(&psi.reduced(&[0, 2])?)?.get();
    if cab < cac {
        core::mem::swap(&mut cab, &mut cac);
    }
    let terms = alloc::vec![
        WeightedTerm { weight: 1.0, value: cab.powf(x) },
        WeightedTerm { weight: 2f64.powf(x / 2.0) - 1.0, value: cac.powf(x) },
    ];
    let baseline = cab.powf(x) + cac.powf(x);
    Ok(BoundReport::new(BoundDirection::Lower, cut.powf(x), terms, baseline))
}

/// Weighted monogamy bound for a pure state.
///
/// `lhs = E_α^μ(A|rest)` from the reduced spectrum; the pair terms are
/// `E_α^μ(ρ_{AB_i}) = f_α(C²_{AB_i})^μ` in the profile's party order. The
/// baseline is the unweighted sum of the same pair terms.
pub fn theorem_bound(psi: &StateVector, profile: &OrderingProfile, params: AlphaMu) -> Result<BoundReport> {
    let params = AlphaMu::monogamy(params.alpha, params.mu)?;
    if profile.n_parties != psi.n_qubits() || profile.party_order.len() != psi.n_qubits() {
        return Err(Error::Parameter("profile does not match the state".into()));
    }
    if !profile.is_satisfied() {
        return Err(Error::Precondition(
            "ordering hypothesis is not satisfied; no bound is claimed".into(),
        ));
    }
    let focus = profile.party_order[0];
    let lhs = renyi_entanglement_pure_indices(psi, &[focus], params.alpha)?
        .get()
        .powf(params.mu);
    let weights = weight_ladder(profile.n_parties, profile.hypothesis, params.mu)?;
    let terms = profile.party_order[1..]
        .iter()
        .zip(&weights)
        .map(|(&b, &weight)| {
            let e = renyi_entanglement_two_qubit(&psi.reduced(&[focus, b])?, params.alpha)?.get();
            Ok(WeightedTerm { weight, value: e.powf(params.mu) })
        })
        .collect::<Result<Vec<_>>>()?;
    let baseline = terms.iter().map(|t| t.value).sum();
    Ok(BoundReport::new(BoundDirection::Lower, lhs, terms, baseline))
}

/// Margin of `(1+t)^x ≥ 1 + (2^x−1) t^x`, which holds for `x ≥ 1` and
/// reverses for `0 ≤ x ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarCheck {
    /// `(1+t)^x − 1 − (2^x−1) t^x`
    pub margin: f64,
    /// Sign matches the regime of `x` within [`SCALAR_TOL`].
    pub holds: bool,
}

pub fn scalar_weight_inequality(t: f64, x: f64) -> Result<ScalarCheck> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain { value: t, lo: 0.0, hi: 1.0 });
    }
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Parameter(format!("exponent must be nonnegative, got {x}")));
    }
    let margin = (1.0 + t).powf(x) - 1.0 - (2f64.powf(x) - 1.0) * t.powf(x);
    let ge_ok = x < 1.0 || margin >= -SCALAR_TOL;
    let le_ok = x > 1.0 || margin <= SCALAR_TOL;
    Ok(ScalarCheck { margin, holds: ge_ok && le_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::measures::ALPHA_THEOREM_MIN;
    use crate::state::haar_random_state;
    use alloc::vec;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn w_state() -> StateVector {
        let t = 1.0 / 3f64.sqrt();
        let mut a = vec![c(0.0); 8];
        a[4] = c(t);
        a[2] = c(t);
        a[1] = c(t);
        StateVector::from_amplitudes(a).unwrap()
    }

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
    fn ladder_examples() {
        assert_eq!(weight_ladder(4, Hypothesis::Split(1), 2.0).unwrap(), vec![1.0, 9.0, 3.0]);
        assert_eq!(weight_ladder(3, Hypothesis::Full, 2.0).unwrap(), vec![1.0, 3.0]);
        assert_eq!(weight_ladder(5, Hypothesis::Full, 0.0).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(weight_ladder(6, Hypothesis::Split(2), 1.0).unwrap(), vec![1.0; 5]);
        // m = 2, N = 6, r = 3: [1, 3 | 27, 27 | 9]
        assert_eq!(
            weight_ladder(6, Hypothesis::Split(2), 2.0).unwrap(),
            vec![1.0, 3.0, 27.0, 27.0, 9.0]
        );
        assert!(weight_ladder(4, Hypothesis::Split(2), 2.0).is_err());
        assert!(weight_ladder(3, Hypothesis::Split(1), 2.0).is_err());
        assert!(weight_ladder(4, Hypothesis::Unsatisfied, 2.0).is_err());
        assert!(weight_ladder(4, Hypothesis::Full, -1.0).is_err());
    }

    #[test]
    fn classify_patterns() {
        assert_eq!(classify_ordering(&[0.5, 0.4, 0.1], &[0.3, 0.2]), Hypothesis::Full);
        assert_eq!(classify_ordering(&[0.5, 0.1, 0.3], &[0.3, 0.3]), Hypothesis::Split(1));
        assert_eq!(classify_ordering(&[0.1, 0.1, 0.3], &[0.3, 0.3]), Hypothesis::Unsatisfied);
        assert_eq!(classify_ordering(&[0.2, 0.1], &[0.2 + 5e-13]), Hypothesis::Full);
    }

    #[test]
    fn ordering_of_w_state_is_full() {
        let p = detect_ordering(&w_state(), "A").unwrap();
        assert_eq!(p.hypothesis, Hypothesis::Full);
        assert!((p.pair_concurrences[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((p.pair_concurrences[1] - 2.0 / 3.0).abs() < 1e-12);
        assert!((p.cut_concurrence - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn ordering_of_schmidt_example() {
        let p = detect_ordering(&schmidt_example(), "A").unwrap();
        let r = 6f64.sqrt() / 6.0;
        assert!(p.pair_concurrences.iter().all(|&x| (x - r).abs() < 1e-10));
        assert!((p.tail_concurrences[0] - r).abs() < 1e-10);
        assert_eq!(p.hypothesis, Hypothesis::Full);
    }

    #[test]
    fn ordering_of_products_and_unsupported() {
        let p = detect_ordering(&StateVector::basis(4, 3).unwrap(), "A").unwrap();
        assert_eq!(p.tail_source, TailSource::ProductCut);
        assert_eq!(p.hypothesis, Hypothesis::Full);
        let psi = haar_random_state(4, 1).unwrap();
        assert!(matches!(detect_ordering(&psi, "A"), Err(Error::UnsupportedStateClass(_))));
        assert!(matches!(detect_ordering(&psi, "Q"), Err(Error::InvalidSubsystem(_))));
    }

    #[test]
    fn three_qubit_relabels_larger_pair_first() {
        for seed in 0..30 {
            let p = detect_ordering(&haar_random_state(3, seed).unwrap(), "A").unwrap();
            assert!(p.pair_concurrences[0] >= p.pair_concurrences[1]);
            assert_eq!(p.hypothesis, Hypothesis::Full);
        }
    }

    #[test]
    fn focus_other_than_first_qubit() {
        // W is symmetric, so any focus gives the same numbers
        let p = detect_ordering(&w_state(), "B2").unwrap();
        assert_eq!(p.party_order[0], 2);
        assert!((p.cut_concurrence - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn lemma1_examples() {
        let prod = StateVector::basis(3, 0).unwrap();
        let r = lemma1_check(&prod, 2.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        let r = lemma1_check(&w_state(), 2.0).unwrap();
        assert!((r.lhs - 8.0 / 9.0).abs() < 1e-12);
        assert!((r.rhs - 8.0 / 9.0).abs() < 1e-12);
        assert!(r.margin.abs() < 1e-9);
        assert!(matches!(lemma1_check(&w_state(), 1.5), Err(Error::Parameter(_))));
        assert!(matches!(lemma1_check(&StateVector::basis(2, 0).unwrap(), 2.0), Err(Error::Size(_))));
    }

    #[test]
    fn lemma1_and_ckw_on_haar_states() {
        for seed in 0..500 {
            let psi = haar_random_state(3, seed).unwrap();
            assert!(ckw_check(&psi).unwrap().margin >= -1e-10);
            for x in [2.0, 3.0, 4.0] {
                let r = lemma1_check(&psi, x).unwrap();
                assert!(r.margin >= -1e-10, "seed {seed} x {x}: {}", r.margin);
                assert!(r.tightness_gain >= -1e-15);
            }
        }
    }

    #[test]
    fn theorem_bound_schmidt_example() {
        let psi = schmidt_example();
        let p = detect_ordering(&psi, "A").unwrap();
        let r = theorem_bound(&psi, &p, AlphaMu::new(0.823, 2.0).unwrap()).unwrap();
        assert!((r.lhs - 0.427984).abs() < 1e-6);
        assert!((r.rhs - 0.406075).abs() < 1e-6);
        assert!((r.baseline_rhs - 0.203037).abs() < 1e-6);
        assert!((r.tightness_gain - 0.203037).abs() < 1e-6);
        assert!(r.margin > 0.0);
        assert_eq!(r.weights(), vec![1.0, 3.0]);
    }

    #[test]
    fn theorem_bound_errors_and_product() {
        let prod = StateVector::basis(3, 2).unwrap();
        let p = detect_ordering(&prod, "A").unwrap();
        let r = theorem_bound(&prod, &p, AlphaMu::new(1.1, 3.0).unwrap()).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        let mut bad = p.clone();
        bad.hypothesis = Hypothesis::Unsatisfied;
        assert!(matches!(
            theorem_bound(&prod, &bad, AlphaMu::new(1.1, 3.0).unwrap()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            theorem_bound(&prod, &p, AlphaMu::new(1.1, 1.0).unwrap()),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn w_state_violates_weighted_monogamy() {
        // The hypothesis holds (C_AB = C_AC) yet E^2(A|BC) < E^2(AB) + 3 E^2(AC).
        let psi = w_state();
        let p = detect_ordering(&psi, "A").unwrap();
        let r = theorem_bound(&psi, &p, AlphaMu::new(ALPHA_THEOREM_MIN, 2.0).unwrap()).unwrap();
        assert!((r.lhs - 0.868843).abs() < 1e-6);
        assert!((r.rhs - 1.475064).abs() < 1e-6);
        assert!(r.margin < -0.6);
        // the unweighted sum still holds
        assert!(r.lhs >= r.baseline_rhs);
    }

    #[test]
    fn gap_to_baseline_grows_as_closed_form() {
        let psi = schmidt_example();
        let p = detect_ordering(&psi, "A").unwrap();
        let mut mu = 2.0;
        while mu <= 10.0 {
            let r = theorem_bound(&psi, &p, AlphaMu::new(0.823, mu).unwrap()).unwrap();
            let e = r.terms[0].value.powf(1.0 / mu);
            let closed = (2f64.powf(mu) - 2.0) * e.powf(mu);
            assert!((r.tightness_gain - closed).abs() < 1e-12);
            assert!(r.tightness_gain > 0.0);
            mu += 0.25;
        }
    }

    #[test]
    fn scalar_examples() {
        for x in [0.0, 0.3, 1.0, 2.5, 7.0] {
            assert!(scalar_weight_inequality(1.0, x).unwrap().margin.abs() < 1e-12);
        }
        for x in [1.0, 2.0, 4.0] {
            assert!(scalar_weight_inequality(0.0, x).unwrap().margin.abs() < 1e-15);
        }
        for k in 1..100 {
            let t = k as f64 / 100.0;
            for x in [1.0, 1.5, 2.0, 3.0, 5.0] {
                let s = scalar_weight_inequality(t, x).unwrap();
                assert!(s.holds && s.margin >= -1e-12);
            }
            for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let s = scalar_weight_inequality(t, x).unwrap();
                assert!(s.holds && s.margin <= 1e-12);
            }
        }
        assert!(matches!(scalar_weight_inequality(1.5, 2.0), Err(Error::Domain { .. })));
        assert!(matches!(scalar_weight_inequality(0.5, -1.0), Err(Error::Parameter(_))));
    }

    #[test]
    fn permutation_enumeration() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(satisfied_reorderings(&w_state(), "A").unwrap().len(), 2);
    }
}

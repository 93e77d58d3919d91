//! Single-state evaluation.

use monoq_core::measures::{f_alpha, renyi_entanglement_pure_indices, AlphaMu};
use monoq_core::monogamy::{detect_ordering, theorem_bound, OrderingProfile};
use monoq_core::polygamy::{reoa_cut, theorem3_bound, wclass_pair_reoa};
use monoq_core::{BoundDirection, BoundReport, Hypothesis, StateVector, WClassState};
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Serialize)]
pub struct TermJson {
    pub party: String,
    pub weight: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub direction: &'static str,
    pub lhs: f64,
    pub terms: Vec<TermJson>,
    pub rhs: f64,
    pub margin: f64,
    pub baseline_rhs: f64,
    pub tightness_gain: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalOutput {
    pub mode: &'static str,
    pub theorem: String,
    pub alpha: f64,
    pub mu: f64,
    pub focus: String,
    pub n_qubits: usize,
    pub party_order: Vec<String>,
    pub tail_source: String,
    pub hypothesis: String,
    pub cut_concurrence: f64,
    /// `C_{AB_i}` in party order; equal to `C^a_{AB_i}` in polygamy mode.
    pub pair_concurrences: Vec<f64>,
    pub tail_concurrences: Vec<f64>,
    /// `E_α(A|rest)`, which for a pure state is also the REoA.
    pub cut_entanglement: f64,
    /// `E_α(ρ_{AB_i})` in monogamy mode, `E^a_α(ρ_{AB_i})` in polygamy mode.
    pub pair_entanglements: Vec<f64>,
    pub report: Option<ReportJson>,
    pub note: Option<String>,
}

/// Margin below which `holds` is reported false.
pub const EVAL_TOL: f64 = 1e-9;

fn report_json(r: &BoundReport, parties: &[String]) -> ReportJson {
    ReportJson {
        direction: match r.direction {
            BoundDirection::Lower => "lower",
            BoundDirection::Upper => "upper",
        },
        lhs: r.lhs,
        terms: r
            .terms
            .iter()
            .zip(parties)
            .map(|(t, p)| TermJson { party: p.clone(), weight: t.weight, value: t.value })
            .collect(),
        rhs: r.rhs,
        margin: r.margin,
        baseline_rhs: r.baseline_rhs,
        tightness_gain: r.tightness_gain,
        holds: r.holds(EVAL_TOL),
    }
}

fn theorem_name(mode: &str, h: Hypothesis) -> String {
    match h {
        Hypothesis::Full => format!("weighted {mode}, full ordering"),
        Hypothesis::Split(m) => format!("weighted {mode}, split ordering at m = {m}"),
        Hypothesis::Unsatisfied => "none (ordering hypothesis not satisfied)".into(),
    }
}

fn skeleton(psi: &StateVector, p: &OrderingProfile, mode: &'static str, alpha: f64, mu: f64) -> EvalOutput {
    EvalOutput {
        mode,
        theorem: theorem_name(mode, p.hypothesis),
        alpha,
        mu,
        focus: p.focus.clone(),
        n_qubits: psi.n_qubits(),
        party_order: p.party_order.iter().map(|&q| psi.labels()[q].clone()).collect(),
        tail_source: p.tail_source.to_string(),
        hypothesis: p.hypothesis.to_string(),
        cut_concurrence: p.cut_concurrence,
        pair_concurrences: p.pair_concurrences.clone(),
        tail_concurrences: p.tail_concurrences.clone(),
        cut_entanglement: 0.0,
        pair_entanglements: Vec::new(),
        report: None,
        note: (!p.is_satisfied()).then(|| "ordering hypothesis is not satisfied; no bound is claimed".to_string()),
    }
}

/// `μ ≥ 2` selects the monogamy bound, `0 ≤ μ ≤ 1` the polygamy bound.
pub fn evaluate(psi: &StateVector, alpha: f64, mu: f64, focus: &str) -> CliResult<EvalOutput> {
    if mu >= 2.0 {
        evaluate_monogamy(psi, AlphaMu::monogamy(alpha, mu)?, focus)
    } else if (0.0..=1.0).contains(&mu) {
        evaluate_polygamy(psi, AlphaMu::polygamy(alpha, mu)?, focus)
    } else {
        Err(CliError::Config(format!("no bound is defined for mu = {mu}; use mu >= 2 or 0 <= mu <= 1")))
    }
}

fn evaluate_monogamy(psi: &StateVector, params: AlphaMu, focus: &str) -> CliResult<EvalOutput> {
    let p = detect_ordering(psi, focus)?;
    let mut out = skeleton(psi, &p, "monogamy", params.alpha, params.mu);
    out.cut_entanglement = renyi_entanglement_pure_indices(psi, &[p.party_order[0]], params.alpha)?.get();
    out.pair_entanglements = p
        .pair_concurrences
        .iter()
        .map(|&c| Ok(f_alpha(c * c, params.alpha)?.get()))
        .collect::<CliResult<_>>()?;
    if p.is_satisfied() {
        let r = theorem_bound(psi, &p, params)?;
        out.report = Some(report_json(&r, &out.party_order[1..]));
    }
    Ok(out)
}

fn evaluate_polygamy(psi: &StateVector, params: AlphaMu, focus: &str) -> CliResult<EvalOutput> {
    if psi.qubit_index(focus)? != 0 {
        return Err(CliError::Config("polygamy bounds are evaluated with the first qubit as focus".into()));
    }
    let w = WClassState::from_state(psi)?;
    let p = detect_ordering(psi, focus)?;
    let mut out = skeleton(psi, &p, "polygamy", params.alpha, params.mu);
    out.cut_entanglement = reoa_cut(psi, params.alpha)?.get();
    out.pair_entanglements = p.party_order[1..]
        .iter()
        .map(|&q| Ok(wclass_pair_reoa(&w, q - 1, params.alpha)?.get()))
        .collect::<CliResult<_>>()?;
    if p.is_satisfied() {
        let r = theorem3_bound(&w, &p, params)?;
        out.report = Some(report_json(&r, &out.party_order[1..]));
    }
    Ok(out)
}

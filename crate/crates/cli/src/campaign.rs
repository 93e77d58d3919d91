//! Stochastic falsification campaigns.
//!
//! States are evaluated in parallel with per-state seeds
//! `derive_seed(master, index)`; records are kept in index order so the CSV
//! output is byte-stable for a fixed configuration.

use std::io::Write;

use monoq_core::measures::AlphaMu;
use monoq_core::monogamy::{
    ckw_check, detect_ordering, lemma1_check, satisfied_reorderings, scalar_weight_inequality,
    theorem_bound, OrderingProfile,
};
use monoq_core::polygamy::theorem3_bound;
use monoq_core::seed::{derive_seed, rng_from_seed};
use monoq_core::state::haar_random_state;
use monoq_core::{BoundReport, StateVector, WClassState};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{CampaignConfig, Mode, StateClass};
use crate::error::{CliError, CliResult};
use crate::fmt::{g12, opt_g12};
use crate::statefile::load_state;

/// Points on `t ∈ [0, 1]` in scalar mode.
pub const SCALAR_T_POINTS: usize = 200;

/// A reordering must beat the chosen bound by more than this to be flagged.
const REORDER_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Violation,
    /// `μ = 0` polygamy failure: reported, not counted as a violation.
    MuZeroFlag,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Self::Ok => "ok",
            Self::Violation => "violation",
            Self::MuZeroFlag => "mu_zero_flag",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessRecord {
    pub index: usize,
    /// Seed the state was generated from; replaying it regenerates the state.
    pub seed: u64,
    pub n_qubits: usize,
    pub alpha: Option<f64>,
    /// `μ`, or the exponent `x` in `lemma1` and `scalar` modes.
    pub mu: Option<f64>,
    /// `t` in scalar mode.
    pub param: Option<f64>,
    pub hypothesis: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub baseline_rhs: f64,
    pub tightness_gain: f64,
    pub status: Status,
    /// Another party order with a satisfied hypothesis gives a larger valid
    /// lower bound (monogamy mode only).
    pub reorder_tighter: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSummary {
    pub alpha: Option<f64>,
    pub mu: Option<f64>,
    pub evaluations: usize,
    pub violations: usize,
    pub min_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub mode: String,
    pub class: String,
    pub n_states: usize,
    pub n_qubits: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub evaluations: usize,
    pub hypothesis_satisfied: usize,
    pub hypothesis_unsatisfied: usize,
    pub violations: usize,
    pub mu_zero_flags: usize,
    pub reorder_tighter: usize,
    pub min_margin: Option<f64>,
    pub mean_tightness_gain: Option<f64>,
    pub per_grid: Vec<GridSummary>,
}

#[derive(Debug, Clone)]
pub struct CampaignOutcome {
    pub records: Vec<WitnessRecord>,
    pub summary: CampaignSummary,
}

impl CampaignOutcome {
    /// 0 iff no margin fell below `−tolerance`.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.violations > 0)
    }
}

struct StateOutcome {
    satisfied: Option<bool>,
    records: Vec<WitnessRecord>,
}

enum Sample {
    Pure(StateVector),
    WClass(WClassState),
}

impl Sample {
    fn state(&self) -> StateVector {
        match self {
            Self::Pure(psi) => psi.clone(),
            Self::WClass(w) => w.to_state_vector(),
        }
    }
}

fn sample(cfg: &CampaignConfig, seed: u64, file_state: Option<&StateVector>) -> CliResult<Sample> {
    Ok(match cfg.state_class {
        StateClass::Haar => Sample::Pure(haar_random_state(cfg.n_qubits, seed)?),
        StateClass::WClass => Sample::WClass(WClassState::random(cfg.n_qubits, &mut rng_from_seed(seed))?),
        StateClass::File => {
            let psi = file_state.expect("file state loaded").clone();
            if cfg.mode == Mode::Polygamy {
                Sample::WClass(WClassState::from_state(&psi)?)
            } else {
                Sample::Pure(psi)
            }
        }
    })
}

#[derive(Clone, Copy)]
struct StateTag {
    index: usize,
    seed: u64,
    n_qubits: usize,
    tolerance: f64,
}

fn record(tag: StateTag, alpha: Option<f64>, mu: Option<f64>, hypothesis: String, r: &BoundReport) -> WitnessRecord {
    WitnessRecord {
        index: tag.index,
        seed: tag.seed,
        n_qubits: tag.n_qubits,
        alpha,
        mu,
        param: None,
        hypothesis,
        lhs: r.lhs,
        rhs: r.rhs,
        margin: r.margin,
        baseline_rhs: r.baseline_rhs,
        tightness_gain: r.tightness_gain,
        status: if r.margin < -tag.tolerance { Status::Violation } else { Status::Ok },
        reorder_tighter: false,
    }
}

fn monogamy_report(psi: &StateVector, p: &OrderingProfile, alpha: f64, mu: f64) -> CliResult<BoundReport> {
    Ok(theorem_bound(psi, p, AlphaMu::monogamy(alpha, mu)?)?)
}

fn evaluate_state(cfg: &CampaignConfig, index: usize, seed: u64, s: &Sample) -> CliResult<StateOutcome> {
    let psi = s.state();
    let tol = cfg.tolerance;
    let tag = StateTag { index, seed, n_qubits: psi.n_qubits(), tolerance: tol };
    let mut records = Vec::new();
    let satisfied = match cfg.mode {
        Mode::Ckw => {
            records.push(record(tag, None, None, String::new(), &ckw_check(&psi)?));
            None
        }
        Mode::Lemma1 => {
            for &x in &cfg.mu_grid {
                let r = lemma1_check(&psi, x)?;
                records.push(record(tag, None, Some(x), String::new(), &r));
            }
            None
        }
        Mode::Monogamy => {
            let profile = detect_ordering(&psi, &cfg.focus)?;
            if profile.is_satisfied() {
                let alternatives = if tag.n_qubits <= 6 {
                    satisfied_reorderings(&psi, &cfg.focus)?
                        .into_iter()
                        .filter(|p| p.party_order != profile.party_order)
                        .collect()
                } else {
                    Vec::new()
                };
                for &alpha in &cfg.alpha_grid {
                    for &mu in &cfg.mu_grid {
                        let r = monogamy_report(&psi, &profile, alpha, mu)?;
                        let mut rec = record(tag, Some(alpha), Some(mu), profile.hypothesis.to_string(), &r);
                        for alt in &alternatives {
                            let ra = monogamy_report(&psi, alt, alpha, mu)?;
                            if ra.rhs > r.rhs + REORDER_EPS && ra.margin >= -tol {
                                rec.reorder_tighter = true;
                            }
                        }
                        records.push(rec);
                    }
                }
            }
            Some(profile.is_satisfied())
        }
        Mode::Polygamy => {
            let Sample::WClass(w) = s else {
                return Err(CliError::Config("polygamy mode needs W-class states".into()));
            };
            let profile = detect_ordering(&psi, "A")?;
            if profile.is_satisfied() {
                for &alpha in &cfg.alpha_grid {
                    for &mu in &cfg.mu_grid {
                        let r = theorem3_bound(w, &profile, AlphaMu::polygamy(alpha, mu)?)?;
                        let mut rec = record(tag, Some(alpha), Some(mu), profile.hypothesis.to_string(), &r);
                        if rec.status == Status::Violation && mu == 0.0 {
                            rec.status = Status::MuZeroFlag;
                        }
                        records.push(rec);
                    }
                }
            }
            Some(profile.is_satisfied())
        }
        Mode::Scalar => unreachable!("scalar mode has no states"),
    };
    Ok(StateOutcome { satisfied, records })
}

/// The scalar inequality as a signed slack: `≥` for `x ≥ 1`, `≤` below.
pub fn scalar_record(index: usize, t: f64, x: f64, tolerance: f64) -> CliResult<WitnessRecord> {
    let check = scalar_weight_inequality(t, x)?;
    let lhs = (1.0 + t).powf(x);
    let rhs = 1.0 + (2f64.powf(x) - 1.0) * t.powf(x);
    let baseline = 1.0 + t.powf(x);
    let (margin, gain) = if x >= 1.0 {
        (check.margin, rhs - baseline)
    } else {
        (-check.margin, baseline - rhs)
    };
    Ok(WitnessRecord {
        index,
        seed: 0,
        n_qubits: 0,
        alpha: None,
        mu: Some(x),
        param: Some(t),
        hypothesis: String::new(),
        lhs,
        rhs,
        margin,
        baseline_rhs: baseline,
        tightness_gain: gain,
        status: if margin < -tolerance { Status::Violation } else { Status::Ok },
        reorder_tighter: false,
    })
}

fn scalar_records(cfg: &CampaignConfig) -> CliResult<Vec<WitnessRecord>> {
    let mut out = Vec::new();
    for i in 0..SCALAR_T_POINTS {
        let t = i as f64 / (SCALAR_T_POINTS - 1) as f64;
        for &x in &cfg.mu_grid {
            out.push(scalar_record(i, t, x, cfg.tolerance)?);
        }
    }
    Ok(out)
}

pub fn run(cfg: &CampaignConfig) -> CliResult<CampaignOutcome> {
    cfg.validate()?;
    let (outcomes, n_states, n_qubits) = if cfg.mode == Mode::Scalar {
        let records = scalar_records(cfg)?;
        (vec![StateOutcome { satisfied: None, records }], 0, 0)
    } else if cfg.state_class == StateClass::File {
        let path = cfg.state_file.as_ref().expect("validated");
        let psi = load_state(path)?;
        let s = sample(cfg, 0, Some(&psi))?;
        (vec![evaluate_state(cfg, 0, 0, &s)?], 1, psi.n_qubits())
    } else {
        let outcomes = (0..cfg.n_states)
            .into_par_iter()
            .map(|i| {
                let seed = derive_seed(cfg.seed, i as u64);
                evaluate_state(cfg, i, seed, &sample(cfg, seed, None)?)
            })
            .collect::<CliResult<Vec<_>>>()?;
        (outcomes, cfg.n_states, cfg.n_qubits)
    };
    let satisfied = outcomes.iter().filter(|o| o.satisfied == Some(true)).count();
    let unsatisfied = outcomes.iter().filter(|o| o.satisfied == Some(false)).count();
    let records: Vec<WitnessRecord> = outcomes.into_iter().flat_map(|o| o.records).collect();
    let summary = summarize(cfg, &records, n_states, n_qubits, satisfied, unsatisfied);
    Ok(CampaignOutcome { records, summary })
}

fn min_of(it: impl Iterator<Item = f64>) -> Option<f64> {
    it.fold(None, |acc, x| Some(acc.map_or(x, |a: f64| a.min(x))))
}

fn summarize(
    cfg: &CampaignConfig,
    records: &[WitnessRecord],
    n_states: usize,
    n_qubits: usize,
    satisfied: usize,
    unsatisfied: usize,
) -> CampaignSummary {
    let mut keys: Vec<(Option<f64>, Option<f64>)> = Vec::new();
    for r in records {
        if !keys.contains(&(r.alpha, r.mu)) {
            keys.push((r.alpha, r.mu));
        }
    }
    let per_grid = keys
        .into_iter()
        .map(|(alpha, mu)| {
            let sel: Vec<&WitnessRecord> = records.iter().filter(|r| r.alpha == alpha && r.mu == mu).collect();
            GridSummary {
                alpha,
                mu,
                evaluations: sel.len(),
                violations: sel.iter().filter(|r| r.status == Status::Violation).count(),
                min_margin: min_of(sel.iter().map(|r| r.margin)),
            }
        })
        .collect();
    let gains: Vec<f64> = records.iter().map(|r| r.tightness_gain).filter(|g| g.is_finite()).collect();
    CampaignSummary {
        mode: cfg.mode.to_string(),
        class: cfg.state_class.to_string(),
        n_states,
        n_qubits,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        evaluations: records.len(),
        hypothesis_satisfied: satisfied,
        hypothesis_unsatisfied: unsatisfied,
        violations: records.iter().filter(|r| r.status == Status::Violation).count(),
        mu_zero_flags: records.iter().filter(|r| r.status == Status::MuZeroFlag).count(),
        reorder_tighter: records.iter().filter(|r| r.reorder_tighter).count(),
        min_margin: min_of(records.iter().map(|r| r.margin)),
        mean_tightness_gain: (!gains.is_empty()).then(|| gains.iter().sum::<f64>() / gains.len() as f64),
        per_grid,
    }
}

/// Recomputes a record's margin from its seed and parameters.
pub fn replay(cfg: &CampaignConfig, rec: &WitnessRecord) -> CliResult<f64> {
    if cfg.mode == Mode::Scalar {
        let (t, x) = (rec.param.unwrap_or_default(), rec.mu.unwrap_or_default());
        return Ok(scalar_record(rec.index, t, x, cfg.tolerance)?.margin);
    }
    let file_state = match &cfg.state_file {
        Some(p) if cfg.state_class == StateClass::File => Some(load_state(p)?),
        _ => None,
    };
    let s = sample(cfg, rec.seed, file_state.as_ref())?;
    let psi = s.state();
    let missing = || CliError::Config("record lacks alpha or mu".into());
    let r = match cfg.mode {
        Mode::Ckw => ckw_check(&psi)?,
        Mode::Lemma1 => lemma1_check(&psi, rec.mu.ok_or_else(missing)?)?,
        Mode::Monogamy => {
            let p = detect_ordering(&psi, &cfg.focus)?;
            monogamy_report(&psi, &p, rec.alpha.ok_or_else(missing)?, rec.mu.ok_or_else(missing)?)?
        }
        Mode::Polygamy => {
            let Sample::WClass(w) = &s else {
                return Err(CliError::Config("polygamy mode needs W-class states".into()));
            };
            let p = detect_ordering(&psi, "A")?;
            theorem3_bound(w, &p, AlphaMu::polygamy(rec.alpha.ok_or_else(missing)?, rec.mu.ok_or_else(missing)?)?)?
        }
        Mode::Scalar => unreachable!(),
    };
    Ok(r.margin)
}

pub const CSV_HEADER: [&str; 15] = [
    "index",
    "seed",
    "n_qubits",
    "alpha",
    "mu",
    "param",
    "hypothesis",
    "lhs",
    "rhs",
    "margin",
    "baseline_rhs",
    "tightness_gain",
    "status",
    "reorder_tighter",
    "class",
];

pub fn write_records<W: Write>(out: W, cfg: &CampaignConfig, records: &[WitnessRecord]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let class = cfg.state_class.to_string();
    for r in records {
        w.write_record([
            r.index.to_string(),
            r.seed.to_string(),
            r.n_qubits.to_string(),
            opt_g12(r.alpha),
            opt_g12(r.mu),
            opt_g12(r.param),
            r.hypothesis.clone(),
            g12(r.lhs),
            g12(r.rhs),
            g12(r.margin),
            g12(r.baseline_rhs),
            g12(r.tightness_gain),
            r.status.as_str().to_string(),
            r.reorder_tighter.to_string(),
            class.clone(),
        ])?;
    }
    w.flush().map_err(|e| CliError::io("<csv output>", e))?;
    Ok(())
}

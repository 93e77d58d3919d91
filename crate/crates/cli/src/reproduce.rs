//! Bound curves as functions of μ, and `f_α` tables.

use std::io::Write;

use monoq_core::measures::{f_alpha, AlphaMu};
use monoq_core::monogamy::{detect_ordering, theorem_bound};
use monoq_core::polygamy::theorem3_bound;
use monoq_core::state::three_qubit_canonical;
use monoq_core::{StateVector, WClassState};

use crate::error::{CliError, CliResult};
use crate::fmt::g12;

/// Default α for figure data: the lower end of the admissible range rounded
/// to three decimals, which the reference curves use.
pub const FIGURE_ALPHA: f64 = 0.823;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Monogamy on the canonical three-qubit example, `μ ∈ [2, 10]`.
    Fig1,
    /// Polygamy on the three-qubit W state, `μ ∈ [0, 1]`.
    Fig2,
}

impl std::str::FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "fig1" => Ok(Self::Fig1),
            "fig2" => Ok(Self::Fig2),
            _ => Err(CliError::Config(format!("unknown figure '{s}' (expected fig1 or fig2)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRow {
    pub mu: f64,
    pub lhs: f64,
    /// Weighted bound.
    pub ours: f64,
    /// Unweighted sum of the same pair terms.
    pub prior: f64,
}

/// `λ0 = λ1 = 1/2`, `λ2 = λ3 = λ4 = √6/6`, zero phase.
pub fn example_state() -> StateVector {
    let l = 6f64.sqrt() / 6.0;
    three_qubit_canonical([0.5, 0.5, l, l, l], 0.0).expect("normalized coefficients")
}

pub fn mu_grid(figure: Figure) -> Vec<f64> {
    match figure {
        Figure::Fig1 => (0..=160).map(|k| (40 + k) as f64 / 20.0).collect(),
        Figure::Fig2 => (0..=100).map(|k| k as f64 / 100.0).collect(),
    }
}

pub fn figure_rows(figure: Figure, alpha: f64) -> CliResult<Vec<FigureRow>> {
    let grid = mu_grid(figure);
    match figure {
        Figure::Fig1 => {
            let psi = example_state();
            let profile = detect_ordering(&psi, "A")?;
            grid.into_iter()
                .map(|mu| {
                    let r = theorem_bound(&psi, &profile, AlphaMu::monogamy(alpha, mu)?)?;
                    Ok(FigureRow { mu, lhs: r.lhs, ours: r.rhs, prior: r.baseline_rhs })
                })
                .collect()
        }
        Figure::Fig2 => {
            let w = WClassState::uniform(3)?;
            let profile = detect_ordering(&w.to_state_vector(), "A")?;
            grid.into_iter()
                .map(|mu| {
                    let r = theorem3_bound(&w, &profile, AlphaMu::polygamy(alpha, mu)?)?;
                    Ok(FigureRow { mu, lhs: r.lhs, ours: r.rhs, prior: r.baseline_rhs })
                })
                .collect()
        }
    }
}

pub fn write_figure<W: Write>(out: W, rows: &[FigureRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["mu", "lhs", "ours", "prior"])?;
    for r in rows {
        w.write_record([g12(r.mu), g12(r.lhs), g12(r.ours), g12(r.prior)])?;
    }
    w.flush().map_err(|e| CliError::io("<csv output>", e))?;
    Ok(())
}

/// Rows `x, f_α1(x), f_α2(x), …` on `points` equally spaced `x ∈ [0, 1]`.
pub fn falpha_table(alphas: &[f64], points: usize) -> CliResult<Vec<Vec<f64>>> {
    if points < 2 {
        return Err(CliError::Config("points must be at least 2".into()));
    }
    if alphas.is_empty() {
        return Err(CliError::Config("alpha grid must be nonempty".into()));
    }
    (0..points)
        .map(|i| {
            let x = i as f64 / (points - 1) as f64;
            let mut row = vec![x];
            for &a in alphas {
                row.push(f_alpha(x, a)?.get());
            }
            Ok(row)
        })
        .collect()
}

pub fn write_falpha<W: Write>(out: W, alphas: &[f64], rows: &[Vec<f64>]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let header: Vec<String> = std::iter::once("x".to_string())
        .chain(alphas.iter().map(|a| format!("alpha={}", g12(*a))))
        .collect();
    w.write_record(&header)?;
    for row in rows {
        w.write_record(row.iter().map(|&v| g12(v)))?;
    }
    w.flush().map_err(|e| CliError::io("<csv output>", e))?;
    Ok(())
}

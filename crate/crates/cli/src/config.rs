//! Campaign configuration: built-in defaults, then `MONOQ_SEED`, then a flat
//! `key = value` file, then command-line overrides.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{CliError, CliResult};

pub const SEED_ENV: &str = "MONOQ_SEED";
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Monogamy,
    Polygamy,
    Lemma1,
    Ckw,
    Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateClass {
    Haar,
    WClass,
    File,
}

impl FromStr for Mode {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "monogamy" => Ok(Self::Monogamy),
            "polygamy" => Ok(Self::Polygamy),
            "lemma1" => Ok(Self::Lemma1),
            "ckw" => Ok(Self::Ckw),
            "scalar" => Ok(Self::Scalar),
            _ => Err(CliError::Config(format!("unknown mode '{s}'"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Monogamy => "monogamy",
            Self::Polygamy => "polygamy",
            Self::Lemma1 => "lemma1",
            Self::Ckw => "ckw",
            Self::Scalar => "scalar",
        })
    }
}

impl FromStr for StateClass {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "haar" => Ok(Self::Haar),
            "wclass" => Ok(Self::WClass),
            "file" => Ok(Self::File),
            _ => Err(CliError::Config(format!("unknown state class '{s}'"))),
        }
    }
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Haar => "haar",
            Self::WClass => "wclass",
            Self::File => "file",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub mode: Mode,
    pub n_states: usize,
    pub n_qubits: usize,
    pub alpha_grid: Vec<f64>,
    /// Exponent grid: `μ` for the bounds, `x` for `lemma1` and `scalar`.
    pub mu_grid: Vec<f64>,
    pub seed: u64,
    pub state_class: StateClass,
    pub state_file: Option<PathBuf>,
    pub focus: String,
    pub tolerance: f64,
}

/// One layer of settings; `None` leaves the lower layer in place.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub mode: Option<Mode>,
    pub n_states: Option<usize>,
    pub n_qubits: Option<usize>,
    pub alpha_grid: Option<Vec<f64>>,
    pub mu_grid: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub state_class: Option<StateClass>,
    pub state_file: Option<PathBuf>,
    pub focus: Option<String>,
    pub tolerance: Option<f64>,
}

pub fn default_mu_grid(mode: Mode) -> Vec<f64> {
    match mode {
        Mode::Monogamy => vec![2.0, 3.0, 5.0],
        Mode::Polygamy => vec![0.25, 0.5, 0.75, 1.0],
        Mode::Lemma1 => vec![2.0, 3.0, 4.0],
        Mode::Ckw => vec![2.0],
        Mode::Scalar => {
            let mut x: Vec<f64> = (0..50).map(|i| 1.0 + 5.0 * i as f64 / 49.0).collect();
            x.extend([0.0, 0.25, 0.5, 0.75]);
            x
        }
    }
}

pub fn parse_grid(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("'{t}' is not a number")))
        })
        .collect()
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("invalid value '{value}' for '{key}'")))
}

impl Overrides {
    pub fn parse_file_text(text: &str) -> CliResult<Self> {
        let mut o = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "mode" => o.mode = Some(value.parse()?),
                "states" => o.n_states = Some(parse_value(key, value)?),
                "qubits" => o.n_qubits = Some(parse_value(key, value)?),
                "alpha" => o.alpha_grid = Some(parse_grid(value)?),
                "mu" => o.mu_grid = Some(parse_grid(value)?),
                "seed" => o.seed = Some(parse_value(key, value)?),
                "class" => o.state_class = Some(value.parse()?),
                "state" => o.state_file = Some(PathBuf::from(value)),
                "focus" => o.focus = Some(value.to_string()),
                "tolerance" => o.tolerance = Some(parse_value(key, value)?),
                _ => return Err(CliError::Config(format!("line {}: unknown key '{key}'", lineno + 1))),
            }
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse_file_text(&text)
    }

    /// `self` wins over `lower`.
    pub fn over(self, lower: Self) -> Self {
        Self {
            mode: self.mode.or(lower.mode),
            n_states: self.n_states.or(lower.n_states),
            n_qubits: self.n_qubits.or(lower.n_qubits),
            alpha_grid: self.alpha_grid.or(lower.alpha_grid),
            mu_grid: self.mu_grid.or(lower.mu_grid),
            seed: self.seed.or(lower.seed),
            state_class: self.state_class.or(lower.state_class),
            state_file: self.state_file.or(lower.state_file),
            focus: self.focus.or(lower.focus),
            tolerance: self.tolerance.or(lower.tolerance),
        }
    }
}

pub fn env_seed(value: Option<&str>) -> CliResult<Option<u64>> {
    value
        .map(|v| parse_value::<u64>(SEED_ENV, v.trim()))
        .transpose()
}

impl CampaignConfig {
    /// Fills unset fields with defaults (`env_seed` before the built-in seed)
    /// and validates the result.
    pub fn resolve(layers: Overrides, env_seed: Option<u64>) -> CliResult<Self> {
        let mode = layers.mode.unwrap_or(Mode::Monogamy);
        let state_class = layers.state_class.unwrap_or(match (mode, &layers.state_file) {
            (_, Some(_)) => StateClass::File,
            (Mode::Polygamy, None) => StateClass::WClass,
            _ => StateClass::Haar,
        });
        let cfg = Self {
            mode,
            n_states: layers.n_states.unwrap_or(1000),
            n_qubits: layers.n_qubits.unwrap_or(3),
            alpha_grid: layers.alpha_grid.unwrap_or_else(|| vec![0.8229, 1.3027]),
            mu_grid: layers.mu_grid.unwrap_or_else(|| default_mu_grid(mode)),
            seed: layers.seed.or(env_seed).unwrap_or(DEFAULT_SEED),
            state_class,
            state_file: layers.state_file,
            focus: layers.focus.unwrap_or_else(|| "A".into()),
            tolerance: layers.tolerance.unwrap_or(1e-9),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.n_states == 0 {
            return bad("states must be at least 1".into());
        }
        if self.tolerance <= 0.0 || self.tolerance.is_nan() {
            return bad(format!("tolerance must be positive, got {}", self.tolerance));
        }
        if self.alpha_grid.is_empty() || self.mu_grid.is_empty() {
            return bad("alpha and mu grids must be nonempty".into());
        }
        if self.alpha_grid.iter().chain(&self.mu_grid).any(|v| !v.is_finite()) {
            return bad("grid values must be finite".into());
        }
        if self.state_class == StateClass::File && self.state_file.is_none() {
            return bad("class 'file' needs a state file".into());
        }
        if self.state_class != StateClass::File && !(2..=monoq_core::state::MAX_QUBITS).contains(&self.n_qubits) {
            return bad(format!("qubits must be in 2..={}", monoq_core::state::MAX_QUBITS));
        }
        match self.mode {
            Mode::Monogamy => {
                if self.mu_grid.iter().any(|&m| m < 2.0) {
                    return bad("monogamy mode needs mu >= 2".into());
                }
                if self.state_class == StateClass::Haar && self.n_qubits != 3 {
                    return bad("monogamy mode with Haar states needs qubits = 3".into());
                }
            }
            Mode::Polygamy => {
                if self.mu_grid.iter().any(|&m| !(0.0..=1.0).contains(&m)) {
                    return bad("polygamy mode needs mu in [0, 1]".into());
                }
                if self.state_class == StateClass::Haar {
                    return bad("polygamy mode needs W-class states".into());
                }
                if self.focus != "A" {
                    return bad("polygamy mode is evaluated with focus A".into());
                }
            }
            Mode::Lemma1 => {
                if self.mu_grid.iter().any(|&x| x < 2.0) {
                    return bad("lemma1 mode needs exponents >= 2".into());
                }
                if self.state_class != StateClass::File && self.n_qubits != 3 {
                    return bad("lemma1 mode needs qubits = 3".into());
                }
            }
            Mode::Ckw => {
                if self.state_class != StateClass::File && self.n_qubits > 6 {
                    return bad("ckw mode is limited to 6 qubits".into());
                }
            }
            Mode::Scalar => {
                if self.mu_grid.iter().any(|&x| x < 0.0) {
                    return bad("scalar mode needs nonnegative exponents".into());
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_layer_parses_and_rejects_unknown_keys() {
        let o = Overrides::parse_file_text("# campaign\nmode = polygamy\nstates=20\nalpha = 0.9, 1.1\nseed=7\n").unwrap();
        assert_eq!(o.mode, Some(Mode::Polygamy));
        assert_eq!(o.n_states, Some(20));
        assert_eq!(o.alpha_grid, Some(vec![0.9, 1.1]));
        assert!(Overrides::parse_file_text("colour = red").is_err());
        assert!(Overrides::parse_file_text("states").is_err());
    }

    #[test]
    fn precedence_cli_over_file_over_env() {
        let file = Overrides { seed: Some(5), n_states: Some(10), ..Default::default() };
        let cli = Overrides { seed: Some(9), ..Default::default() };
        let cfg = CampaignConfig::resolve(cli.over(file.clone()), Some(3)).unwrap();
        assert_eq!((cfg.seed, cfg.n_states), (9, 10));
        let cfg = CampaignConfig::resolve(Overrides::default().over(file), Some(3)).unwrap();
        assert_eq!(cfg.seed, 5);
        let cfg = CampaignConfig::resolve(Overrides::default(), Some(3)).unwrap();
        assert_eq!(cfg.seed, 3);
        let cfg = CampaignConfig::resolve(Overrides::default(), None).unwrap();
        assert_eq!(cfg.seed, DEFAULT_SEED);
    }

    #[test]
    fn invalid_configs() {
        let zero = Overrides { n_states: Some(0), ..Default::default() };
        assert!(matches!(CampaignConfig::resolve(zero, None), Err(CliError::Config(_))));
        let tol = Overrides { tolerance: Some(0.0), ..Default::default() };
        assert!(CampaignConfig::resolve(tol, None).is_err());
        let mu = Overrides { mu_grid: Some(vec![1.5]), ..Default::default() };
        assert!(CampaignConfig::resolve(mu, None).is_err());
        let empty = Overrides { alpha_grid: Some(vec![]), ..Default::default() };
        assert!(CampaignConfig::resolve(empty, None).is_err());
        assert!(env_seed(Some("x")).is_err());
        assert_eq!(env_seed(Some("12")).unwrap(), Some(12));
    }
}

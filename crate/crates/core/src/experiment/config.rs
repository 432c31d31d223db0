//! Flat `key = value` experiment configuration.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::coin::{chi_eigenstates, CoinState1};
use crate::delta::ShiftModel;
use crate::multiparticle::{CoinKind, InitialCoinSpec, Sign};

/// Configuration problem, reported with the offending key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    fn new(key: &str, message: impl Into<String>) -> Self {
        Self {
            key: key.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config key `{}`: {}", self.key, self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    Single,
    Sameside,
    Bell,
    Indist,
    Asymptote,
    Delta,
    FourierCheck,
    Scan,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::Single,
        Experiment::Sameside,
        Experiment::Bell,
        Experiment::Indist,
        Experiment::Asymptote,
        Experiment::Delta,
        Experiment::FourierCheck,
        Experiment::Scan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Single => "single",
            Experiment::Sameside => "sameside",
            Experiment::Bell => "bell",
            Experiment::Indist => "indist",
            Experiment::Asymptote => "asymptote",
            Experiment::Delta => "delta",
            Experiment::FourierCheck => "fourier-check",
            Experiment::Scan => "scan",
        }
    }

    /// Accepted particle counts.
    fn m_range(self) -> (usize, usize) {
        match self {
            Experiment::Single => (1, 1),
            Experiment::Sameside => (2, 12),
            Experiment::Bell => (2, 8),
            Experiment::Indist => (2, 4),
            Experiment::Asymptote => (1, 3),
            Experiment::Delta | Experiment::FourierCheck | Experiment::Scan => (2, 2),
        }
    }

    fn default_m(self) -> usize {
        if self == Experiment::Single {
            1
        } else {
            2
        }
    }

    fn max_t(self, m: usize) -> usize {
        match self {
            Experiment::Single | Experiment::Sameside | Experiment::Bell => 20_000,
            Experiment::Indist => [0, 0, 400, 60, 30][m],
            Experiment::Asymptote => 0,
            Experiment::Delta | Experiment::Scan => 2000,
            Experiment::FourierCheck => 1000,
        }
    }

    fn default_t(self) -> usize {
        match self {
            Experiment::FourierCheck => 50,
            Experiment::Scan => 200,
            Experiment::Asymptote => 0,
            _ => 100,
        }
    }

    fn uses_initial(self) -> bool {
        !matches!(self, Experiment::Bell | Experiment::Indist | Experiment::Scan)
    }

    fn uses_shift(self) -> bool {
        matches!(self, Experiment::Delta | Experiment::Scan | Experiment::FourierCheck)
    }

    fn default_grid(self) -> Option<usize> {
        match self {
            Experiment::FourierCheck => Some(256),
            Experiment::Scan => Some(8),
            Experiment::Asymptote => Some(101),
            _ => None,
        }
    }
}

impl FromStr for Experiment {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| ConfigError::new("experiment", format!("unknown experiment `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Initial coin configuration as parsed from its token.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialState {
    /// One walker, or every walker in the same state.
    Single(CoinState1),
    Separable(Vec<CoinState1>),
    BellPsi(Sign),
    BellPhi(Sign),
    Vector(Vec<Complex64>),
}

impl InitialState {
    /// Coin spec of `m` distinguishable walkers.
    pub fn spec(&self, m: usize) -> Result<InitialCoinSpec, ConfigError> {
        let kind = match self {
            InitialState::Single(s) => CoinKind::Separable(vec![*s; m]),
            InitialState::Separable(v) => CoinKind::Separable(v.clone()),
            InitialState::BellPsi(s) => CoinKind::BellPsi(*s),
            InitialState::BellPhi(s) => CoinKind::BellPhi(*s),
            InitialState::Vector(v) => CoinKind::General(v.clone()),
        };
        InitialCoinSpec::new(m, kind).map_err(|e| ConfigError::new("initial", e.to_string()))
    }

    /// The `2^m` coin vector.
    pub fn coin_vector(&self, m: usize) -> Result<Vec<Complex64>, ConfigError> {
        if m == 1 {
            if let InitialState::Single(s) = self {
                return Ok(s.as_array().to_vec());
            }
            if let InitialState::Vector(v) = self {
                return check_vector(v.clone(), 2);
            }
            return Err(ConfigError::new("initial", "a single walker needs a one-particle state"));
        }
        self.spec(m)?.coin_vector().map_err(|e| ConfigError::new("initial", e.to_string()))
    }

    pub fn single(&self) -> Result<CoinState1, ConfigError> {
        match self {
            InitialState::Single(s) => Ok(*s),
            InitialState::Vector(v) if v.len() == 2 => {
                CoinState1::new(v[0], v[1]).map_err(|e| ConfigError::new("initial", e.to_string()))
            }
            _ => Err(ConfigError::new("initial", "a single walker needs a one-particle state")),
        }
    }
}

fn check_vector(v: Vec<Complex64>, len: usize) -> Result<Vec<Complex64>, ConfigError> {
    if v.len() != len {
        return Err(ConfigError::new("initial", format!("expected {len} vector entries, got {}", v.len())));
    }
    let n: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if (n - 1.0).abs() > crate::coin::NORM_TOL {
        return Err(ConfigError::new("initial", format!("vector is not normalized (squared norm {n})")));
    }
    Ok(v)
}

fn parse_real(key: &str, s: &str) -> Result<f64, ConfigError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| ConfigError::new(key, format!("`{s}` is not a finite number")))
}

fn parse_single(tok: &str) -> Result<CoinState1, ConfigError> {
    let (chi_p, chi_m) = chi_eigenstates();
    Ok(match tok.trim() {
        "L" => CoinState1::left(),
        "R" => CoinState1::right(),
        "sym" => CoinState1::symmetric(),
        "chi+" => chi_p,
        "chi-" => chi_m,
        other => {
            let Some(rest) = other.strip_prefix("ang:") else {
                return Err(ConfigError::new("initial", format!("unknown state token `{other}`")));
            };
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 2 {
                return Err(ConfigError::new("initial", "expected ang:THETA:PHI"));
            }
            CoinState1::from_angles(parse_real("initial", parts[0])?, parse_real("initial", parts[1])?)
        }
    })
}

fn parse_complex(s: &str) -> Result<Complex64, ConfigError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse_real("initial", re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse_real("initial", re)?, parse_real("initial", im)?)),
        _ => Err(ConfigError::new("initial", format!("bad vector entry `{s}`, expected RE or RE:IM"))),
    }
}

impl FromStr for InitialState {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let s = s.trim();
        Ok(match s {
            "psi+" => InitialState::BellPsi(Sign::Plus),
            "psi-" => InitialState::BellPsi(Sign::Minus),
            "phi+" => InitialState::BellPhi(Sign::Plus),
            "phi-" => InitialState::BellPhi(Sign::Minus),
            _ => {
                if let Some(rest) = s.strip_prefix("sep:") {
                    InitialState::Separable(rest.split(',').map(parse_single).collect::<Result<_, _>>()?)
                } else if let Some(rest) = s.strip_prefix("vec:") {
                    let v: Vec<Complex64> = rest.split(',').map(parse_complex).collect::<Result<_, _>>()?;
                    let len = v.len();
                    if !len.is_power_of_two() || len < 2 {
                        return Err(ConfigError::new("initial", "vector length must be a power of two"));
                    }
                    InitialState::Vector(check_vector(v, len)?)
                } else {
                    InitialState::Single(parse_single(s)?)
                }
            }
        })
    }
}

/// A validated experiment configuration. `raw` keeps the effective
/// `key = value` pairs, in key order, for echoing into reports.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub m: usize,
    pub t_max: usize,
    pub initial: Option<InitialState>,
    pub shift: ShiftModel,
    pub grid: Option<usize>,
    pub out: Option<String>,
    pub format: Format,
    pub raw: Vec<(String, String)>,
}

pub const KEYS: [&str; 8] = ["experiment", "m", "t_max", "initial", "shift", "grid", "out", "format"];

/// Parses a `key = value` file; blank lines and `#` comments are skipped.
pub fn parse_file(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError::new(
                line,
                format!("line {}: expected key = value", lineno + 1),
            ));
        };
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Builds a configuration from file pairs with `overrides` taking precedence.
pub fn parse_config(file: &[(String, String)], overrides: &[(String, String)]) -> Result<ExperimentConfig, ConfigError> {
    let mut values: Vec<(String, String)> = Vec::new();
    for (k, v) in file.iter().chain(overrides) {
        let key = k.replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError::new(k, "unknown key"));
        }
        match values.iter_mut().find(|(existing, _)| *existing == key) {
            Some(slot) => slot.1 = v.clone(),
            None => values.push((key, v.clone())),
        }
    }
    let get = |key: &str| values.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
    let parse_usize = |key: &str, v: &str| -> Result<usize, ConfigError> {
        v.parse::<usize>()
            .map_err(|_| ConfigError::new(key, format!("`{v}` is not a non-negative integer")))
    };

    let experiment: Experiment = get("experiment")
        .ok_or_else(|| ConfigError::new("experiment", "missing"))?
        .parse()?;
    let m = match get("m") {
        Some(v) => parse_usize("m", v)?,
        None => experiment.default_m(),
    };
    let (lo, hi) = experiment.m_range();
    if m < lo || m > hi {
        return Err(ConfigError::new(
            "m",
            format!("{} supports M in [{lo}, {hi}], got {m}", experiment.name()),
        ));
    }
    let t_max = match get("t_max") {
        Some(v) => parse_usize("t_max", v)?,
        None => experiment.default_t(),
    };
    if t_max > experiment.max_t(m) {
        return Err(ConfigError::new(
            "t_max",
            format!("{} with M = {m} allows t_max <= {}", experiment.name(), experiment.max_t(m)),
        ));
    }

    let initial = match (get("initial"), experiment.uses_initial()) {
        (Some(_), false) => {
            return Err(ConfigError::new(
                "initial",
                format!("{} does not take an initial state", experiment.name()),
            ))
        }
        (Some(v), true) => Some(v.parse::<InitialState>()?),
        (None, true) => Some(match experiment {
            Experiment::FourierCheck => InitialState::Vector(vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ]),
            _ => InitialState::Single(CoinState1::left()),
        }),
        (None, false) => None,
    };
    if let Some(init) = &initial {
        validate_initial(experiment, m, init)?;
    }

    let shift = match get("shift") {
        None => {
            if experiment == Experiment::FourierCheck {
                ShiftModel::Axial
            } else {
                ShiftModel::Diagonal
            }
        }
        Some(_) if !experiment.uses_shift() => {
            return Err(ConfigError::new("shift", format!("{} has no shift model", experiment.name())))
        }
        Some("diagonal") => ShiftModel::Diagonal,
        Some("axial") => ShiftModel::Axial,
        Some(v) => return Err(ConfigError::new("shift", format!("expected diagonal or axial, got `{v}`"))),
    };
    if experiment == Experiment::FourierCheck && shift != ShiftModel::Axial {
        return Err(ConfigError::new("shift", "fourier-check propagates the axial model only"));
    }

    let grid = match (get("grid"), experiment.default_grid()) {
        (Some(_), None) => {
            return Err(ConfigError::new("grid", format!("{} has no grid", experiment.name())))
        }
        (Some(v), Some(_)) => Some(parse_usize("grid", v)?),
        (None, d) => d,
    };
    if let Some(g) = grid {
        validate_grid(experiment, g, t_max)?;
    }

    let format = match get("format") {
        None | Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some(v) => return Err(ConfigError::new("format", format!("expected csv or json, got `{v}`"))),
    };
    let out = get("out").filter(|v| *v != "-").map(str::to_string);

    let mut raw = vec![
        ("experiment".to_string(), experiment.name().to_string()),
        ("m".to_string(), m.to_string()),
        ("t_max".to_string(), t_max.to_string()),
    ];
    if initial.is_some() {
        raw.push(("initial".to_string(), get("initial").unwrap_or(default_token(experiment)).to_string()));
    }
    if experiment.uses_shift() {
        let name = match shift {
            ShiftModel::Diagonal => "diagonal",
            ShiftModel::Axial => "axial",
        };
        raw.push(("shift".to_string(), name.to_string()));
    }
    if let Some(g) = grid {
        raw.push(("grid".to_string(), g.to_string()));
    }
    Ok(ExperimentConfig {
        experiment,
        m,
        t_max,
        initial,
        shift,
        grid,
        out,
        format,
        raw,
    })
}

fn default_token(experiment: Experiment) -> &'static str {
    match experiment {
        Experiment::FourierCheck => "vec:1,0,0,0",
        _ => "L",
    }
}

fn validate_initial(experiment: Experiment, m: usize, init: &InitialState) -> Result<(), ConfigError> {
    match experiment {
        Experiment::Single => init.single().map(|_| ()),
        Experiment::FourierCheck => match init {
            InitialState::Vector(v) if v.len() == 4 => Ok(()),
            _ => Err(ConfigError::new("initial", "fourier-check needs vec: with 4 entries")),
        },
        Experiment::Delta => init.coin_vector(2).map(|_| ()),
        _ => init.coin_vector(m).map(|_| ()),
    }
}

fn validate_grid(experiment: Experiment, g: usize, t_max: usize) -> Result<(), ConfigError> {
    match experiment {
        Experiment::FourierCheck => {
            if g < 2 || !g.is_multiple_of(2) || g > 4096 {
                return Err(ConfigError::new("grid", "grid must be even and in [2, 4096]"));
            }
            if g < 2 * t_max + 2 {
                return Err(ConfigError::new(
                    "grid",
                    format!("grid {g} is too small for t_max {t_max}; need at least {}", 2 * t_max + 2),
                ));
            }
        }
        Experiment::Scan if !(2..=64).contains(&g) => {
            return Err(ConfigError::new("grid", "scan resolution must be in [2, 64]"));
        }
        Experiment::Asymptote if !(2..=100_000).contains(&g) => {
            return Err(ConfigError::new("grid", "sample count must be in [2, 100000]"));
        }
        _ => {}
    }
    Ok(())
}

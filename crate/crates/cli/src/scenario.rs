//! Scenario files: `key = value` lines with `#` comments.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use jsmimo_core::{db_to_linear, DetectorKind, EstimatorKind, ParamMode, SystemConfig};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ScenarioError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// `q_t = q_d`, in dB.
    JamPowerDb,
    Antennas,
    PilotLen,
}

impl SweepAxis {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "jam_power_db" => Some(SweepAxis::JamPowerDb),
            "antennas" => Some(SweepAxis::Antennas),
            "pilot_len" => Some(SweepAxis::PilotLen),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeRoute {
    MonteCarlo,
    ClosedForm,
    Asymptotic,
}

impl SeRoute {
    pub fn name(self) -> &'static str {
        match self {
            SeRoute::MonteCarlo => "monte_carlo",
            SeRoute::ClosedForm => "closed_form",
            SeRoute::Asymptotic => "asymptotic",
        }
    }
}

/// An estimator, detector and evaluation route, written `mmse_js+zfjs:mc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Method {
    pub estimator: EstimatorKind,
    pub detector: DetectorKind,
    pub route: SeRoute,
}

impl Method {
    pub const fn new(estimator: EstimatorKind, detector: DetectorKind, route: SeRoute) -> Self {
        Method {
            estimator,
            detector,
            route,
        }
    }

    fn check(&self) -> Result<(), String> {
        match self.route {
            SeRoute::ClosedForm if (self.estimator, self.detector) != (EstimatorKind::MmseJs, DetectorKind::Zfjs) => {
                Err(format!("{self}: the closed form exists only for mmse_js+zfjs"))
            }
            SeRoute::Asymptotic if self.estimator != EstimatorKind::Lmmse => {
                Err(format!("{self}: the asymptotic route assumes lmmse estimates"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let route = match self.route {
            SeRoute::MonteCarlo => "mc",
            SeRoute::ClosedForm => "cf",
            SeRoute::Asymptotic => "asy",
        };
        write!(f, "{}+{}:{}", self.estimator.name(), self.detector.name(), route)
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("bad method `{s}`, expected estimator+detector:route");
        let (pair, route) = s.split_once(':').ok_or_else(bad)?;
        let (est, det) = pair.split_once('+').ok_or_else(bad)?;
        let estimator = match est.trim() {
            "lmmse" => EstimatorKind::Lmmse,
            "mmse_js" => EstimatorKind::MmseJs,
            other => return Err(format!("unknown estimator `{other}`")),
        };
        let detector = match det.trim() {
            "mf" => DetectorKind::Mf,
            "zf" => DetectorKind::Zf,
            "zfjs" => DetectorKind::Zfjs,
            other => return Err(format!("unknown detector `{other}`")),
        };
        let route = match route.trim() {
            "mc" | "monte_carlo" => SeRoute::MonteCarlo,
            "cf" | "closed_form" => SeRoute::ClosedForm,
            "asy" | "asymptotic" => SeRoute::Asymptotic,
            other => return Err(format!("unknown route `{other}`")),
        };
        Ok(Method::new(estimator, detector, route))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig2,
    Fig3,
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            other => Err(format!("unknown preset `{other}` (expected fig2 or fig3)")),
        }
    }
}

pub const DEFAULT_OUTER: usize = 2000;
pub const DEFAULT_INNER: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub base: SystemConfig,
    pub sweep_axis: SweepAxis,
    pub sweep_values: Vec<f64>,
    /// Pilot lengths evaluated at every sweep point.
    pub tau_values: Vec<usize>,
    pub methods: Vec<Method>,
    pub mode: ParamMode,
    pub n_outer: usize,
    pub n_inner: usize,
    pub out_path: Option<PathBuf>,
}

impl Scenario {
    pub fn preset(preset: Preset) -> Self {
        use DetectorKind::*;
        use EstimatorKind::*;
        match preset {
            Preset::Fig2 => {
                let p = db_to_linear(5.0);
                Scenario {
                    base: SystemConfig::symmetric(100, 1, 3, p, 1.0),
                    sweep_axis: SweepAxis::JamPowerDb,
                    sweep_values: (0..=10).map(|i| 2.0 * i as f64).collect(),
                    tau_values: vec![3],
                    methods: vec![
                        Method::new(MmseJs, Zfjs, SeRoute::MonteCarlo),
                        Method::new(MmseJs, Zfjs, SeRoute::ClosedForm),
                        Method::new(Lmmse, Zf, SeRoute::MonteCarlo),
                        Method::new(Lmmse, Mf, SeRoute::MonteCarlo),
                    ],
                    mode: ParamMode::Estimated,
                    n_outer: DEFAULT_OUTER,
                    n_inner: DEFAULT_INNER,
                    out_path: None,
                }
            }
            Preset::Fig3 => {
                let p = db_to_linear(2.0);
                Scenario {
                    base: SystemConfig::symmetric(20, 2, 5, p, p),
                    sweep_axis: SweepAxis::Antennas,
                    sweep_values: (1..=10).map(|i| 20.0 * i as f64).collect(),
                    tau_values: vec![3, 4, 5],
                    methods: vec![Method::new(MmseJs, Zfjs, SeRoute::MonteCarlo)],
                    mode: ParamMode::Estimated,
                    n_outer: DEFAULT_OUTER,
                    n_inner: DEFAULT_INNER,
                    out_path: None,
                }
            }
        }
    }

    /// The system at one sweep point and pilot length.
    pub fn config_at(&self, value: f64, tau: usize) -> SystemConfig {
        let mut cfg = self.base.clone();
        cfg.pilot_len = tau;
        match self.sweep_axis {
            SweepAxis::JamPowerDb => {
                cfg.q_t = db_to_linear(value);
                cfg.q_d = cfg.q_t;
            }
            SweepAxis::Antennas => cfg.antennas = value as usize,
            SweepAxis::PilotLen => cfg.pilot_len = value as usize,
        }
        cfg
    }

    /// Pilot lengths in effect: the sweep itself when sweeping `pilot_len`.
    pub fn taus(&self) -> Vec<usize> {
        match self.sweep_axis {
            SweepAxis::PilotLen => vec![self.base.pilot_len],
            _ => self.tau_values.clone(),
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let invalid = |m: String| Err(ScenarioError::Invalid(m));
        if self.methods.is_empty() {
            return invalid("no methods listed".into());
        }
        if self.sweep_values.is_empty() {
            return invalid("no sweep values".into());
        }
        if self
            .sweep_values
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return invalid("sweep values must be strictly increasing".into());
        }
        if self.tau_values.is_empty() {
            return invalid("no pilot lengths".into());
        }
        if self.n_outer < 2 || self.n_inner < 2 {
            return invalid("n_outer and n_inner must be at least 2".into());
        }
        if self.sweep_axis != SweepAxis::JamPowerDb && self.sweep_values.iter().any(|v| v.fract() != 0.0 || *v < 1.0) {
            return invalid("integer sweeps need positive whole values".into());
        }
        for m in &self.methods {
            m.check().map_err(ScenarioError::Invalid)?;
        }
        for &v in &self.sweep_values {
            for tau in self.taus() {
                self.config_at(v, tau)
                    .validate()
                    .map_err(|e| ScenarioError::Invalid(format!("at sweep value {v}, tau {tau}: {e}")))?;
            }
        }
        Ok(())
    }
}

const KEYS: &[&str] = &[
    "preset",
    "M",
    "antennas",
    "K",
    "users",
    "tau",
    "pilot_len",
    "T",
    "coherence_len",
    "p_db",
    "q_db",
    "p_t_db",
    "p_d_db",
    "q_t_db",
    "q_d_db",
    "beta",
    "beta_w",
    "seed",
    "n_outer",
    "n_inner",
    "sweep",
    "sweep_values",
    "tau_values",
    "methods",
    "mode",
    "pilot_hopping",
    "out",
];

struct Line<'a> {
    number: usize,
    key: &'a str,
    value: &'a str,
}

impl Line<'_> {
    fn err(&self, message: impl Into<String>) -> ScenarioError {
        ScenarioError::Parse {
            line: self.number,
            message: message.into(),
        }
    }

    fn num<T: FromStr>(&self) -> Result<T, ScenarioError> {
        self.value
            .parse()
            .map_err(|_| self.err(format!("`{}` expects a number, got `{}`", self.key, self.value)))
    }

    fn list<T: FromStr>(&self) -> Result<Vec<T>, ScenarioError> {
        self.value
            .split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse()
                    .map_err(|_| self.err(format!("`{}` expects numbers, got `{s}`", self.key)))
            })
            .collect()
    }
}

/// Parse scenario text. A `preset` line is applied first wherever it appears;
/// every other key then overrides it.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    parse_scenario_over(text, None)
}

/// Like [`parse_scenario`], with `fallback` as the base when the text names no preset.
pub fn parse_scenario_over(text: &str, fallback: Option<Preset>) -> Result<Scenario, ScenarioError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let number = i + 1;
        let (key, value) = content.split_once('=').ok_or(ScenarioError::Parse {
            line: number,
            message: format!("expected `key = value`, got `{content}`"),
        })?;
        let line = Line {
            number,
            key: key.trim(),
            value: value.trim(),
        };
        if !KEYS.contains(&line.key) {
            return Err(line.err(format!("unknown key `{}`", line.key)));
        }
        lines.push(line);
    }

    let preset = lines
        .iter()
        .filter(|l| l.key == "preset")
        .map(|l| l.value.parse::<Preset>().map_err(|m| l.err(m)))
        .next_back()
        .transpose()?
        .or(fallback);
    let mut sc = match preset {
        Some(p) => Scenario::preset(p),
        None => Scenario {
            base: SystemConfig::symmetric(0, 0, 0, 0.0, 0.0),
            sweep_axis: SweepAxis::JamPowerDb,
            sweep_values: Vec::new(),
            tau_values: Vec::new(),
            methods: Vec::new(),
            mode: ParamMode::Estimated,
            n_outer: DEFAULT_OUTER,
            n_inner: DEFAULT_INNER,
            out_path: None,
        },
    };

    let seen = |names: &[&str]| lines.iter().any(|l| names.contains(&l.key));
    if preset.is_none() {
        let required: [(&[&str], &'static str); 6] = [
            (&["M", "antennas"], "M"),
            (&["K", "users"], "K"),
            (&["tau", "pilot_len"], "tau"),
            (&["methods"], "methods"),
            (&["sweep"], "sweep"),
            (&["sweep_values"], "sweep_values"),
        ];
        for (names, label) in required {
            if !seen(names) {
                return Err(ScenarioError::Missing(label));
            }
        }
        if !seen(&["p_db", "p_t_db"]) {
            return Err(ScenarioError::Missing("p_t_db"));
        }
        if !seen(&["p_db", "p_d_db"]) {
            return Err(ScenarioError::Missing("p_d_db"));
        }
    }

    let mut beta: Option<f64> = None;
    let mut tau_set = false;
    for l in &lines {
        let b = &mut sc.base;
        match l.key {
            "preset" => {}
            "M" | "antennas" => b.antennas = l.num()?,
            "K" | "users" => b.users = l.num()?,
            "tau" | "pilot_len" => {
                b.pilot_len = l.num()?;
                tau_set = true;
            }
            "T" | "coherence_len" => b.coherence_len = l.num()?,
            "p_db" => {
                b.p_t = db_to_linear(l.num()?);
                b.p_d = b.p_t;
            }
            "q_db" => {
                b.q_t = db_to_linear(l.num()?);
                b.q_d = b.q_t;
            }
            "p_t_db" => b.p_t = db_to_linear(l.num()?),
            "p_d_db" => b.p_d = db_to_linear(l.num()?),
            "q_t_db" => b.q_t = db_to_linear(l.num()?),
            "q_d_db" => b.q_d = db_to_linear(l.num()?),
            "beta" => beta = Some(l.num()?),
            "beta_w" => b.beta_jammer = l.num()?,
            "seed" => b.seed = l.num()?,
            "pilot_hopping" => {
                b.pilot_hopping = l
                    .value
                    .parse()
                    .map_err(|_| l.err(format!("`pilot_hopping` expects true or false, got `{}`", l.value)))?
            }
            "n_outer" => sc.n_outer = l.num()?,
            "n_inner" => sc.n_inner = l.num()?,
            "sweep" => {
                sc.sweep_axis =
                    SweepAxis::parse(l.value).ok_or_else(|| l.err(format!("unknown sweep axis `{}`", l.value)))?
            }
            "sweep_values" => sc.sweep_values = l.list()?,
            "tau_values" => sc.tau_values = l.list()?,
            "methods" => {
                sc.methods = l
                    .value
                    .split(',')
                    .map(|s| s.trim())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<Method>().map_err(|m| l.err(m)))
                    .collect::<Result<_, _>>()?
            }
            "mode" => {
                sc.mode = match l.value {
                    "genie" => ParamMode::Genie,
                    "estimated" => ParamMode::Estimated,
                    other => return Err(l.err(format!("unknown mode `{other}`"))),
                }
            }
            "out" => sc.out_path = Some(PathBuf::from(l.value)),
            _ => unreachable!("key list checked above"),
        }
    }
    sc.base.beta_users = vec![beta.unwrap_or(1.0); sc.base.users];
    if tau_set && !seen(&["tau_values"]) {
        sc.tau_values = vec![sc.base.pilot_len];
    }
    if sc.tau_values.is_empty() {
        sc.tau_values = vec![sc.base.pilot_len];
    }
    sc.validate()?;
    Ok(sc)
}

pub fn parse_config(path: &Path, fallback: Option<Preset>) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_scenario_over(&text, fallback)
}

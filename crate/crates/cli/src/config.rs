//! Flat `key = value` experiment documents.
//!
//! One setting per line, `#` starts a comment. Frequencies are angular
//! frequencies in rad/s; a figure's "X kHz" is written as `X e3`. Any real
//! value may carry a `pi` factor: `2000pi`, `4000*pi`, `pi`.

use std::fmt::Write as _;
use std::path::PathBuf;

use ptdd_core::engine::{
    AxisSpec, EnsembleOptions, Normalization, SweepAxis, SweepSpec, TrialConfig,
    DEFAULT_BATCHES, DEFAULT_TRIALS,
};
use ptdd_core::linalg::StateVec2;
use ptdd_core::model::{not_gate_time, PTParams};
use ptdd_core::noise::{NoiseModel, SeedPolicy};
use ptdd_core::sequence::{SequenceKind, SequenceSpec};

use crate::error::{CliError, CliResult};

/// Unit convention echoed in every output header.
pub const UNIT_CONVENTION: &str =
    "angular frequencies in rad/s (a stated \"X kHz\" is X*1e3 rad/s, \"X Hz\" is X rad/s); times in s";

const KEYS: &[&str] = &[
    "j",
    "gamma",
    "m",
    "tau",
    "tau_not_divisor",
    "initial_state",
    "beta_model",
    "beta",
    "delta_gamma_model",
    "delta_gamma",
    "noise_period_factor",
    "sequences",
    "trials",
    "batches",
    "seed",
    "workers",
    "normalization",
    "out",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TauSpec {
    Seconds(f64),
    /// `τ = T_NOT / divisor` at the base (J, Γ).
    NotGateDivisor(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialState {
    Zero,
    One,
    Plus,
}

impl InitialState {
    pub fn label(self) -> &'static str {
        match self {
            InitialState::Zero => "0",
            InitialState::One => "1",
            InitialState::Plus => "plus",
        }
    }

    pub fn vector(self) -> StateVec2 {
        match self {
            InitialState::Zero => StateVec2::zero(),
            InitialState::One => StateVec2::one(),
            InitialState::Plus => StateVec2::plus(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseKind {
    Zero,
    Constant,
    Gaussian,
    Uniform,
    GaussianStatic,
    UniformStatic,
}

impl NoiseKind {
    const ALL: [NoiseKind; 6] = [
        NoiseKind::Zero,
        NoiseKind::Constant,
        NoiseKind::Gaussian,
        NoiseKind::Uniform,
        NoiseKind::GaussianStatic,
        NoiseKind::UniformStatic,
    ];

    pub fn label(self) -> &'static str {
        match self {
            NoiseKind::Zero => "zero",
            NoiseKind::Constant => "constant",
            NoiseKind::Gaussian => "gaussian",
            NoiseKind::Uniform => "uniform",
            NoiseKind::GaussianStatic => "gaussian_static",
            NoiseKind::UniformStatic => "uniform_static",
        }
    }

    fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.label() == s)
    }

    fn model(self, scale: f64, period: f64) -> NoiseModel {
        match self {
            NoiseKind::Zero => NoiseModel::Zero,
            NoiseKind::Constant => NoiseModel::ConstantValue(scale),
            NoiseKind::Gaussian => NoiseModel::GaussianPiecewise { sigma: scale, period },
            NoiseKind::Uniform => NoiseModel::UniformPiecewise { w: scale, period },
            NoiseKind::GaussianStatic => NoiseModel::GaussianStatic { sigma: scale },
            NoiseKind::UniformStatic => NoiseModel::UniformStatic { w: scale },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisDef {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

fn axis_name(axis: SweepAxis) -> &'static str {
    match axis {
        SweepAxis::Tau => "tau",
        SweepAxis::J => "j",
        SweepAxis::Gamma => "gamma",
        SweepAxis::Beta => "beta",
        SweepAxis::DeltaGamma => "delta_gamma",
    }
}

fn axis_from_name(s: &str) -> Option<SweepAxis> {
    [
        SweepAxis::Tau,
        SweepAxis::J,
        SweepAxis::Gamma,
        SweepAxis::Beta,
        SweepAxis::DeltaGamma,
    ]
    .into_iter()
    .find(|&a| axis_name(a) == s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub j: f64,
    pub gamma: f64,
    pub cycles: u32,
    pub tau: TauSpec,
    pub initial: InitialState,
    pub beta_model: NoiseKind,
    pub beta: f64,
    pub delta_gamma_model: NoiseKind,
    pub delta_gamma: f64,
    /// Piecewise noise is redrawn every `noise_period_factor·τ`.
    pub noise_period_factor: f64,
    pub sequences: Vec<SequenceKind>,
    pub trials: u64,
    pub batches: usize,
    pub seed: u64,
    pub workers: usize,
    pub normalization: Normalization,
    pub out: Option<PathBuf>,
    /// Row-major: the first axis varies slowest.
    pub axes: Vec<AxisDef>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            j: 1e4,
            gamma: 1e3,
            cycles: 2,
            tau: TauSpec::NotGateDivisor(2.0),
            initial: InitialState::One,
            beta_model: NoiseKind::Zero,
            beta: 0.0,
            delta_gamma_model: NoiseKind::Zero,
            delta_gamma: 0.0,
            noise_period_factor: 2.0,
            sequences: SequenceKind::ALL.to_vec(),
            trials: DEFAULT_TRIALS,
            batches: DEFAULT_BATCHES,
            seed: 0,
            workers: 0,
            normalization: Normalization::PerTrial,
            out: None,
            axes: Vec::new(),
        }
    }
}

/// Parses a real number with an optional `pi` factor.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (num, pi) = match s.strip_suffix("pi") {
        Some(rest) => (rest.trim_end().trim_end_matches('*').trim_end(), true),
        None => (s, false),
    };
    let base = if pi && num.is_empty() {
        1.0
    } else {
        num.parse::<f64>().map_err(|_| format!("`{s}` is not a number"))?
    };
    let v = if pi { base * std::f64::consts::PI } else { base };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_int<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.trim()
        .parse::<T>()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn parse_axis(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("axis `{s}` must be start:stop:count"));
    }
    let count: usize = parse_int(parts[2])?;
    if count == 0 {
        return Err("axis has no points (count is 0)".into());
    }
    Ok((parse_real(parts[0])?, parse_real(parts[1])?, count))
}

fn parse_sequences(s: &str) -> Result<Vec<SequenceKind>, String> {
    let mut kinds = Vec::new();
    for label in s.split(',').map(str::trim).filter(|l| !l.is_empty()) {
        let k = SequenceKind::from_label(label)
            .ok_or_else(|| format!("unknown sequence `{label}` (expected unprotected, s1, s2)"))?;
        if !kinds.contains(&k) {
            kinds.push(k);
        }
    }
    if kinds.is_empty() {
        return Err("no sequences listed".into());
    }
    kinds.sort_by_key(|k| SequenceKind::ALL.iter().position(|a| a == k));
    Ok(kinds)
}

fn fmt_real(v: f64) -> String {
    format!("{v:e}")
}

impl ExperimentConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let value = value.trim();
        if let Some(name) = key.strip_prefix("axis.") {
            let axis = axis_from_name(name).ok_or_else(|| {
                format!("unknown axis `{name}` (expected tau, j, gamma, beta, delta_gamma)")
            })?;
            let (start, stop, count) = parse_axis(value)?;
            let def = AxisDef { axis, start, stop, count };
            match self.axes.iter_mut().find(|a| a.axis == axis) {
                Some(slot) => *slot = def,
                None => self.axes.push(def),
            }
            return Ok(());
        }
        match key {
            "j" => self.j = parse_real(value)?,
            "gamma" => self.gamma = parse_real(value)?,
            "m" => self.cycles = parse_int(value)?,
            "tau" => self.tau = TauSpec::Seconds(parse_real(value)?),
            "tau_not_divisor" => self.tau = TauSpec::NotGateDivisor(parse_real(value)?),
            "initial_state" => {
                self.initial = match value {
                    "0" => InitialState::Zero,
                    "1" => InitialState::One,
                    "plus" => InitialState::Plus,
                    _ => return Err(format!("initial_state `{value}` must be 0, 1 or plus")),
                }
            }
            "beta_model" | "delta_gamma_model" => {
                let kind = NoiseKind::from_label(value).ok_or_else(|| {
                    let names: Vec<_> = NoiseKind::ALL.iter().map(|k| k.label()).collect();
                    format!("unknown noise model `{value}` (expected {})", names.join(", "))
                })?;
                if key == "beta_model" {
                    self.beta_model = kind;
                } else {
                    self.delta_gamma_model = kind;
                }
            }
            "beta" => self.beta = parse_real(value)?,
            "delta_gamma" => self.delta_gamma = parse_real(value)?,
            "noise_period_factor" => self.noise_period_factor = parse_real(value)?,
            "sequences" => self.sequences = parse_sequences(value)?,
            "trials" => self.trials = parse_int(value)?,
            "batches" => self.batches = parse_int(value)?,
            "seed" => self.seed = parse_int(value)?,
            "workers" => self.workers = parse_int(value)?,
            "normalization" => {
                self.normalization = Normalization::from_label(value).ok_or_else(|| {
                    format!("normalization `{value}` must be per-trial or post-average")
                })?
            }
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Applies a whole document. Errors name `origin` and the 1-based line.
    pub fn apply_text(&mut self, text: &str, origin: &str) -> CliResult<()> {
        let mut seen: Vec<String> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| CliError::Config {
                origin: origin.to_string(),
                line: Some(line_no),
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(err("missing key before `=`".into()));
            }
            if seen.iter().any(|k| k == key) {
                return Err(err(format!("duplicate key `{key}`")));
            }
            self.set(key, value).map_err(err)?;
            seen.push(key.to_string());
        }
        Ok(())
    }

    /// Applies `key=value` overrides given on the command line.
    pub fn apply_overrides(&mut self, pairs: &[String]) -> CliResult<()> {
        for pair in pairs {
            let err = |message: String| CliError::Config {
                origin: "--set".into(),
                line: None,
                message,
            };
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{pair}`")))?;
            self.set(key.trim(), value).map_err(err)?;
        }
        Ok(())
    }

    /// Canonical document; parsing it back yields the same configuration.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        line("j", fmt_real(self.j));
        line("gamma", fmt_real(self.gamma));
        line("m", self.cycles.to_string());
        match self.tau {
            TauSpec::Seconds(t) => line("tau", fmt_real(t)),
            TauSpec::NotGateDivisor(d) => line("tau_not_divisor", fmt_real(d)),
        }
        line("initial_state", self.initial.label().into());
        line("beta_model", self.beta_model.label().into());
        line("beta", fmt_real(self.beta));
        line("delta_gamma_model", self.delta_gamma_model.label().into());
        line("delta_gamma", fmt_real(self.delta_gamma));
        line("noise_period_factor", fmt_real(self.noise_period_factor));
        let seqs: Vec<_> = self.sequences.iter().map(|k| k.label()).collect();
        line("sequences", seqs.join(","));
        line("trials", self.trials.to_string());
        line("batches", self.batches.to_string());
        line("seed", self.seed.to_string());
        line("normalization", self.normalization.label().into());
        for a in &self.axes {
            line(
                &format!("axis.{}", axis_name(a.axis)),
                format!("{}:{}:{}", fmt_real(a.start), fmt_real(a.stop), a.count),
            );
        }
        s
    }

    pub fn params(&self) -> CliResult<PTParams> {
        Ok(PTParams::new(self.j, self.gamma)?)
    }

    pub fn resolve_tau(&self) -> CliResult<f64> {
        match self.tau {
            TauSpec::Seconds(t) => Ok(t),
            TauSpec::NotGateDivisor(d) => {
                if !(d.is_finite() && d > 0.0) {
                    return Err(CliError::config("tau_not_divisor", format!("must be > 0, got {d}")));
                }
                Ok(not_gate_time(&self.params()?)? / d)
            }
        }
    }

    pub fn trial_config(&self) -> CliResult<TrialConfig> {
        let tau = self.resolve_tau()?;
        let period = self.noise_period_factor * tau;
        let cfg = TrialConfig {
            params: self.params()?,
            sequence: SequenceSpec::new(self.sequences[0], tau, self.cycles)?,
            beta: self.beta_model.model(self.beta, period),
            delta_gamma: self.delta_gamma_model.model(self.delta_gamma, period),
            initial: self.initial.vector(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn options(&self) -> EnsembleOptions {
        EnsembleOptions {
            trials: self.trials,
            seed: SeedPolicy::new(self.seed),
            normalization: self.normalization,
            workers: self.workers,
            batches: self.batches,
        }
    }

    pub fn sweep_spec(&self) -> CliResult<SweepSpec> {
        let axes = self
            .axes
            .iter()
            .map(|a| AxisSpec::linspace(a.axis, a.start, a.stop, a.count))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = SweepSpec {
            base: self.trial_config()?,
            kinds: self.sequences.clone(),
            axes,
            noise_period_factor: Some(self.noise_period_factor),
            options: self.options(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Replaces every axis point count.
    pub fn set_resolution(&mut self, count: usize) {
        for a in &mut self.axes {
            a.count = count;
        }
    }
}

/// Keys accepted besides `axis.<name>`.
pub fn known_keys() -> &'static [&'static str] {
    KEYS
}

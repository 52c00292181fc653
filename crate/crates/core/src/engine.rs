//! Propagation, Monte Carlo ensembles and parameter sweeps.
//!
//! Trials run concurrently on a rayon pool but every reduction walks the
//! per-trial results in trial-index order, so the output is bit-identical
//! for any worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{dm_normalize, expm_closed, DensityMatrix2, Operator2, StateVec2};
use crate::model::{h_pt_passive, NoiseFields, PTParams};
use crate::noise::{sample_trajectory, trial_stream, FieldTag, NoiseModel, SeedPolicy};
use crate::sequence::{compile_schedule, toggle_frame, PiecewiseSchedule, SequenceKind, SequenceSpec};

/// Norm below which a propagated state counts as total population loss.
pub const DEGENERATE_NORM: f64 = 1e-150;

/// Default ensemble size.
pub const DEFAULT_TRIALS: u64 = 10_000;

pub const DEFAULT_BATCHES: usize = 10;

/// Applies the schedule to `psi0` in time order. The result is not normalized.
pub fn propagate(sched: &PiecewiseSchedule, psi0: &StateVec2) -> Result<StateVec2> {
    let out = sched.apply(psi0)?;
    let norm = out.norm();
    if !out.is_finite() || norm < DEGENERATE_NORM {
        return Err(Error::DegenerateState(norm));
    }
    Ok(out)
}

/// Normalized `U(H̃_PT, T)·|ψ0⟩⟨ψ0|·U†`.
pub fn ideal_density(p: &PTParams, t: f64, psi0: &StateVec2) -> Result<DensityMatrix2> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidInput(format!("evolution time must be >= 0, got {t}")));
    }
    let u = expm_closed(&h_pt_passive(p), t)?;
    dm_normalize(&u.apply(psi0).outer())
}

/// `|Tr(ρ1·ρ2)| / √(Tr(ρ1²)·Tr(ρ2²))`.
pub fn fidelity(a: &DensityMatrix2, b: &DensityMatrix2) -> f64 {
    let overlap = (*a.as_operator() * *b.as_operator()).trace().norm();
    overlap / (a.purity() * b.purity()).sqrt()
}

/// How per-trial matrices are combined into the ensemble state.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// Normalize every trial to unit trace, then average.
    #[default]
    PerTrial,
    /// Average the unnormalized matrices, then normalize once.
    PostAverage,
}

impl Normalization {
    pub fn label(self) -> &'static str {
        match self {
            Normalization::PerTrial => "per-trial",
            Normalization::PostAverage => "post-average",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "per-trial" => Some(Normalization::PerTrial),
            "post-average" => Some(Normalization::PostAverage),
            _ => None,
        }
    }
}

/// Everything one trial needs.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialConfig {
    pub params: PTParams,
    pub sequence: SequenceSpec,
    pub beta: NoiseModel,
    pub delta_gamma: NoiseModel,
    pub initial: StateVec2,
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.initial.is_finite() && self.initial.norm() > 0.0) {
            return Err(Error::InvalidInput("initial state must have nonzero norm".into()));
        }
        self.beta.validate()?;
        self.delta_gamma.validate()
    }

    /// The same configuration run with a different sequence kind.
    pub fn with_kind(&self, kind: SequenceKind) -> Result<Self> {
        let sequence = SequenceSpec::new(kind, self.sequence.tau(), self.sequence.cycles())?;
        Ok(Self {
            sequence,
            ..self.clone()
        })
    }

    /// Sets the redraw period of piecewise noise models to `factor·τ`.
    pub fn with_noise_period_factor(&self, factor: f64) -> Self {
        let period = factor * self.sequence.tau();
        Self {
            beta: self.beta.with_period(period),
            delta_gamma: self.delta_gamma.with_period(period),
            ..self.clone()
        }
    }

    pub fn ideal(&self) -> Result<DensityMatrix2> {
        ideal_density(&self.params, self.sequence.effective_time(), &self.initial)
    }
}

/// Ensemble size, seeding and execution settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleOptions {
    pub trials: u64,
    pub seed: SeedPolicy,
    pub normalization: Normalization,
    /// Worker threads; 0 uses rayon's global pool.
    pub workers: usize,
    pub batches: usize,
}

impl Default for EnsembleOptions {
    fn default() -> Self {
        Self {
            trials: DEFAULT_TRIALS,
            seed: SeedPolicy::new(0),
            normalization: Normalization::PerTrial,
            workers: 0,
            batches: DEFAULT_BATCHES,
        }
    }
}

/// Averaged state and fidelity of one sequence kind at one parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleResult {
    pub kind: SequenceKind,
    pub rho: DensityMatrix2,
    pub fidelity: f64,
    /// Trials that contributed (excludes failures).
    pub n_trials: u64,
    pub failed: u64,
    /// Sample standard deviation of the per-batch fidelities.
    pub fidelity_spread: f64,
    pub batch_fidelities: Vec<f64>,
}

/// Runs `opts.trials` trials of `cfg` at sweep-point index 0.
pub fn run_ensemble(cfg: &TrialConfig, opts: &EnsembleOptions) -> Result<EnsembleResult> {
    let mut out = with_workers(opts.workers, || {
        run_paired(cfg, &[cfg.sequence.kind()], 0, opts)
    })??;
    Ok(out.remove(0))
}

/// Runs several sequence kinds on the same noise realizations.
///
/// Per trial, one β and one δΓ trajectory are drawn over the longest wall
/// time among `kinds`; shorter runs read a prefix of the same trajectory.
pub fn run_paired(
    cfg: &TrialConfig,
    kinds: &[SequenceKind],
    point: u64,
    opts: &EnsembleOptions,
) -> Result<Vec<EnsembleResult>> {
    cfg.validate()?;
    if opts.trials == 0 {
        return Err(Error::InvalidInput("trial count must be >= 1".into()));
    }
    if kinds.is_empty() {
        return Err(Error::InvalidInput("no sequence kinds requested".into()));
    }
    let configs = kinds
        .iter()
        .map(|&k| cfg.with_kind(k))
        .collect::<Result<Vec<_>>>()?;
    let horizon = configs
        .iter()
        .map(|c| c.sequence.wall_time())
        .fold(0.0, f64::max);
    let ideal = cfg.ideal()?;

    let trial_outputs: Vec<Result<Vec<Option<Operator2>>>> = (0..opts.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rb = trial_stream(&opts.seed, point, trial, FieldTag::Beta);
            let mut rg = trial_stream(&opts.seed, point, trial, FieldTag::DeltaGamma);
            let beta = sample_trajectory(&cfg.beta, horizon, &mut rb)?;
            let dg = sample_trajectory(&cfg.delta_gamma, horizon, &mut rg)?;
            configs
                .iter()
                .map(|c| {
                    let sched = compile_schedule(&c.sequence, &c.params, &beta, &dg)?;
                    Ok(trial_matrix(&sched, &c.initial, opts.normalization))
                })
                .collect()
        })
        .collect();

    let mut per_kind: Vec<Vec<Option<Operator2>>> =
        vec![Vec::with_capacity(opts.trials as usize); kinds.len()];
    for out in trial_outputs {
        for (slot, m) in per_kind.iter_mut().zip(out?) {
            slot.push(m);
        }
    }

    kinds
        .iter()
        .zip(per_kind)
        .map(|(&kind, mats)| reduce(kind, &mats, &ideal, opts))
        .collect()
}

fn trial_matrix(sched: &PiecewiseSchedule, psi0: &StateVec2, mode: Normalization) -> Option<Operator2> {
    let out = propagate(sched, psi0).ok()?;
    let raw = out.outer();
    match mode {
        Normalization::PerTrial => dm_normalize(&raw).ok().map(DensityMatrix2::into_operator),
        Normalization::PostAverage => Some(raw),
    }
}

fn average(mats: &[Option<Operator2>], mode: Normalization) -> Result<(DensityMatrix2, u64)> {
    let mut sum = Operator2::zero();
    let mut n = 0u64;
    for m in mats.iter().flatten() {
        sum += *m;
        n += 1;
    }
    if n == 0 {
        return Err(Error::DegenerateState(0.0));
    }
    let rho = match mode {
        Normalization::PerTrial => dm_normalize(&(sum * (1.0 / n as f64)))?,
        Normalization::PostAverage => dm_normalize(&sum)?,
    };
    Ok((rho, n))
}

fn reduce(
    kind: SequenceKind,
    mats: &[Option<Operator2>],
    ideal: &DensityMatrix2,
    opts: &EnsembleOptions,
) -> Result<EnsembleResult> {
    let (rho, n_ok) = average(mats, opts.normalization)?;
    let failed = mats.len() as u64 - n_ok;
    let batches = opts.batches.clamp(1, mats.len());
    let chunk = mats.len().div_ceil(batches);
    let batch_fidelities: Vec<f64> = mats
        .chunks(chunk)
        .filter_map(|c| average(c, opts.normalization).ok())
        .map(|(r, _)| fidelity(ideal, &r))
        .collect();
    Ok(EnsembleResult {
        kind,
        fidelity: fidelity(ideal, &rho),
        rho,
        n_trials: n_ok,
        failed,
        fidelity_spread: sample_std(&batch_fidelities),
        batch_fidelities,
    })
}

fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Runs `f` on a dedicated pool of `workers` threads (0: the global pool).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// A swept parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    Tau,
    J,
    Gamma,
    /// Scale of the β model: constant value, or σ for Gaussian models.
    Beta,
    /// Scale of the δΓ model: constant value, or w for uniform models.
    DeltaGamma,
}

impl SweepAxis {
    pub fn label(self) -> &'static str {
        match self {
            SweepAxis::Tau => "tau_s",
            SweepAxis::J => "j_rad_s",
            SweepAxis::Gamma => "gamma_rad_s",
            SweepAxis::Beta => "beta_rad_s",
            SweepAxis::DeltaGamma => "delta_gamma_rad_s",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxisSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

impl AxisSpec {
    /// `count` evenly spaced values from `start` to `stop` inclusive.
    pub fn linspace(axis: SweepAxis, start: f64, stop: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidInput(format!("axis {} has no points", axis.label())));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::InvalidInput(format!("axis {} bounds must be finite", axis.label())));
        }
        let values = if count == 1 {
            vec![start]
        } else {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|k| if k + 1 == count { stop } else { start + step * k as f64 })
                .collect()
        };
        Ok(Self { axis, values })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub base: TrialConfig,
    pub kinds: Vec<SequenceKind>,
    /// Row-major grid: the first axis varies slowest.
    pub axes: Vec<AxisSpec>,
    /// Piecewise noise periods are set to `factor·τ` at every point.
    pub noise_period_factor: Option<f64>,
    pub options: EnsembleOptions,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.kinds.is_empty() {
            return Err(Error::InvalidInput("no sequence kinds requested".into()));
        }
        if self.options.trials == 0 {
            return Err(Error::InvalidInput("trial count must be >= 1".into()));
        }
        for a in &self.axes {
            if a.values.is_empty() {
                return Err(Error::InvalidInput(format!("axis {} has no points", a.axis.label())));
            }
        }
        if let Some(f) = self.noise_period_factor {
            if !(f.is_finite() && f > 0.0) {
                return Err(Error::InvalidInput(format!("noise period factor must be > 0, got {f}")));
            }
        }
        self.base.validate()
    }

    pub fn point_count(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    /// Axis values of grid point `index`.
    pub fn coordinates(&self, mut index: usize) -> Vec<f64> {
        let mut coords = vec![0.0; self.axes.len()];
        for (slot, a) in coords.iter_mut().zip(&self.axes).rev() {
            let n = a.values.len();
            *slot = a.values[index % n];
            index /= n;
        }
        coords
    }

    /// The trial configuration at the given coordinates.
    pub fn config_at(&self, coords: &[f64]) -> Result<TrialConfig> {
        let mut cfg = self.base.clone();
        for (a, &v) in self.axes.iter().zip(coords) {
            match a.axis {
                SweepAxis::Tau => {
                    cfg.sequence = SequenceSpec::new(cfg.sequence.kind(), v, cfg.sequence.cycles())?
                }
                SweepAxis::J => cfg.params = cfg.params.with_j(v)?,
                SweepAxis::Gamma => cfg.params = cfg.params.with_gamma(v)?,
                SweepAxis::Beta => cfg.beta = cfg.beta.with_scale(v),
                SweepAxis::DeltaGamma => cfg.delta_gamma = cfg.delta_gamma.with_scale(v),
            }
        }
        if let Some(f) = self.noise_period_factor {
            cfg = cfg.with_noise_period_factor(f);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// One row of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub index: usize,
    pub coords: Vec<f64>,
    /// One result per requested kind, or the error that stopped this point.
    pub outcome: std::result::Result<Vec<EnsembleResult>, Error>,
}

/// Evaluates every grid point. Per-point failures are recorded, not fatal.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepPoint>> {
    spec.validate()?;
    with_workers(spec.options.workers, || {
        (0..spec.point_count())
            .into_par_iter()
            .map(|index| {
                let coords = spec.coordinates(index);
                let outcome = spec
                    .config_at(&coords)
                    .and_then(|cfg| run_paired(&cfg, &spec.kinds, index as u64, &spec.options));
                SweepPoint {
                    index,
                    coords,
                    outcome,
                }
            })
            .collect()
    })
}

/// Constant-noise fields as a single trajectory pair over `duration`.
fn constant_schedule(
    kind: SequenceKind,
    p: &PTParams,
    fields: &NoiseFields,
    tau: f64,
    cycles: u32,
) -> Result<PiecewiseSchedule> {
    use crate::noise::NoiseTrajectory;
    let seq = SequenceSpec::new(kind, tau, cycles)?;
    let w = seq.wall_time();
    compile_schedule(
        &seq,
        p,
        &NoiseTrajectory::constant(fields.beta, w),
        &NoiseTrajectory::constant(fields.delta_gamma, w),
    )
}

/// One cycle under constant noise, compiled and moved to the toggling frame.
pub fn toggled_cycle(
    kind: SequenceKind,
    p: &PTParams,
    fields: &NoiseFields,
    tau: f64,
) -> Result<(PiecewiseSchedule, Operator2)> {
    toggle_frame(&constant_schedule(kind, p, fields, tau, 1)?)
}

/// `‖Q†·U_cycle − e^{−2δΓτ}·exp(−iH̃_PT τ)‖_max` for one cycle under constant
/// noise, where `Q` is the cycle's net pulse product.
///
/// For the unprotected kind this is just the bare noise error.
pub fn cycle_error(kind: SequenceKind, p: &PTParams, fields: &NoiseFields, tau: f64) -> Result<f64> {
    let (toggled, _) = toggled_cycle(kind, p, fields, tau)?;
    let u = toggled.propagator()?;
    let loss = if kind.is_protected() {
        (-2.0 * fields.delta_gamma * tau).exp()
    } else {
        1.0
    };
    let target = expm_closed(&h_pt_passive(p), tau)? * loss;
    Ok(u.max_abs_diff(&target))
}

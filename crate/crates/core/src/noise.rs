//! Piecewise-constant noise trajectories and the seeding discipline that
//! makes Monte Carlo ensembles reproducible across thread layouts.
//!
//! A piecewise trajectory holds its value on cells
//! `[offset + k·period, offset + (k+1)·period)`, with a leading partial cell
//! `[0, offset)`. The offset is drawn uniformly per trajectory, so the noise
//! grid is not synchronized with the pulse sequence.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal, Uniform};

use crate::error::{Error, Result};

/// Random stream handed to trajectory sampling.
pub type TrialRng = ChaCha12Rng;

/// Statistical model for one noise field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseModel {
    Zero,
    /// Fixed value for the whole run.
    ConstantValue(f64),
    /// Zero-mean Gaussian, redrawn every `period`.
    GaussianPiecewise { sigma: f64, period: f64 },
    /// Uniform on `[0, w]`, redrawn every `period`.
    UniformPiecewise { w: f64, period: f64 },
    /// Zero-mean Gaussian, drawn once per trial and held for the whole run.
    GaussianStatic { sigma: f64 },
    /// Uniform on `[0, w]`, drawn once per trial and held for the whole run.
    UniformStatic { w: f64 },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        match *self {
            NoiseModel::Zero => Ok(()),
            NoiseModel::ConstantValue(v) if !v.is_finite() => bad(format!("constant noise {v}")),
            NoiseModel::ConstantValue(_) => Ok(()),
            NoiseModel::GaussianPiecewise { sigma, period } => {
                check_scale("sigma", sigma)?;
                check_period(period)
            }
            NoiseModel::UniformPiecewise { w, period } => {
                check_scale("w", w)?;
                check_period(period)
            }
            NoiseModel::GaussianStatic { sigma } => check_scale("sigma", sigma),
            NoiseModel::UniformStatic { w } => check_scale("w", w),
        }
    }

    /// True if every draw is the same number.
    pub fn is_deterministic(&self) -> bool {
        matches!(self, NoiseModel::Zero | NoiseModel::ConstantValue(_))
    }

    /// Replaces the redraw period of piecewise models; others are returned unchanged.
    pub fn with_period(self, new_period: f64) -> Self {
        match self {
            NoiseModel::GaussianPiecewise { sigma, .. } => NoiseModel::GaussianPiecewise {
                sigma,
                period: new_period,
            },
            NoiseModel::UniformPiecewise { w, .. } => NoiseModel::UniformPiecewise {
                w,
                period: new_period,
            },
            other => other,
        }
    }

    /// Replaces the model's scale parameter (value, σ or w).
    pub fn with_scale(self, scale: f64) -> Self {
        match self {
            NoiseModel::Zero | NoiseModel::ConstantValue(_) => NoiseModel::ConstantValue(scale),
            NoiseModel::GaussianPiecewise { period, .. } => NoiseModel::GaussianPiecewise {
                sigma: scale,
                period,
            },
            NoiseModel::UniformPiecewise { period, .. } => {
                NoiseModel::UniformPiecewise { w: scale, period }
            }
            NoiseModel::GaussianStatic { .. } => NoiseModel::GaussianStatic { sigma: scale },
            NoiseModel::UniformStatic { .. } => NoiseModel::UniformStatic { w: scale },
        }
    }
}

fn check_scale(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be finite and >= 0, got {v}")))
    }
}

fn check_period(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("noise period must be finite and > 0, got {p}")))
    }
}

/// One realization of a noise field.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseTrajectory {
    offset: f64,
    /// `f64::INFINITY` for single-valued trajectories.
    period: f64,
    duration: f64,
    values: Vec<f64>,
}

impl NoiseTrajectory {
    /// A trajectory equal to `value` everywhere on `[0, duration]`.
    pub fn constant(value: f64, duration: f64) -> Self {
        Self {
            offset: 0.0,
            period: f64::INFINITY,
            duration,
            values: vec![value],
        }
    }

    /// Builds a piecewise trajectory directly. `values[0]` covers `[0, offset)`.
    pub fn piecewise(offset: f64, period: f64, duration: f64, values: Vec<f64>) -> Result<Self> {
        check_period(period)?;
        if !(0.0..period).contains(&offset) {
            return Err(Error::InvalidInput(format!(
                "offset {offset} outside [0, {period})"
            )));
        }
        let traj = Self {
            offset,
            period,
            duration,
            values,
        };
        let last = traj.cell_index(duration);
        if last >= traj.values.len() {
            return Err(Error::Range {
                t: duration,
                covered: traj.covered_until(),
            });
        }
        Ok(traj)
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn is_single_valued(&self) -> bool {
        !self.period.is_finite()
    }

    fn cell_index(&self, t: f64) -> usize {
        if self.is_single_valued() || t < self.offset {
            0
        } else {
            ((t - self.offset) / self.period).floor() as usize + 1
        }
    }

    fn covered_until(&self) -> f64 {
        if self.is_single_valued() {
            self.duration
        } else {
            self.offset + (self.values.len() - 1) as f64 * self.period
        }
    }

    /// Value at time `t`, right-continuous at cell boundaries.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        if !(0.0..=self.duration).contains(&t) {
            return Err(Error::Range {
                t,
                covered: self.duration,
            });
        }
        Ok(self.values[self.cell_index(t)])
    }

    /// Cell boundaries strictly inside `(start, end)`, ascending.
    pub fn breakpoints_in(&self, start: f64, end: f64) -> Vec<f64> {
        if self.is_single_valued() || end <= start {
            return Vec::new();
        }
        let first = ((start - self.offset) / self.period).floor().max(0.0) as usize;
        (first..self.values.len())
            .map(|k| self.offset + k as f64 * self.period)
            .skip_while(|&b| b <= start)
            .take_while(|&b| b < end)
            .collect()
    }
}

/// Draws a trajectory covering `[0, duration]`.
///
/// Piecewise models get a uniform offset in `[0, period)` followed by
/// `⌈(duration + offset)/period⌉ + 1` i.i.d. values.
pub fn sample_trajectory<R: Rng + ?Sized>(
    model: &NoiseModel,
    duration: f64,
    rng: &mut R,
) -> Result<NoiseTrajectory> {
    model.validate()?;
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(Error::InvalidInput(format!("duration must be >= 0, got {duration}")));
    }
    let traj = match *model {
        NoiseModel::Zero => NoiseTrajectory::constant(0.0, duration),
        NoiseModel::ConstantValue(v) => NoiseTrajectory::constant(v, duration),
        NoiseModel::GaussianStatic { sigma } => {
            NoiseTrajectory::constant(gaussian(sigma).sample(rng), duration)
        }
        NoiseModel::UniformStatic { w } => {
            NoiseTrajectory::constant(uniform(w).sample(rng), duration)
        }
        NoiseModel::GaussianPiecewise { sigma, period } => {
            piecewise_draw(gaussian(sigma), period, duration, rng)
        }
        NoiseModel::UniformPiecewise { w, period } => {
            piecewise_draw(uniform(w), period, duration, rng)
        }
    };
    Ok(traj)
}

fn gaussian(sigma: f64) -> Normal<f64> {
    Normal::new(0.0, sigma).expect("sigma validated")
}

fn uniform(w: f64) -> Uniform<f64> {
    Uniform::new_inclusive(0.0, w).expect("w validated")
}

fn piecewise_draw<D, R>(dist: D, period: f64, duration: f64, rng: &mut R) -> NoiseTrajectory
where
    D: Distribution<f64>,
    R: Rng + ?Sized,
{
    let offset = rng.random_range(0.0..period);
    let n = ((duration + offset) / period).ceil() as usize + 1;
    let values = dist.sample_iter(&mut *rng).take(n).collect();
    NoiseTrajectory {
        offset,
        period,
        duration,
        values,
    }
}

/// Which field a random stream drives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Beta,
    DeltaGamma,
}

impl FieldTag {
    fn code(self) -> u64 {
        match self {
            FieldTag::Beta => 0,
            FieldTag::DeltaGamma => 1,
        }
    }
}

const FIELD_BITS: u32 = 2;
const TRIAL_BITS: u32 = 38;
const POINT_BITS: u32 = 64 - FIELD_BITS - TRIAL_BITS;

/// Largest supported trial index plus one.
pub const MAX_TRIALS: u64 = 1 << TRIAL_BITS;
/// Largest supported sweep-point index plus one.
pub const MAX_POINTS: u64 = 1 << POINT_BITS;

/// Master seed from which every trial stream is derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedPolicy {
    pub master_seed: u64,
}

impl SeedPolicy {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }
}

/// The random stream for one `(point, trial, field)` triple.
///
/// The master seed keys a ChaCha generator and the triple is packed
/// bijectively into its 64-bit stream id, so distinct triples never share a
/// stream and the result does not depend on which thread asks for it.
pub fn trial_stream(policy: &SeedPolicy, point: u64, trial: u64, field: FieldTag) -> TrialRng {
    assert!(point < MAX_POINTS, "point index {point} exceeds {MAX_POINTS}");
    assert!(trial < MAX_TRIALS, "trial index {trial} exceeds {MAX_TRIALS}");
    let stream = (point << (TRIAL_BITS + FIELD_BITS)) | (trial << FIELD_BITS) | field.code();
    let mut rng = ChaCha12Rng::seed_from_u64(policy.master_seed);
    rng.set_stream(stream);
    rng
}

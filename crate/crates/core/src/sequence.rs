//! Protection sequences, their compilation against noise trajectories, the
//! toggling-frame transformation and the first two average-Hamiltonian terms.
//!
//! A cycle is written in time order (earliest element first). The CPMG-like
//! cycle `U = U(H, τ)·P·U(H_n, τ)·P` therefore reads `[P, free τ, P, drive τ]`
//! and the symmetric CPMG cycle reads `[drive τ/2, P, free τ, P, drive τ/2]`.
//! Pulses are instantaneous and exact.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::linalg::{expm_closed, Operator2, StateVec2, C64, I};
use crate::model::{h_noise, h_total, pi_pulse_y, NoiseFields, PTParams};
use crate::noise::NoiseTrajectory;

/// Which protection scheme to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceKind {
    /// Plain evolution under the noisy Hamiltonian.
    Unprotected,
    /// Two-pulse cycle with the drive at the end (first-order protection), "s1".
    CpmgLike,
    /// Symmetric CPMG cycle with the drive split around the pulses, "s2".
    Cpmg,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 3] = [
        SequenceKind::Unprotected,
        SequenceKind::CpmgLike,
        SequenceKind::Cpmg,
    ];

    /// Short label used in reports and CSV columns.
    pub fn label(self) -> &'static str {
        match self {
            SequenceKind::Unprotected => "unprotected",
            SequenceKind::CpmgLike => "s1",
            SequenceKind::Cpmg => "s2",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "unprotected" | "u" | "none" => Some(SequenceKind::Unprotected),
            "s1" | "cpmg-like" | "cpmg_like" => Some(SequenceKind::CpmgLike),
            "s2" | "cpmg" => Some(SequenceKind::Cpmg),
            _ => None,
        }
    }

    pub fn is_protected(self) -> bool {
        self != SequenceKind::Unprotected
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    /// Evolution under `H̃_PT + H_n`.
    Drive,
    /// Evolution under `H_n` alone.
    FreeNoise,
}

impl SegmentKind {
    fn label(self) -> &'static str {
        match self {
            SegmentKind::Drive => "drive",
            SegmentKind::FreeNoise => "free",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CycleElement {
    Pulse(Operator2),
    Segment { kind: SegmentKind, duration: f64 },
}

/// One cycle of a sequence, in time order.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleSpec {
    pub kind: SequenceKind,
    pub elements: Vec<CycleElement>,
    pub duration: f64,
}

impl CycleSpec {
    /// Total time spent in drive segments.
    pub fn drive_time(&self) -> f64 {
        self.elements
            .iter()
            .map(|e| match e {
                CycleElement::Segment {
                    kind: SegmentKind::Drive,
                    duration,
                } => *duration,
                _ => 0.0,
            })
            .sum()
    }

    /// True if the element list reads the same backwards.
    pub fn is_palindrome(&self) -> bool {
        self.elements.iter().eq(self.elements.iter().rev())
    }
}

pub fn build_cycle(kind: SequenceKind, tau: f64) -> Result<CycleSpec> {
    check_tau(tau)?;
    let pulse = CycleElement::Pulse(pi_pulse_y());
    let drive = |duration| CycleElement::Segment {
        kind: SegmentKind::Drive,
        duration,
    };
    let free = CycleElement::Segment {
        kind: SegmentKind::FreeNoise,
        duration: tau,
    };
    let (elements, duration) = match kind {
        SequenceKind::Unprotected => (vec![drive(tau)], tau),
        SequenceKind::CpmgLike => (vec![pulse, free, pulse, drive(tau)], 2.0 * tau),
        SequenceKind::Cpmg => (
            vec![drive(0.5 * tau), pulse, free, pulse, drive(0.5 * tau)],
            2.0 * tau,
        ),
    };
    Ok(CycleSpec {
        kind,
        elements,
        duration,
    })
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("tau must be finite and > 0, got {tau}")))
    }
}

/// A sequence kind repeated `cycles` times with drive time `tau` per cycle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SequenceSpec {
    kind: SequenceKind,
    tau: f64,
    cycles: u32,
}

impl SequenceSpec {
    pub fn new(kind: SequenceKind, tau: f64, cycles: u32) -> Result<Self> {
        check_tau(tau)?;
        if cycles == 0 {
            return Err(Error::InvalidInput("cycle count must be >= 1".into()));
        }
        Ok(Self { kind, tau, cycles })
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn cycles(&self) -> u32 {
        self.cycles
    }

    pub fn cycle_duration(&self) -> f64 {
        match self.kind {
            SequenceKind::Unprotected => self.tau,
            SequenceKind::CpmgLike | SequenceKind::Cpmg => 2.0 * self.tau,
        }
    }

    /// Laboratory time the run occupies.
    pub fn wall_time(&self) -> f64 {
        self.cycles as f64 * self.cycle_duration()
    }

    /// Time spent under the target Hamiltonian, `T = m·τ`.
    pub fn effective_time(&self) -> f64 {
        self.cycles as f64 * self.tau
    }
}

/// A stretch of constant generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub start: f64,
    pub duration: f64,
    pub generator: Operator2,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScheduleItem {
    Segment(Segment),
    Pulse(Operator2),
}

/// Time-ordered list of constant-generator segments and instantaneous pulses.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PiecewiseSchedule {
    items: Vec<ScheduleItem>,
}

impl PiecewiseSchedule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_items(items: Vec<ScheduleItem>) -> Result<Self> {
        let mut s = Self::new();
        for item in items {
            match item {
                ScheduleItem::Pulse(p) => s.push_pulse(p),
                ScheduleItem::Segment(seg) => s.push_segment(seg)?,
            }
        }
        Ok(s)
    }

    pub fn push_pulse(&mut self, p: Operator2) {
        self.items.push(ScheduleItem::Pulse(p));
    }

    pub fn push_segment(&mut self, seg: Segment) -> Result<()> {
        if !(seg.duration.is_finite() && seg.duration > 0.0) {
            return Err(Error::InvalidInput(format!(
                "segment duration must be > 0, got {}",
                seg.duration
            )));
        }
        self.items.push(ScheduleItem::Segment(seg));
        Ok(())
    }

    pub fn items(&self) -> &[ScheduleItem] {
        &self.items
    }

    pub fn segments(&self) -> impl Iterator<Item = &Segment> {
        self.items.iter().filter_map(|i| match i {
            ScheduleItem::Segment(s) => Some(s),
            ScheduleItem::Pulse(_) => None,
        })
    }

    pub fn pulse_count(&self) -> usize {
        self.items.len() - self.segments().count()
    }

    pub fn is_pulse_free(&self) -> bool {
        self.pulse_count() == 0
    }

    /// Sum of segment durations (compensated).
    pub fn total_duration(&self) -> f64 {
        neumaier_sum(self.segments().map(|s| s.duration))
    }

    /// Time-ordered product of all segment propagators and pulses.
    pub fn propagator(&self) -> Result<Operator2> {
        self.items.iter().try_fold(Operator2::identity(), |acc, item| {
            Ok(match item {
                ScheduleItem::Pulse(p) => *p * acc,
                ScheduleItem::Segment(s) => expm_closed(&s.generator, s.duration)? * acc,
            })
        })
    }

    /// Applies the schedule to a state vector, in time order.
    pub fn apply(&self, psi: &StateVec2) -> Result<StateVec2> {
        self.items.iter().try_fold(*psi, |v, item| {
            Ok(match item {
                ScheduleItem::Pulse(p) => p.apply(&v),
                ScheduleItem::Segment(s) => expm_closed(&s.generator, s.duration)?.apply(&v),
            })
        })
    }

    /// Line-oriented text listing: one line per item, fixed field order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let fmt_op = |op: &Operator2| {
            op.entries()
                .iter()
                .map(|z| format!("{:.17e} {:.17e}", z.re, z.im))
                .collect::<Vec<_>>()
                .join(" ")
        };
        for item in &self.items {
            match item {
                ScheduleItem::Segment(s) => writeln!(
                    out,
                    "segment {} start={:.17e} duration={:.17e} generator={}",
                    s.kind.label(),
                    s.start,
                    s.duration,
                    fmt_op(&s.generator)
                ),
                ScheduleItem::Pulse(p) => writeln!(out, "pulse operator={}", fmt_op(p)),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }
}

fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Expands `seq` into segments, splitting wherever either trajectory jumps.
///
/// Each piece gets `h_total(p, fields)` for drive segments and
/// `h_noise(fields)` for free segments, with the fields read at the piece
/// midpoint.
pub fn compile_schedule(
    seq: &SequenceSpec,
    p: &PTParams,
    beta: &NoiseTrajectory,
    delta_gamma: &NoiseTrajectory,
) -> Result<PiecewiseSchedule> {
    let wall = seq.wall_time();
    for traj in [beta, delta_gamma] {
        if traj.duration() < wall {
            return Err(Error::Range {
                t: wall,
                covered: traj.duration(),
            });
        }
    }
    let cycle = build_cycle(seq.kind(), seq.tau())?;
    let mut sched = PiecewiseSchedule::new();
    let mut cuts: Vec<f64> = Vec::new();

    for c in 0..seq.cycles() {
        let cycle_start = c as f64 * cycle.duration;
        let mut local = 0.0;
        for element in &cycle.elements {
            match *element {
                CycleElement::Pulse(op) => sched.push_pulse(op),
                CycleElement::Segment { kind, duration } => {
                    let start = cycle_start + local;
                    local += duration;
                    let end = if c + 1 == seq.cycles() && local == cycle.duration {
                        wall
                    } else {
                        cycle_start + local
                    };
                    cuts.clear();
                    cuts.push(start);
                    cuts.extend(beta.breakpoints_in(start, end));
                    cuts.extend(delta_gamma.breakpoints_in(start, end));
                    cuts.push(end);
                    cuts.sort_by(f64::total_cmp);
                    cuts.dedup();
                    for w in cuts.windows(2) {
                        let (a, b) = (w[0], w[1]);
                        if b <= a {
                            continue;
                        }
                        let mid = 0.5 * (a + b);
                        let fields = NoiseFields::new(beta.value_at(mid)?, delta_gamma.value_at(mid)?);
                        let generator = match kind {
                            SegmentKind::Drive => h_total(p, &fields),
                            SegmentKind::FreeNoise => h_noise(&fields),
                        };
                        sched.push_segment(Segment {
                            kind,
                            start: a,
                            duration: b - a,
                            generator,
                        })?;
                    }
                }
            }
        }
    }
    Ok(sched)
}

/// Residual tolerance for accepting a pulse as unitary.
pub const PULSE_UNITARITY_TOL: f64 = 1e-12;

/// Moves every pulse into the frame of the accumulated pulse product.
///
/// Each segment generator `H_k` becomes `Q_k†·H_k·Q_k`, where `Q_k` is the
/// product of all pulses applied before it. The returned residual is the
/// product of all pulses, so that
/// `original propagator = residual · toggled propagator`.
pub fn toggle_frame(sched: &PiecewiseSchedule) -> Result<(PiecewiseSchedule, Operator2)> {
    let mut frame = Operator2::identity();
    let mut out = PiecewiseSchedule::new();
    for item in sched.items() {
        match item {
            ScheduleItem::Pulse(p) => {
                let residual = (p.dagger() * *p - Operator2::identity()).max_abs();
                if residual > PULSE_UNITARITY_TOL {
                    return Err(Error::InvalidPulse(residual));
                }
                frame = *p * frame;
            }
            ScheduleItem::Segment(s) => {
                let generator = frame.dagger() * s.generator * frame;
                out.push_segment(Segment { generator, ..*s })?;
            }
        }
    }
    Ok((out, frame))
}

fn require_toggled(sched: &PiecewiseSchedule) -> Result<f64> {
    if !sched.is_pulse_free() {
        return Err(Error::InvalidInput(
            "average Hamiltonian needs a pulse-free (toggled) schedule".into(),
        ));
    }
    let total = sched.total_duration();
    if total <= 0.0 {
        return Err(Error::ZeroDuration);
    }
    Ok(total)
}

/// First-order average Hamiltonian `(1/T)·Σ_k H_k·t_k`.
pub fn magnus1(sched: &PiecewiseSchedule) -> Result<Operator2> {
    let total = require_toggled(sched)?;
    let sum = sched
        .segments()
        .fold(Operator2::zero(), |acc, s| acc + s.generator * s.duration);
    Ok(sum * (1.0 / total))
}

/// Second-order average Hamiltonian `(1/(2iT))·Σ_{j>k} [H_j, H_k]·t_j·t_k`,
/// with `j` the later segment.
pub fn magnus2(sched: &PiecewiseSchedule) -> Result<Operator2> {
    let total = require_toggled(sched)?;
    let mut earlier = Operator2::zero();
    let mut sum = Operator2::zero();
    for s in sched.segments() {
        sum += s.generator.commutator(&earlier) * s.duration;
        earlier += s.generator * s.duration;
    }
    Ok(sum * (C64::from(1.0) / (2.0 * I * total)))
}

/// True iff the toggled generator of the cycle satisfies `H(t) = H(τ_c − t)`.
///
/// The cycle is compiled once with generic constant parameters; adjacent
/// equal generators are merged before comparing with the reversed list.
pub fn symmetry_check(cycle: &CycleSpec) -> bool {
    let params = PTParams::new(1.3, 0.45).expect("valid constants");
    let fields = NoiseFields::new(0.77, 0.31);
    let mut sched = PiecewiseSchedule::new();
    let mut t = 0.0;
    for element in &cycle.elements {
        match *element {
            CycleElement::Pulse(op) => sched.push_pulse(op),
            CycleElement::Segment { kind, duration } => {
                let generator = match kind {
                    SegmentKind::Drive => h_total(&params, &fields),
                    SegmentKind::FreeNoise => h_noise(&fields),
                };
                if sched
                    .push_segment(Segment {
                        kind,
                        start: t,
                        duration,
                        generator,
                    })
                    .is_err()
                {
                    return false;
                }
                t += duration;
            }
        }
    }
    let Ok((toggled, _)) = toggle_frame(&sched) else {
        return false;
    };
    let scale = toggled
        .segments()
        .map(|s| s.generator.max_abs())
        .fold(1.0, f64::max);
    let same = |a: &Operator2, b: &Operator2| a.max_abs_diff(b) <= 1e-12 * scale;

    let mut merged: Vec<(Operator2, f64)> = Vec::new();
    for s in toggled.segments() {
        match merged.last_mut() {
            Some((g, d)) if same(g, &s.generator) => *d += s.duration,
            _ => merged.push((s.generator, s.duration)),
        }
    }
    merged
        .iter()
        .zip(merged.iter().rev())
        .all(|((ga, da), (gb, db))| same(ga, gb) && (da - db).abs() <= 1e-12 * cycle.duration)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::h_pt_passive;

    fn params() -> PTParams {
        PTParams::new(1e4, 1e3).unwrap()
    }

    fn constant(v: f64, d: f64) -> NoiseTrajectory {
        NoiseTrajectory::constant(v, d)
    }

    fn one_cycle(kind: SequenceKind, tau: f64, b: f64, g: f64) -> PiecewiseSchedule {
        let seq = SequenceSpec::new(kind, tau, 1).unwrap();
        let w = seq.wall_time();
        compile_schedule(&seq, &params(), &constant(b, w), &constant(g, w)).unwrap()
    }

    #[test]
    fn cycle_layouts() {
        let tau = 3e-5;
        let c = build_cycle(SequenceKind::CpmgLike, tau).unwrap();
        assert_eq!(c.duration, 2.0 * tau);
        assert_eq!(c.drive_time(), tau);
        assert!(!c.is_palindrome());
        let c = build_cycle(SequenceKind::Cpmg, tau).unwrap();
        assert!(c.is_palindrome());
        assert_eq!(c.duration, 2.0 * tau);
        assert_eq!(c.drive_time(), tau);
        let c = build_cycle(SequenceKind::Unprotected, tau).unwrap();
        assert_eq!(c.elements.len(), 1);
        assert!(build_cycle(SequenceKind::Cpmg, 0.0).is_err());
    }

    #[test]
    fn sequence_spec_times() {
        let s = SequenceSpec::new(SequenceKind::CpmgLike, 2.0, 3).unwrap();
        assert_eq!(s.wall_time(), 12.0);
        assert_eq!(s.effective_time(), 6.0);
        let u = SequenceSpec::new(SequenceKind::Unprotected, 2.0, 3).unwrap();
        assert_eq!(u.wall_time(), 6.0);
        assert!(SequenceSpec::new(SequenceKind::Cpmg, 1.0, 0).is_err());
        assert!(SequenceSpec::new(SequenceKind::Cpmg, -1.0, 1).is_err());
    }

    #[test]
    fn zero_noise_cpmg_like_segments() {
        let s = one_cycle(SequenceKind::CpmgLike, 1e-5, 0.0, 0.0);
        let segs: Vec<_> = s.segments().collect();
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].generator, Operator2::zero());
        assert_eq!(segs[1].generator, h_pt_passive(&params()));
        assert_eq!(s.pulse_count(), 2);
    }

    #[test]
    fn constant_noise_never_splits() {
        for kind in SequenceKind::ALL {
            let seq = SequenceSpec::new(kind, 7e-6, 5).unwrap();
            let w = seq.wall_time();
            let s = compile_schedule(&seq, &params(), &constant(3.0, w), &constant(1.0, w)).unwrap();
            let per_cycle = build_cycle(kind, 7e-6).unwrap().elements.len();
            assert_eq!(s.items().len(), per_cycle * 5);
            assert!((s.total_duration() - w).abs() <= 1e-15 * w);
        }
    }

    #[test]
    fn breakpoint_inside_drive_splits_it() {
        let tau = 1.0;
        let seq = SequenceSpec::new(SequenceKind::CpmgLike, tau, 1).unwrap();
        // drive occupies [1, 2]; offset 0.4 + period 1.0 puts a jump at 1.4
        let beta = NoiseTrajectory::piecewise(0.4, 1.0, 2.0, vec![5.0, 6.0, 7.0, 8.0]).unwrap();
        let dg = constant(0.0, 2.0);
        let s = compile_schedule(&seq, &params(), &beta, &dg).unwrap();
        let drives: Vec<_> = s.segments().filter(|x| x.kind == SegmentKind::Drive).collect();
        assert_eq!(drives.len(), 2);
        assert!((drives[0].duration - 0.4).abs() < 1e-15);
        assert!((drives[1].duration - 0.6).abs() < 1e-15);
        assert_eq!(drives[0].generator.a00, C64::from(6.0));
        assert_eq!(drives[1].generator.a00, C64::from(7.0));
        assert_eq!(drives[0].generator.a01, drives[1].generator.a01);
        let frees: Vec<_> = s.segments().filter(|x| x.kind == SegmentKind::FreeNoise).collect();
        assert_eq!(frees.len(), 2);
    }

    #[test]
    fn short_trajectory_is_range_error() {
        let seq = SequenceSpec::new(SequenceKind::Cpmg, 1.0, 2).unwrap();
        let r = compile_schedule(&seq, &params(), &constant(0.0, 3.0), &constant(0.0, 4.0));
        assert!(matches!(r, Err(Error::Range { .. })));
    }

    #[test]
    fn toggled_free_generator_matches_closed_form() {
        let (b, g) = (2000.0 * std::f64::consts::PI, 2000.0);
        let s = one_cycle(SequenceKind::CpmgLike, 1e-5, b, g);
        let (t, residual) = toggle_frame(&s).unwrap();
        assert_eq!(residual, -Operator2::identity());
        let hn = h_noise(&NoiseFields::new(b, g));
        let want = -hn - Operator2::identity() * C64::new(0.0, 2.0 * g);
        let first = t.segments().next().unwrap();
        assert!(first.generator.max_abs_diff(&want) < 1e-12 * hn.max_abs());
        assert!(t.is_pulse_free());
    }

    #[test]
    fn pulse_free_toggle_is_identity() {
        let s = one_cycle(SequenceKind::Unprotected, 1e-5, 3.0, 4.0);
        let (t, residual) = toggle_frame(&s).unwrap();
        assert_eq!(t, s);
        assert_eq!(residual, Operator2::identity());
    }

    #[test]
    fn non_unitary_pulse_rejected() {
        let mut s = PiecewiseSchedule::new();
        s.push_pulse(Operator2::identity() * 1.1);
        assert!(matches!(toggle_frame(&s), Err(Error::InvalidPulse(_))));
    }

    #[test]
    fn magnus_examples() {
        let h = h_pt_passive(&params());
        let mut s = PiecewiseSchedule::new();
        s.push_segment(Segment {
            kind: SegmentKind::Drive,
            start: 0.0,
            duration: 2e-5,
            generator: h,
        })
        .unwrap();
        assert!(magnus1(&s).unwrap().max_abs_diff(&h) < 1e-12 * h.max_abs());
        assert_eq!(magnus2(&s).unwrap(), Operator2::zero());
        assert!(matches!(magnus1(&PiecewiseSchedule::new()), Err(Error::ZeroDuration)));
        assert!(matches!(magnus2(&PiecewiseSchedule::new()), Err(Error::ZeroDuration)));
        let pulsed = one_cycle(SequenceKind::CpmgLike, 1e-5, 0.0, 0.0);
        assert!(magnus1(&pulsed).is_err());
    }

    #[test]
    fn commuting_segments_have_no_second_order() {
        let mut s = PiecewiseSchedule::new();
        for (k, c) in [1.0, -2.5, 0.3].iter().enumerate() {
            s.push_segment(Segment {
                kind: SegmentKind::FreeNoise,
                start: k as f64,
                duration: 1.0 + k as f64,
                generator: Operator2::sigma_z() * *c + Operator2::identity() * C64::new(0.0, *c),
            })
            .unwrap();
        }
        assert!(magnus2(&s).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn symmetry_of_cycles() {
        assert!(symmetry_check(&build_cycle(SequenceKind::Cpmg, 1e-5).unwrap()));
        assert!(!symmetry_check(&build_cycle(SequenceKind::CpmgLike, 1e-5).unwrap()));
        assert!(symmetry_check(&build_cycle(SequenceKind::Unprotected, 1e-5).unwrap()));
    }

    #[test]
    fn dump_is_line_oriented() {
        let s = one_cycle(SequenceKind::CpmgLike, 1.0, 0.0, 0.0);
        let d = s.dump();
        let lines: Vec<_> = d.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("pulse operator="));
        assert!(lines[1].starts_with("segment free start=0.00000000000000000e0 duration=1.00000000000000000e0"));
        assert!(lines[3].starts_with("segment drive start=1.00000000000000000e0"));
    }

    #[test]
    fn labels_round_trip() {
        for k in SequenceKind::ALL {
            assert_eq!(SequenceKind::from_label(k.label()), Some(k));
        }
        assert_eq!(SequenceKind::from_label("xy4"), None);
    }
}

use std::fmt::Write as _;

use ptdd_core::engine::{cycle_error, run_ensemble, run_sweep, toggled_cycle, EnsembleOptions, TrialConfig};
use ptdd_core::linalg::{expm_closed, expm_series, Operator2, StateVec2, C64, I};
use ptdd_core::model::{h_noise, h_pt_passive, ideal_period, not_gate_time, NoiseFields, PTParams};
use ptdd_core::noise::NoiseModel;
use ptdd_core::sequence::{magnus1, magnus2, SequenceKind, SequenceSpec};

use crate::config::{ExperimentConfig, NoiseKind};
use crate::error::{CliError, CliResult};
use crate::presets;
use crate::table::ResultTable;

/// Evaluates the base point of `cfg`; sweep axes are ignored.
pub fn simulate(cfg: &ExperimentConfig) -> CliResult<ResultTable> {
    let mut point = cfg.clone();
    point.axes.clear();
    sweep_table(&point)
}

pub fn sweep(cfg: &ExperimentConfig) -> CliResult<ResultTable> {
    if cfg.axes.is_empty() {
        return Err(CliError::config("sweep", "no axis.<name> = start:stop:count entries"));
    }
    sweep_table(cfg)
}

fn sweep_table(cfg: &ExperimentConfig) -> CliResult<ResultTable> {
    let spec = cfg.sweep_spec()?;
    let points = run_sweep(&spec)?;
    Ok(ResultTable::from_sweep(cfg, &spec, &points))
}

struct Checks {
    out: String,
    failed: usize,
}

impl Checks {
    fn new() -> Self {
        Self {
            out: String::new(),
            failed: 0,
        }
    }

    fn record(&mut self, ok: bool, name: &str, detail: String) {
        if !ok {
            self.failed += 1;
        }
        let _ = writeln!(self.out, "{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }

    fn finish(self) -> (String, CliResult<()>) {
        let status = if self.failed == 0 {
            Ok(())
        } else {
            Err(CliError::CheckFailed(self.failed))
        };
        (self.out, status)
    }
}

fn constant_value(kind: NoiseKind, value: f64, key: &str) -> CliResult<f64> {
    match kind {
        NoiseKind::Zero => Ok(0.0),
        NoiseKind::Constant => Ok(value),
        other => Err(CliError::config(
            "magnus",
            format!("{key}_model must be zero or constant, got {}", other.label()),
        )),
    }
}

/// Residuals of the toggled-frame average Hamiltonians against their closed
/// forms at one constant-noise point.
struct MagnusPoint {
    m1_s1: Operator2,
    m2_s1: Operator2,
    m1_s2: Operator2,
    m2_s2: Operator2,
    m1_target: Operator2,
    m2_s1_target: Operator2,
    /// Largest toggled generator norm over both cycles.
    scale: f64,
    tau: f64,
}

impl MagnusPoint {
    fn compute(p: &PTParams, f: &NoiseFields, tau: f64) -> CliResult<Self> {
        let (s1, _) = toggled_cycle(SequenceKind::CpmgLike, p, f, tau)?;
        let (s2, _) = toggled_cycle(SequenceKind::Cpmg, p, f, tau)?;
        let h = h_pt_passive(p);
        let scale = s1
            .segments()
            .chain(s2.segments())
            .map(|s| s.generator.spectral_norm())
            .fold(h.spectral_norm(), f64::max);
        Ok(Self {
            m1_s1: magnus1(&s1)?,
            m2_s1: magnus2(&s1)?,
            m1_s2: magnus1(&s2)?,
            m2_s2: magnus2(&s2)?,
            m1_target: h * 0.5 - Operator2::identity() * C64::new(0.0, f.delta_gamma),
            m2_s1_target: h.commutator(&h_noise(f)) * (C64::from(-tau) / (4.0 * I)),
            scale,
            tau,
        })
    }

    fn first_order_tol(&self) -> f64 {
        1e-12 * self.scale
    }

    fn second_order_tol(&self) -> f64 {
        1e-12 * self.scale * self.scale * 2.0 * self.tau
    }
}

/// Average Hamiltonian report for the base point of `cfg`.
pub fn magnus(cfg: &ExperimentConfig) -> (String, CliResult<()>) {
    let mut checks = Checks::new();
    let point = (|| -> CliResult<_> {
        let beta = constant_value(cfg.beta_model, cfg.beta, "beta")?;
        let dg = constant_value(cfg.delta_gamma_model, cfg.delta_gamma, "delta_gamma")?;
        let tau = cfg.resolve_tau()?;
        let p = cfg.params()?;
        Ok((p, NoiseFields::new(beta, dg), tau))
    })();
    let (p, f, tau) = match point {
        Ok(v) => v,
        Err(e) => return (String::new(), Err(e)),
    };
    let m = match MagnusPoint::compute(&p, &f, tau) {
        Ok(m) => m,
        Err(e) => return (String::new(), Err(e)),
    };
    let _ = writeln!(
        checks.out,
        "point: j = {:e}, gamma = {:e}, beta = {:e}, delta_gamma = {:e}, tau = {:e}",
        p.j(),
        p.gamma(),
        f.beta,
        f.delta_gamma,
        tau
    );
    let _ = writeln!(checks.out, "target magnus1 = H_passive/2 - i*delta_gamma*I = {}", m.m1_target);
    let _ = writeln!(checks.out, "s1 magnus1 = {}", m.m1_s1);
    let _ = writeln!(checks.out, "s1 magnus2 = {}", m.m2_s1);
    let _ = writeln!(checks.out, "s2 magnus1 = {}", m.m1_s2);
    let _ = writeln!(checks.out, "s2 magnus2 = {}", m.m2_s2);
    let r = (m.m1_s1 - m.m1_target).spectral_norm();
    checks.record(r <= m.first_order_tol(), "s1 magnus1 closed form", format!("residual {r:.3e}, tol {:.3e}", m.first_order_tol()));
    let r = (m.m1_s2 - m.m1_target).spectral_norm();
    checks.record(r <= m.first_order_tol(), "s2 magnus1 closed form", format!("residual {r:.3e}, tol {:.3e}", m.first_order_tol()));
    let r = (m.m2_s1 - m.m2_s1_target).spectral_norm();
    checks.record(
        r <= m.second_order_tol(),
        "s1 magnus2 = -tau/(4i)[H_passive, H_noise]",
        format!("residual {r:.3e}, norm {:.3e}, tol {:.3e}", m.m2_s1.spectral_norm(), m.second_order_tol()),
    );
    let r = m.m2_s2.spectral_norm();
    checks.record(r <= m.second_order_tol(), "s2 magnus2 vanishes", format!("norm {r:.3e}, tol {:.3e}", m.second_order_tol()));
    checks.finish()
}

/// Built-in consistency checks.
pub fn selftest() -> (String, CliResult<()>) {
    let mut checks = Checks::new();
    let result = run_selftest(&mut checks);
    if let Err(e) = result {
        checks.record(false, "selftest aborted", e.to_string());
    }
    checks.finish()
}

fn preset_tau(name: &str) -> CliResult<f64> {
    presets::load(name)?.resolve_tau()
}

fn run_selftest(checks: &mut Checks) -> CliResult<()> {
    let t = preset_tau("fig1a")?;
    checks.record((t - 73.9e-6).abs() <= 0.05e-6, "fig1a tau = T_NOT/2 = 73.9 us", format!("{:.4} us", t * 1e6));
    let t = preset_tau("fig2a")?;
    checks.record((t - 151.2e-6).abs() <= 0.1e-6, "fig2a tau = T_NOT/8 = 151.2 us", format!("{:.4} us", t * 1e6));
    let strong = PTParams::new(1e4, 1e3)?;
    let tp = ideal_period(&strong)?;
    checks.record((tp - 315.8e-6).abs() <= 0.1e-6, "ideal period at J=1e4, gamma=1e3", format!("{:.4} us", tp * 1e6));
    let tn = not_gate_time(&PTParams::new(1e4, 0.0)?)?;
    checks.record(
        (tn - std::f64::consts::FRAC_PI_2 / 1e4).abs() < 1e-15,
        "Hermitian NOT gate time pi/(2J)",
        format!("{tn:e} s"),
    );

    let mut worst1 = 0.0f64;
    let mut worst2 = 0.0f64;
    for (j, g) in [(1e3, 500.0), (1e4, 1e3), (5e3, 4.9e3), (2e4, 0.0)] {
        for (b, d) in [(0.0, 0.0), (2000.0 * std::f64::consts::PI, 0.0), (1200.0, 100.0), (-3000.0, 2000.0)] {
            for tau in [1e-6, 2e-5, 1.5e-4] {
                let m = MagnusPoint::compute(&PTParams::new(j, g)?, &NoiseFields::new(b, d), tau)?;
                worst1 = worst1
                    .max((m.m1_s1 - m.m1_target).spectral_norm() / m.first_order_tol())
                    .max((m.m1_s2 - m.m1_target).spectral_norm() / m.first_order_tol());
                worst2 = worst2.max(m.m2_s2.spectral_norm() / m.second_order_tol());
            }
        }
    }
    checks.record(worst1 <= 1.0, "magnus1 closed form, 48 points", format!("worst residual/tol {worst1:.3e}"));
    checks.record(worst2 <= 1.0, "s2 magnus2 vanishes, 48 points", format!("worst norm/tol {worst2:.3e}"));

    let mut worst = 0.0f64;
    let nilpotent = Operator2::from_real(0.0, 1.0, 0.0, 0.0);
    let at_ep = h_pt_passive(&PTParams::new(1e3, 1e3)?);
    let mut samples = vec![(nilpotent, 3.0), (at_ep, 1e-3), (h_pt_passive(&PTParams::new(1e3, 1e3 * (1.0 - 1e-9))?), 2e-3)];
    for k in 0..40 {
        let x = k as f64;
        let a = Operator2::new(
            C64::new((0.37 * x).sin(), (1.3 * x).cos()),
            C64::new((0.71 * x).cos(), -(0.29 * x).sin()),
            C64::new((1.9 * x).sin(), (0.53 * x).sin()),
            C64::new(-(0.83 * x).cos(), (0.17 * x).cos()),
        );
        samples.push((a, 0.1 + 0.05 * x));
    }
    for (a, t) in samples {
        let c = expm_closed(&a, t)?;
        worst = worst.max(c.max_abs_diff(&expm_series(&a, t)) / c.max_abs().max(1.0));
    }
    checks.record(worst < 1e-10, "closed-form exponential vs series", format!("worst relative entry error {worst:.3e}"));

    let mut worst = 0.0f64;
    for kind in SequenceKind::ALL {
        let cfg = TrialConfig {
            params: strong,
            sequence: SequenceSpec::new(kind, 3e-5, 4)?,
            beta: NoiseModel::Zero,
            delta_gamma: NoiseModel::Zero,
            initial: StateVec2::plus(),
        };
        let opts = EnsembleOptions {
            trials: 2,
            ..EnsembleOptions::default()
        };
        worst = worst.max((1.0 - run_ensemble(&cfg, &opts)?.fidelity).abs());
    }
    checks.record(worst < 1e-9, "noiseless fidelity is 1", format!("worst deviation {worst:.3e}"));

    let f = NoiseFields::new(2000.0 * std::f64::consts::PI, 0.0);
    let e = |kind, tau| cycle_error(kind, &strong, &f, tau);
    let slope1 = (e(SequenceKind::CpmgLike, 3.2e-5)? / e(SequenceKind::CpmgLike, 1e-6)?).ln() / 32f64.ln();
    let slope2 = (e(SequenceKind::Cpmg, 3.2e-5)? / e(SequenceKind::Cpmg, 1e-6)?).ln() / 32f64.ln();
    checks.record((slope1 - 2.0).abs() <= 0.15, "s1 per-cycle error order", format!("log-log slope {slope1:.3}"));
    checks.record((slope2 - 3.0).abs() <= 0.15, "s2 per-cycle error order", format!("log-log slope {slope2:.3}"));
    Ok(())
}

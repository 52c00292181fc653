//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::path::PathBuf;
use std::process::{Command, ExitCode, Stdio};
use std::time::Instant;

use ptdd_cli::commands;
use ptdd_cli::presets;
use ptdd_cli::table::{data_rows, ResultTable};
use ptdd_core::engine::{cycle_error, fidelity, ideal_density, run_ensemble, toggled_cycle, EnsembleOptions, TrialConfig};
use ptdd_core::linalg::{expm_closed, expm_series, Operator2, StateVec2, C64};
use ptdd_core::model::{h_pt_passive, ideal_period, not_gate_time, NoiseFields, PTParams};
use ptdd_core::noise::NoiseModel;
use ptdd_core::sequence::{magnus1, magnus2, SequenceKind, SequenceSpec};

struct Mix(u64);

impl Mix {
    fn unit(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    fn complex(&mut self) -> C64 {
        C64::new(self.range(-1.0, 1.0), self.range(-1.0, 1.0))
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn strong() -> PTParams {
    PTParams::new(1e4, 1e3).unwrap()
}

fn not_gate_times() -> Outcome {
    let a = not_gate_time(&strong()).unwrap() / 2.0;
    let b = not_gate_time(&PTParams::new(1e3, 500.0).unwrap()).unwrap() / 8.0;
    check(
        (a - 73.9e-6).abs() <= 0.05e-6 && (b - 151.2e-6).abs() <= 0.1e-6,
        format!("T_NOT/2 = {:.4} us, T_NOT/8 = {:.4} us", a * 1e6, b * 1e6),
    )
}

fn ideal_periodicity() -> Outcome {
    let p = strong();
    let tp = ideal_period(&p).unwrap();
    let mut worst = 0.0f64;
    for k in 0..20 {
        let t = 2.3e-5 * k as f64 + 1.1e-6;
        for psi in [StateVec2::zero(), StateVec2::one(), StateVec2::plus()] {
            let a = ideal_density(&p, t, &psi).unwrap();
            let b = ideal_density(&p, t + tp, &psi).unwrap();
            worst = worst.max(a.as_operator().max_abs_diff(b.as_operator()));
        }
    }
    check(
        (tp - 315.8e-6).abs() <= 0.1e-6 && worst < 1e-9,
        format!("T_p = {:.4} us, worst periodic deviation {worst:.2e}", tp * 1e6),
    )
}

fn magnus_closed_forms() -> Outcome {
    let mut rng = Mix(3);
    let mut worst1 = 0.0f64;
    let mut worst2 = 0.0f64;
    for _ in 0..100 {
        let j = rng.range(1e2, 2e4);
        let p = PTParams::new(j, rng.range(0.0, j)).unwrap();
        let f = NoiseFields::new(rng.range(-2e4, 2e4), rng.range(0.0, 5e3));
        let tau = rng.range(1e-6, 1e-3);
        let h = h_pt_passive(&p);
        let want = h * 0.5 - Operator2::identity() * C64::new(0.0, f.delta_gamma);
        let (s1, _) = toggled_cycle(SequenceKind::CpmgLike, &p, &f, tau).unwrap();
        worst1 = worst1.max((magnus1(&s1).unwrap() - want).spectral_norm() / h.spectral_norm());
        let (s2, _) = toggled_cycle(SequenceKind::Cpmg, &p, &f, tau).unwrap();
        let hmax = s2.segments().map(|s| s.generator.spectral_norm()).fold(0.0, f64::max);
        worst2 = worst2.max(magnus2(&s2).unwrap().spectral_norm() / (hmax * hmax * 2.0 * tau));
    }
    check(
        worst1 < 1e-12 && worst2 < 1e-12,
        format!("worst s1 first-order residual {worst1:.2e}·|H|, worst s2 second-order norm {worst2:.2e}·|H|²·tau_c"),
    )
}

fn slope(kind: SequenceKind) -> f64 {
    let f = NoiseFields::new(2000.0 * std::f64::consts::PI, 0.0);
    let pts: Vec<(f64, f64)> = (0..6)
        .map(|k| {
            let tau = 1e-6 * f64::powi(2.0, k);
            (tau.ln(), cycle_error(kind, &strong(), &f, tau).unwrap().ln())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn protection_order() -> Outcome {
    let s1 = slope(SequenceKind::CpmgLike);
    let s2 = slope(SequenceKind::Cpmg);
    check(
        (s1 - 2.0).abs() <= 0.15 && (s2 - 3.0).abs() <= 0.15,
        format!("log-log slopes s1 {s1:.3}, s2 {s2:.3}"),
    )
}

fn constant_detuning_gate() -> Outcome {
    let tau = not_gate_time(&strong()).unwrap() / 2.0;
    let f = |kind, beta| {
        let cfg = TrialConfig {
            params: strong(),
            sequence: SequenceSpec::new(kind, tau, 2).unwrap(),
            beta: NoiseModel::ConstantValue(beta),
            delta_gamma: NoiseModel::Zero,
            initial: StateVec2::one(),
        };
        let opts = EnsembleOptions {
            trials: 1,
            ..EnsembleOptions::default()
        };
        run_ensemble(&cfg, &opts).unwrap().fidelity
    };
    let beta = 2000.0 * std::f64::consts::PI;
    let (u, p) = (f(SequenceKind::Unprotected, beta), f(SequenceKind::CpmgLike, beta));
    let ordered = (0..=40).all(|k| {
        let b = 4000.0 * std::f64::consts::PI * k as f64 / 40.0;
        f(SequenceKind::CpmgLike, b) >= f(SequenceKind::Unprotected, b)
    });
    check(
        p > 0.999 && u < 0.9 && ordered,
        format!("protected {p:.6} (> 0.999 required), unprotected {u:.6} (< 0.9), ordered over beta sweep: {ordered}"),
    )
}

fn preset_table(name: &str) -> ResultTable {
    let mut cfg = presets::load(name).unwrap();
    cfg.seed = 42;
    commands::sweep(&cfg).unwrap()
}

fn column(t: &ResultTable, name: &str) -> Vec<f64> {
    let c = t.columns.iter().position(|x| x == name).unwrap();
    t.rows.iter().map(|r| r[c].parse().unwrap()).collect()
}

/// Points where protected falls more than three combined batch spreads below unprotected.
fn paired_violations(t: &ResultTable) -> usize {
    let u = column(t, "fidelity_unprotected");
    let su = column(t, "batch_std_unprotected");
    let p = column(t, "fidelity_s1");
    let sp = column(t, "batch_std_s1");
    (0..u.len())
        .filter(|&k| p[k] < u[k] - 3.0 * (su[k].powi(2) + sp[k].powi(2)).sqrt())
        .count()
}

fn detuning_noise_ensemble() -> Outcome {
    let t = preset_table("fig2a");
    let sigma = column(&t, "beta_rad_s");
    let p = column(&t, "fidelity_s1");
    let at = sigma.iter().position(|&s| (s - 1.2e3).abs() < 1e-9).unwrap();
    let bad = paired_violations(&t);
    check(
        t.rows.len() == 11 && bad == 0 && p[at] > 0.99,
        format!("{} points, {bad} below unprotected - 3 std, protected at sigma=1.2e3: {:.6}", t.rows.len(), p[at]),
    )
}

fn dissipative_noise_ensemble() -> Outcome {
    let t = preset_table("fig3a");
    let bad = paired_violations(&t);
    check(t.rows.len() == 11 && bad == 0, format!("{} points, {bad} below unprotected - 3 std", t.rows.len()))
}

fn second_order_ordering() -> Outcome {
    let t = preset_table("fig4a");
    let tau = column(&t, "tau_s");
    let u = column(&t, "fidelity_unprotected");
    let s1 = column(&t, "fidelity_s1");
    let s2 = column(&t, "fidelity_s2");
    let s2_s1: Vec<String> = (0..u.len()).filter(|&k| s2[k] < s1[k]).map(|k| format!("{:.1}", tau[k] * 1e6)).collect();
    let s1_u: Vec<String> = (0..u.len()).filter(|&k| s1[k] < u[k]).map(|k| format!("{:.1}", tau[k] * 1e6)).collect();
    let s2_u = (0..u.len()).filter(|&k| s2[k] < u[k]).count();
    check(
        t.rows.len() == 21 && s2_s1.is_empty() && s1_u.is_empty(),
        format!(
            "{} points; s2 < s1 at tau(us) {:?}; s1 < unprotected at tau(us) {:?}; s2 < unprotected at {s2_u} points",
            t.rows.len(),
            s2_s1,
            s1_u
        ),
    )
}

fn exponential_oracle() -> Outcome {
    let mut rng = Mix(9);
    let mut worst = 0.0f64;
    for k in 0..10_000 {
        let (a, t) = match k % 4 {
            0 | 1 => {
                let a = Operator2::new(rng.complex(), rng.complex(), rng.complex(), rng.complex());
                (a, rng.range(0.0, 3.0))
            }
            2 => {
                // Nilpotent: c0 = 0 and c·c = 0.
                let (x, y) = (rng.complex(), rng.complex());
                let n = Operator2::new(x * y, -(x * x), y * y, -(x * y));
                (n, rng.range(0.0, 3.0))
            }
            _ => {
                let j = rng.range(1e2, 1e4);
                let eps = f64::powi(10.0, -(rng.range(0.0, 14.0) as i32));
                let p = PTParams::new(j, j * (1.0 - eps)).unwrap();
                (h_pt_passive(&p), rng.range(0.0, 3.0) / j)
            }
        };
        let c = expm_closed(&a, t).unwrap();
        worst = worst.max(c.max_abs_diff(&expm_series(&a, t)));
    }
    check(worst < 1e-10, format!("worst entrywise error {worst:.2e} over 10000 matrices"))
}

/// The `ptdd` binary of the current profile, built on demand.
fn ptdd_binary() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let bin = profile_dir.join(format!("ptdd{}", std::env::consts::EXE_SUFFIX));
    if !bin.exists() {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let mut cmd = Command::new(cargo);
        cmd.args(["build", "-p", "ptdd-cli", "--bin", "ptdd"]);
        if profile_dir.ends_with("release") {
            cmd.arg("--release");
        }
        let status = cmd.stderr(Stdio::null()).status().unwrap();
        assert!(status.success(), "could not build ptdd");
    }
    bin
}

fn replay_determinism() -> Outcome {
    let bin = ptdd_binary();
    let dir = std::env::temp_dir().join(format!("ptdd-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |workers: &str| {
        let out = dir.join(format!("fig2a-w{workers}.csv"));
        let status = Command::new(&bin)
            .args(["sweep", "--preset", "fig2a", "--seed", "42", "--workers", workers, "--out"])
            .arg(&out)
            .stderr(Stdio::null())
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read_to_string(&out).unwrap()
    };
    let (a, b) = (run("1"), run("8"));
    let _ = std::fs::remove_dir_all(&dir);
    let (ra, rb) = (data_rows(&a), data_rows(&b));
    check(
        ra == rb && ra.len() == 11,
        format!("{} data rows each, byte-identical: {}", ra.len(), ra == rb),
    )
}

fn broken_phase() -> Outcome {
    let p = PTParams::new(1e3, 1.2e3).unwrap();
    let mut worst = 1.0f64;
    for k in 0..50 {
        let t = 5e-3 + 2e-4 * k as f64;
        for psi in [StateVec2::zero(), StateVec2::one(), StateVec2::plus()] {
            let a = ideal_density(&p, t, &psi).unwrap();
            let b = ideal_density(&p, t + 1e-4, &psi).unwrap();
            worst = worst.min(fidelity(&a, &b));
        }
    }
    check(worst > 0.9999, format!("min F(t, t + 100 us) for t in [5, 15) ms: {worst:.8}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("NOT-gate time", not_gate_times),
        ("ideal-evolution period", ideal_periodicity),
        ("average Hamiltonian closed forms", magnus_closed_forms),
        ("protection-order scaling", protection_order),
        ("constant detuning NOT gate", constant_detuning_gate),
        ("Gaussian detuning noise ensemble", detuning_noise_ensemble),
        ("uniform dissipative noise ensemble", dissipative_noise_ensemble),
        ("s2 >= s1 >= unprotected ordering", second_order_ordering),
        ("closed-form exponential vs series", exponential_oracle),
        ("replay determinism across workers", replay_determinism),
        ("broken-phase steady state", broken_phase),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name}: {detail} [{secs:.2}s]", n + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

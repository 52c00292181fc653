//! Built-in experiment documents, one per figure panel.

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig1a",
        summary: "NOT gate vs constant detuning beta",
        text: "\
j = 1e4
gamma = 1e3
m = 2
tau_not_divisor = 2
initial_state = 1
beta_model = constant
beta = 2000pi
trials = 1
axis.beta = 0:4000pi:41
",
    },
    Preset {
        name: "fig1b",
        summary: "evolution vs tau, constant detuning",
        text: "\
j = 1e4
gamma = 1e3
m = 2
tau = 7.39e-5
initial_state = 0
beta_model = constant
beta = 2000pi
trials = 1
axis.tau = 2e-6:2e-4:101
",
    },
    Preset {
        name: "fig1cd",
        summary: "contour over (tau, J), constant detuning",
        text: "\
j = 1e4
gamma = 1e3
m = 2
tau = 1e-4
initial_state = 0
beta_model = constant
beta = 2000pi
trials = 1
axis.tau = 5e-6:2e-4:41
axis.j = 1e3:1e4:41
",
    },
    Preset {
        name: "fig2a",
        summary: "NOT gate vs Gaussian detuning noise sigma",
        text: "\
j = 1e3
gamma = 500
m = 8
tau_not_divisor = 8
initial_state = 1
beta_model = gaussian
beta = 1.2e3
trials = 2000
axis.beta = 0:3000:11
",
    },
    Preset {
        name: "fig2b",
        summary: "evolution vs tau, Gaussian detuning noise sigma = 1.2e3",
        text: "\
j = 1e3
gamma = 500
m = 4
tau = 1e-4
initial_state = 0
beta_model = gaussian
beta = 1.2e3
trials = 2000
axis.tau = 1e-5:2e-3:101
",
    },
    Preset {
        name: "fig2cd",
        summary: "contour over (tau, J) in the broken phase region, Gaussian detuning noise",
        text: "\
j = 2e3
gamma = 1.2e3
m = 4
tau = 1e-4
initial_state = 0
beta_model = gaussian
beta = 1.2e3
trials = 2000
axis.tau = 4e-5:1.6e-3:41
axis.j = 1e3:3e3:41
",
    },
    Preset {
        name: "fig3a",
        summary: "NOT gate vs uniform dissipative noise width w",
        text: "\
j = 1e3
gamma = 500
m = 8
tau_not_divisor = 8
initial_state = 1
delta_gamma_model = uniform
delta_gamma = 100
trials = 2000
axis.delta_gamma = 0:5000:11
",
    },
    Preset {
        name: "fig3b",
        summary: "evolution vs tau, uniform dissipative noise w = 100 rad/s",
        text: "\
j = 1e3
gamma = 500
m = 4
tau = 1e-4
initial_state = 0
delta_gamma_model = uniform
delta_gamma = 100
trials = 2000
axis.tau = 1e-5:3e-3:101
",
    },
    Preset {
        name: "fig3cd",
        summary: "contour over (tau, J), uniform dissipative noise w = 100 rad/s (not 100e3: that would swamp gamma = 500)",
        text: "\
j = 2e3
gamma = 500
m = 4
tau = 1e-4
initial_state = 0
delta_gamma_model = uniform
delta_gamma = 100
trials = 2000
axis.tau = 7.5e-5:3e-3:41
axis.j = 1e3:3e3:41
",
    },
    Preset {
        name: "fig4a",
        summary: "s1 and s2 vs tau, constant detuning and dissipative offset",
        text: "\
j = 1e4
gamma = 1e3
m = 4
tau = 4e-5
initial_state = plus
beta_model = constant
beta = 2000pi
delta_gamma_model = constant
delta_gamma = 2000
trials = 1
axis.tau = 1e-6:8e-5:21
",
    },
    Preset {
        name: "fig4bcd",
        summary: "contour over (tau, J), per-run Gaussian detuning and uniform dissipative offset (w = 100 rad/s)",
        text: "\
j = 8e3
gamma = 1e3
m = 4
tau = 4e-5
initial_state = plus
beta_model = gaussian_static
beta = 1200
delta_gamma_model = uniform_static
delta_gamma = 100
trials = 2000
axis.tau = 2e-6:8e-5:41
axis.j = 6e3:1e4:41
",
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

/// The preset's document applied over the defaults.
pub fn load(name: &str) -> CliResult<ExperimentConfig> {
    let preset = find(name).ok_or_else(|| {
        let names: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
        CliError::config("--preset", format!("unknown preset `{name}` (available: {})", names.join(", ")))
    })?;
    let mut cfg = ExperimentConfig::default();
    cfg.apply_text(preset.text, &format!("preset {name}"))?;
    Ok(cfg)
}

/// Listing printed by `ptdd presets`.
pub fn listing() -> String {
    let mut out = String::new();
    for p in PRESETS {
        out.push_str(&format!("{}: {}\n", p.name, p.summary));
        for line in p.text.lines() {
            out.push_str(&format!("    {line}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_parses_and_builds() {
        for p in PRESETS {
            let cfg = load(p.name).unwrap();
            let spec = cfg.sweep_spec().unwrap();
            assert!(spec.point_count() >= 11, "{}", p.name);
        }
    }

    #[test]
    fn unknown_preset_is_config_error() {
        assert_eq!(load("fig9").unwrap_err().exit_code(), 2);
    }
}

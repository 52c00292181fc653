//! Hamiltonians of the lossy PT-symmetric qubit and its noise, plus the
//! analytic time constants of the symmetry-preserving phase.
//!
//! All rates are angular frequencies in rad/s and all times are in seconds.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{Operator2, C64, I, ONE, ZERO};

/// Relative tolerance on `|Γ − J|/J` inside which the exceptional point is reported.
pub const EP_REL_TOL: f64 = 1e-12;

/// Coupling `J` and effective loss `Γ`, both non-negative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PTParams {
    j: f64,
    gamma: f64,
}

impl PTParams {
    pub fn new(j: f64, gamma: f64) -> Result<Self> {
        if !(j.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "PT parameters must be finite (J={j}, Γ={gamma})"
            )));
        }
        if j < 0.0 || gamma < 0.0 {
            return Err(Error::InvalidInput(format!(
                "PT parameters must be non-negative (J={j}, Γ={gamma})"
            )));
        }
        Ok(Self { j, gamma })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn with_j(&self, j: f64) -> Result<Self> {
        Self::new(j, self.gamma)
    }

    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(self.j, gamma)
    }

    /// `√(J² − Γ²)`, the eigenfrequency in the preserving phase.
    fn real_gap(&self) -> Result<f64> {
        if self.j <= self.gamma {
            return Err(Error::Domain(format!(
                "requires J > Γ (J={}, Γ={}): undefined at or past the exceptional point",
                self.j, self.gamma
            )));
        }
        Ok(((self.j - self.gamma) * (self.j + self.gamma)).sqrt())
    }
}

/// Instantaneous values of the environmental fields.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NoiseFields {
    /// Detuning noise coupling to `I_z`.
    pub beta: f64,
    /// Fluctuation of the loss rate.
    pub delta_gamma: f64,
    /// Transverse noise; zero in every experiment here.
    pub alpha: f64,
}

impl NoiseFields {
    pub fn new(beta: f64, delta_gamma: f64) -> Self {
        Self {
            beta,
            delta_gamma,
            alpha: 0.0,
        }
    }
}

/// `H_PT = 2iΓ·I_z + 2J·I_x`.
pub fn h_pt(p: &PTParams) -> Operator2 {
    Operator2::new(
        C64::new(0.0, p.gamma),
        p.j.into(),
        p.j.into(),
        C64::new(0.0, -p.gamma),
    )
}

/// Passive (loss-only) form `2J·I_x − 2iΓ·|1⟩⟨1| = H_PT − iΓ·I`.
pub fn h_pt_passive(p: &PTParams) -> Operator2 {
    Operator2::new(ZERO, p.j.into(), p.j.into(), C64::new(0.0, -2.0 * p.gamma))
}

/// `H_n = [2iδΓ + 2β]·I_z + α·I_x − iδΓ·I`.
pub fn h_noise(n: &NoiseFields) -> Operator2 {
    let z = C64::new(n.beta, n.delta_gamma);
    let x = C64::from(0.5 * n.alpha);
    Operator2::new(
        z - I * n.delta_gamma,
        x,
        x,
        -z - I * n.delta_gamma,
    )
}

/// `H = H̃_PT + H_n`.
pub fn h_total(p: &PTParams, n: &NoiseFields) -> Operator2 {
    h_pt_passive(p) + h_noise(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    SymmetryPreserving,
    ExceptionalPoint,
    SymmetryBroken,
}

pub fn classify_phase(p: &PTParams) -> Phase {
    let scale = p.j.max(p.gamma);
    if scale == 0.0 || (p.gamma - p.j).abs() <= EP_REL_TOL * scale {
        Phase::ExceptionalPoint
    } else if p.gamma < p.j {
        Phase::SymmetryPreserving
    } else {
        Phase::SymmetryBroken
    }
}

/// Duration of the non-Hermitian NOT gate taking |1⟩ to |0⟩ under `H_PT`:
/// `(π − 2·asin(Γ/J)) / (2J·√(1 − (Γ/J)²))`.
pub fn not_gate_time(p: &PTParams) -> Result<f64> {
    p.real_gap()?;
    let ratio = p.gamma / p.j;
    Ok((PI - 2.0 * ratio.asin()) / (2.0 * p.j * (1.0 - ratio * ratio).sqrt()))
}

/// Period `π/√(J² − Γ²)` of the normalized ideal evolution.
pub fn ideal_period(p: &PTParams) -> Result<f64> {
    Ok(PI / p.real_gap()?)
}

/// Instantaneous π rotation about y: `exp(−iπ·I_y) = [[0, −1], [1, 0]]`.
pub fn pi_pulse_y() -> Operator2 {
    Operator2::new(ZERO, -ONE, ONE, ZERO)
}

/// `P·conj(H)·P − H` with `P = σx`; zero iff `H` is PT-symmetric.
pub fn pt_commutator(h: &Operator2) -> Operator2 {
    let p = Operator2::sigma_x();
    p * h.conj() * p - *h
}

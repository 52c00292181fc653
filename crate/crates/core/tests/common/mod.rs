//! Oracles shared by the integration tests. Nothing here calls the closed-form
//! exponential or the schedule compiler.
#![allow(dead_code)]

use ptdd_core::linalg::{Operator2, StateVec2, C64, I, ONE};

/// Principal matrix logarithm of a 2×2 matrix via `log U = a0·I + b·σ`.
pub fn logm(u: &Operator2) -> Operator2 {
    let d0 = (u.a00 + u.a11) * 0.5;
    let dx = (u.a01 + u.a10) * 0.5;
    let dy = (u.a10 - u.a01) * 0.5 * -I;
    let dz = (u.a00 - u.a11) * 0.5;
    let a0 = 0.5 * u.det().ln();
    let scale = (-a0).exp();
    let ch = d0 * scale;
    let kappa = ch.acosh();
    // b = d·κ/(e^{a0}·sinh κ)
    let factor = if kappa.norm() < 1e-8 {
        scale * (ONE - kappa * kappa / 6.0)
    } else {
        scale * kappa / kappa.sinh()
    };
    let (bx, by, bz) = (dx * factor, dy * factor, dz * factor);
    Operator2::new(a0 + bz, bx - I * by, bx + I * by, a0 - bz)
}

/// Fixed-step RK4 for dψ/dt = −i·H(t)·ψ on [t0, t1].
pub fn rk4(h: impl Fn(f64) -> Operator2, psi: StateVec2, t0: f64, t1: f64, max_step: f64) -> StateVec2 {
    let n = ((t1 - t0) / max_step).ceil().max(1.0) as usize;
    let dt = (t1 - t0) / n as f64;
    let f = |t: f64, v: &StateVec2| h(t).apply(v).scale(-I);
    let add = |a: &StateVec2, b: &StateVec2, s: f64| StateVec2::new(a.c0 + b.c0 * s, a.c1 + b.c1 * s);
    let mut v = psi;
    for k in 0..n {
        let t = t0 + k as f64 * dt;
        let k1 = f(t, &v);
        let k2 = f(t + dt / 2.0, &add(&v, &k1, dt / 2.0));
        let k3 = f(t + dt / 2.0, &add(&v, &k2, dt / 2.0));
        let k4 = f(t + dt, &add(&v, &k3, dt));
        v = StateVec2::new(
            v.c0 + (k1.c0 + k2.c0 * 2.0 + k3.c0 * 2.0 + k4.c0) * (dt / 6.0),
            v.c1 + (k1.c1 + k2.c1 * 2.0 + k3.c1 * 2.0 + k4.c1) * (dt / 6.0),
        );
    }
    v
}

/// Normalized fidelity between two pure states, from the raw vectors.
pub fn pure_fidelity(a: &StateVec2, b: &StateVec2) -> f64 {
    let ov: C64 = a.c0.conj() * b.c0 + a.c1.conj() * b.c1;
    ov.norm_sqr() / (a.norm_sqr() * b.norm_sqr())
}

/// Hand-written Hamiltonians in matrix form.
pub fn passive(j: f64, g: f64) -> Operator2 {
    Operator2::new(C64::new(0.0, 0.0), j.into(), j.into(), C64::new(0.0, -2.0 * g))
}

pub fn noise(beta: f64, dg: f64) -> Operator2 {
    Operator2::new(beta.into(), 0.0.into(), 0.0.into(), C64::new(-beta, -2.0 * dg))
}

pub fn pulse() -> Operator2 {
    Operator2::from_real(0.0, -1.0, 1.0, 0.0)
}

/// Simple deterministic generator for oracle inputs (SplitMix64).
pub struct Mix(pub u64);

impl Mix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn complex(&mut self) -> C64 {
        C64::new(self.range(-1.0, 1.0), self.range(-1.0, 1.0))
    }

    pub fn operator(&mut self) -> Operator2 {
        Operator2::new(self.complex(), self.complex(), self.complex(), self.complex())
    }
}

//! Exact 2×2 complex linear algebra.
//!
//! Every operator in a single-qubit simulation (Hamiltonians, propagators,
//! pulses, density matrices) is an [`Operator2`]. Exponentials of constant
//! generators are taken in closed form through the Pauli decomposition
//! `A = c0·I + c·σ`, which also covers non-Hermitian generators and the
//! nilpotent case `c·c = 0` at an exceptional point. [`expm_series`] is a
//! scaling-and-squaring Taylor sum that shares no code with the closed form
//! and serves as its oracle.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Below this `|λt|` the closed-form exponential switches to its series branch.
pub const SERIES_SWITCH: f64 = 1e-6;

/// Above this `|Im(λt)|` the cos/sin form is replaced by explicit exponentials
/// with the scalar phase folded in, so growth and decay cannot overflow separately.
const SPLIT_EXP_SWITCH: f64 = 20.0;

/// A 2×2 complex matrix in the basis {|0⟩, |1⟩}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator2 {
    pub a00: C64,
    pub a01: C64,
    pub a10: C64,
    pub a11: C64,
}

impl Operator2 {
    pub const fn new(a00: C64, a01: C64, a10: C64, a11: C64) -> Self {
        Self { a00, a01, a10, a11 }
    }

    pub fn from_real(a00: f64, a01: f64, a10: f64, a11: f64) -> Self {
        Self::new(a00.into(), a01.into(), a10.into(), a11.into())
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn sigma_x() -> Self {
        Self::new(ZERO, ONE, ONE, ZERO)
    }

    pub const fn sigma_y() -> Self {
        Self::new(ZERO, C64::new(0.0, -1.0), I, ZERO)
    }

    pub const fn sigma_z() -> Self {
        Self::new(ONE, ZERO, ZERO, C64::new(-1.0, 0.0))
    }

    /// Angular momentum operator `I_x = σx/2`.
    pub fn spin_x() -> Self {
        Self::sigma_x() * 0.5
    }

    /// Angular momentum operator `I_y = σy/2`.
    pub fn spin_y() -> Self {
        Self::sigma_y() * 0.5
    }

    /// Angular momentum operator `I_z = σz/2`.
    pub fn spin_z() -> Self {
        Self::sigma_z() * 0.5
    }

    /// Projector |1⟩⟨1|.
    pub const fn proj_one() -> Self {
        Self::new(ZERO, ZERO, ZERO, ONE)
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a00, self.a01, self.a10, self.a11]
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self::new(f(self.a00), f(self.a01), f(self.a10), f(self.a11))
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::new(self.a00.conj(), self.a10.conj(), self.a01.conj(), self.a11.conj())
    }

    /// Entrywise complex conjugate (the time-reversal operation).
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn trace(&self) -> C64 {
        self.a00 + self.a11
    }

    pub fn det(&self) -> C64 {
        self.a00 * self.a11 - self.a01 * self.a10
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        singular_values(self)[0]
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// `‖A − A†‖_max`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    /// Distance to `other` after removing the best unit-modulus scalar.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        let overlap = (other.dagger() * *self).trace();
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            ONE
        };
        self.max_abs_diff(&other.scale(phase))
    }

    pub fn apply(&self, v: &StateVec2) -> StateVec2 {
        StateVec2::new(
            self.a00 * v.c0 + self.a01 * v.c1,
            self.a10 * v.c0 + self.a11 * v.c1,
        )
    }

    fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }
}

impl Default for Operator2 {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for Operator2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |z: C64| format!("{:+.6e}{:+.6e}i", z.re, z.im);
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e(self.a00),
            e(self.a01),
            e(self.a10),
            e(self.a11)
        )
    }
}

impl Add for Operator2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.a00 + rhs.a00,
            self.a01 + rhs.a01,
            self.a10 + rhs.a10,
            self.a11 + rhs.a11,
        )
    }
}

impl AddAssign for Operator2 {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Operator2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.a00 - rhs.a00,
            self.a01 - rhs.a01,
            self.a10 - rhs.a10,
            self.a11 - rhs.a11,
        )
    }
}

impl Neg for Operator2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|z| -z)
    }
}

impl Mul for Operator2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.a00 * rhs.a00 + self.a01 * rhs.a10,
            self.a00 * rhs.a01 + self.a01 * rhs.a11,
            self.a10 * rhs.a00 + self.a11 * rhs.a10,
            self.a10 * rhs.a01 + self.a11 * rhs.a11,
        )
    }
}

impl Mul<C64> for Operator2 {
    type Output = Self;
    fn mul(self, rhs: C64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for Operator2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.map(|z| z * rhs)
    }
}

impl Mul<StateVec2> for Operator2 {
    type Output = StateVec2;
    fn mul(self, rhs: StateVec2) -> StateVec2 {
        self.apply(&rhs)
    }
}

/// Coefficients of `A = c0·I + cx·σx + cy·σy + cz·σz`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliCoefficients {
    pub c0: C64,
    pub cx: C64,
    pub cy: C64,
    pub cz: C64,
}

impl PauliCoefficients {
    pub fn recompose(&self) -> Operator2 {
        Operator2::new(
            self.c0 + self.cz,
            self.cx - I * self.cy,
            self.cx + I * self.cy,
            self.c0 - self.cz,
        )
    }

    /// `c·c = cx² + cy² + cz²` (not the Hermitian norm).
    pub fn vector_square(&self) -> C64 {
        self.cx * self.cx + self.cy * self.cy + self.cz * self.cz
    }

    /// The traceless part `c·σ`.
    pub fn vector_part(&self) -> Operator2 {
        PauliCoefficients { c0: ZERO, ..*self }.recompose()
    }
}

pub fn pauli_decompose(a: &Operator2) -> PauliCoefficients {
    PauliCoefficients {
        c0: (a.a00 + a.a11) * 0.5,
        cx: (a.a01 + a.a10) * 0.5,
        cy: (a.a10 - a.a01) * 0.5 * -I,
        cz: (a.a00 - a.a11) * 0.5,
    }
}

/// `exp(−i·A·t)` in closed form.
///
/// With `A = c0·I + c·σ` and `λ² = c·c`,
/// `exp(−iAt) = e^{−i c0 t}·[cos(λt)·I − i·sin(λt)/λ·(c·σ)]`. Both
/// `cos(λt)` and `sin(λt)/λ` are even in `λ`, so the branch of the square
/// root does not matter. For `|λt| < 1e−6` the even series in `λ²t²` is used,
/// which is exact (to rounding) for the nilpotent case at an exceptional
/// point.
pub fn expm_closed(a: &Operator2, t: f64) -> Result<Operator2> {
    a.ensure_finite()?;
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    let p = pauli_decompose(a);
    let lambda_sq = p.vector_square();
    let z_sq = lambda_sq * (t * t);
    let sigma_part = p.vector_part();
    let phase_arg = -I * p.c0 * t;

    let out = if z_sq.norm() < SERIES_SWITCH * SERIES_SWITCH {
        // cos z = 1 − z²/2 + z⁴/24, sin(z)/z = 1 − z²/6 + z⁴/120
        let cos = ONE - z_sq / 2.0 + z_sq * z_sq / 24.0;
        let sinc = ONE - z_sq / 6.0 + z_sq * z_sq / 120.0;
        let phase = phase_arg.exp();
        (Operator2::identity() * cos - sigma_part * (I * sinc * t)) * phase
    } else {
        let lambda = lambda_sq.sqrt();
        let z = lambda * t;
        if z.im.abs() > SPLIT_EXP_SWITCH {
            // e^{−ic0t}·cos z = (e^{φ+iz} + e^{φ−iz})/2, sin analogous
            let plus = (phase_arg + I * z).exp();
            let minus = (phase_arg - I * z).exp();
            let cos = (plus + minus) * 0.5;
            let sin_over_lambda = (plus - minus) / (2.0 * I * lambda);
            Operator2::identity() * cos - sigma_part * (I * sin_over_lambda)
        } else {
            let phase = phase_arg.exp();
            let cos = z.cos();
            let sin_over_lambda = z.sin() / lambda;
            (Operator2::identity() * cos - sigma_part * (I * sin_over_lambda)) * phase
        }
    };
    out.ensure_finite()?;
    Ok(out)
}

/// `exp(−i·A·t)` by scaling and squaring a Taylor sum.
///
/// Shares nothing with [`expm_closed`]; used as its oracle.
pub fn expm_series(a: &Operator2, t: f64) -> Operator2 {
    let m = a.scale(-I * t);
    let norm = m.frobenius_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m * 2f64.powi(-squarings);

    let mut sum = Operator2::identity();
    let mut term = Operator2::identity();
    for k in 1..=40 {
        term = (term * scaled) * (1.0 / k as f64);
        sum += term;
        if term.max_abs() <= 1e-18 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// Eigenvalues of a general 2×2 matrix, ordered by increasing real part.
pub fn eigenvalues(a: &Operator2) -> [C64; 2] {
    let p = pauli_decompose(a);
    let lambda = p.vector_square().sqrt();
    let (x, y) = (p.c0 - lambda, p.c0 + lambda);
    if x.re <= y.re {
        [x, y]
    } else {
        [y, x]
    }
}

/// Singular values, largest first.
pub fn singular_values(a: &Operator2) -> [f64; 2] {
    let h = a.dagger() * *a;
    let [lo, hi] = hermitian_eigenvalues(&h);
    [hi.max(0.0).sqrt(), lo.max(0.0).sqrt()]
}

/// Eigenvalues of a Hermitian 2×2 matrix, ascending.
pub fn hermitian_eigenvalues(h: &Operator2) -> [f64; 2] {
    let a = h.a00.re;
    let d = h.a11.re;
    let b = h.a01.norm();
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    [mean - half_gap, mean + half_gap]
}

/// A two-component state vector. Never renormalized implicitly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVec2 {
    pub c0: C64,
    pub c1: C64,
}

impl StateVec2 {
    pub const fn new(c0: C64, c1: C64) -> Self {
        Self { c0, c1 }
    }

    /// |0⟩, the `I_z = +½` eigenstate.
    pub const fn zero() -> Self {
        Self::new(ONE, ZERO)
    }

    /// |1⟩, the `I_z = −½` eigenstate.
    pub const fn one() -> Self {
        Self::new(ZERO, ONE)
    }

    /// (|0⟩ + |1⟩)/√2.
    pub fn plus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(s.into(), s.into())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.c0 * s, self.c1 * s)
    }

    pub fn normalized(&self) -> Self {
        self.scale((1.0 / self.norm()).into())
    }

    /// `|v⟩⟨v|`.
    pub fn outer(&self) -> Operator2 {
        Operator2::new(
            self.c0 * self.c0.conj(),
            self.c0 * self.c1.conj(),
            self.c1 * self.c0.conj(),
            self.c1 * self.c1.conj(),
        )
    }

    pub fn is_finite(&self) -> bool {
        [self.c0, self.c1]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Tolerances for the density-matrix invariants.
pub const DM_TRACE_TOL: f64 = 1e-12;
pub const DM_HERMITIAN_TOL: f64 = 1e-12;
pub const DM_POSITIVITY_TOL: f64 = 1e-12;

/// Unit-trace, Hermitian, positive semidefinite 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix2(Operator2);

impl DensityMatrix2 {
    /// Wraps `m` after checking the invariants at the standard tolerances.
    pub fn try_new(m: Operator2) -> Result<Self> {
        m.ensure_finite()?;
        let trace_err = (m.trace() - ONE).norm();
        if trace_err > DM_TRACE_TOL {
            return Err(Error::InvalidInput(format!(
                "density matrix trace deviates from 1 by {trace_err:e}"
            )));
        }
        let herm = m.hermiticity_residual();
        if herm > DM_HERMITIAN_TOL {
            return Err(Error::InvalidInput(format!(
                "density matrix is not Hermitian (residual {herm:e})"
            )));
        }
        let [lo, _] = hermitian_eigenvalues(&m);
        if lo < -DM_POSITIVITY_TOL {
            return Err(Error::InvalidInput(format!(
                "density matrix has negative eigenvalue {lo:e}"
            )));
        }
        Ok(Self(m))
    }

    pub fn pure(v: &StateVec2) -> Result<Self> {
        dm_normalize(&v.outer())
    }

    pub fn as_operator(&self) -> &Operator2 {
        &self.0
    }

    pub fn into_operator(self) -> Operator2 {
        self.0
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        hermitian_eigenvalues(&self.0)
    }
}

/// Normalizes `M` to unit trace.
///
/// A trace below `1e−300` in magnitude means all population was lost and is
/// reported as [`Error::DegenerateState`]. The result is symmetrized to remove
/// rounding-level anti-Hermitian residue.
pub fn dm_normalize(m: &Operator2) -> Result<DensityMatrix2> {
    m.ensure_finite()?;
    let tr = m.trace();
    if tr.norm() < 1e-300 {
        return Err(Error::DegenerateState(tr.norm()));
    }
    let n = m.scale(ONE / tr);
    let sym = (n + n.dagger()) * 0.5;
    let sym = Operator2 {
        a00: sym.a00.re.into(),
        a11: sym.a11.re.into(),
        ..sym
    };
    DensityMatrix2::try_new(sym)
}

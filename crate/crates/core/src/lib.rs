//! Dynamical-decoupling protection of evolutions under PT-symmetric
//! non-Hermitian qubit Hamiltonians.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: 2×2 complex operators, closed-form exponentials, density matrices.
//! - [`model`]: the passive PT-symmetric Hamiltonian, its noise terms and time constants.
//! - [`noise`]: piecewise-constant noise trajectories and reproducible random streams.
//! - [`sequence`]: unprotected, CPMG-like (s1) and CPMG (s2) cycles, schedule
//!   compilation, toggling frame and average Hamiltonians.
//! - [`engine`]: propagation, Monte Carlo ensembles, fidelities and sweeps.

pub mod engine;
pub mod error;
pub mod linalg;
pub mod model;
pub mod noise;
pub mod sequence;

pub use error::{Error, Result};

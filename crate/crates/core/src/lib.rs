//! Numerical core for no-regret learning in quantum games.
//!
//! Strategies are density matrices on per-player registers, payoffs are
//! Hermitian observables on the joint register, and deviations are quantum
//! channels stored as Choi matrices. On top of that sit equilibrium
//! certificates (QNE, QCCE, QΦE, zero-sum value brackets) and the learning
//! dynamics (matrix multiplicative weights and friends) whose time averages
//! converge to them.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, trajectory
//! export and the command-line front end live in the `qgame` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod channels;
pub mod equilibria;
mod error;
pub mod games;
pub mod learning;
pub mod linalg;
pub mod sampling;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, HermitianMatrix, RegisterLayout, C64};

/// Tolerance tiers shared across the crate.
pub mod tol {
    /// Maximum entrywise deviation from Hermiticity after construction.
    pub const HERMITIAN: f64 = 1e-12;
    /// Exact algebraic identities and analytically constructed states.
    pub const ALGEBRAIC: f64 = 1e-9;
    /// PSD and certification checks on learned or time-averaged states.
    pub const LEARNED: f64 = 1e-6;
    /// Admission of channels that are CPTP analytically.
    pub const CPTP: f64 = 1e-8;
    /// Input accepted as Hermitian before symmetrization.
    pub const HERMITIAN_INPUT: f64 = 1e-9;
}

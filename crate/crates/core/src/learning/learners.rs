use alloc::format;
use alloc::string::String;

use super::Schedule;
use crate::error::{Error, Result};
use crate::linalg::{project_to_density, ComplexMatrix, DensityMatrix, HermitianMatrix};

/// What a player sees after round `t` (1-based): its own gain matrix and the
/// strategies everyone played.
#[derive(Clone, Copy, Debug)]
pub struct Round<'a> {
    pub t: usize,
    pub player: usize,
    pub gain: &'a HermitianMatrix,
    pub profile: &'a [DensityMatrix],
}

/// An online learner over density matrices with full-information feedback.
pub trait Learner {
    fn dim(&self) -> usize;

    /// Strategy for the upcoming round.
    fn strategy(&self) -> &DensityMatrix;

    fn observe(&mut self, round: &Round<'_>) -> Result<()>;

    /// Guaranteed average external regret after `t` rounds, when the learner
    /// has one (gains with spectral norm at most 1).
    fn regret_bound(&self, t: usize) -> Option<f64>;

    fn describe(&self) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularizer {
    /// Von Neumann entropy: matrix multiplicative weights.
    Entropy,
    /// Squared Frobenius norm: projection of the scaled cumulative gain.
    Frobenius,
}

/// Follow-the-regularized-leader over the cumulative gain.
#[derive(Clone, Debug)]
pub struct MatrixLearner {
    regularizer: Regularizer,
    schedule: Schedule,
    dim: usize,
    /// Gains observed since the current epoch started.
    cumulative: HermitianMatrix,
    rounds: usize,
    strategy: DensityMatrix,
}

impl MatrixLearner {
    pub fn new(regularizer: Regularizer, dim: usize, schedule: Schedule) -> Result<Self> {
        schedule.validate()?;
        if dim < 2 {
            return Err(Error::InvalidArgument(format!("learner dimension must be at least 2, got {dim}")));
        }
        let mut learner = Self {
            regularizer,
            schedule,
            dim,
            cumulative: HermitianMatrix::zeros(dim),
            rounds: 0,
            strategy: DensityMatrix::maximally_mixed(dim),
        };
        learner.refresh();
        Ok(learner)
    }

    pub fn mmwu(dim: usize, schedule: Schedule) -> Result<Self> {
        Self::new(Regularizer::Entropy, dim, schedule)
    }

    pub fn ftrl_frobenius(dim: usize, schedule: Schedule) -> Result<Self> {
        Self::new(Regularizer::Frobenius, dim, schedule)
    }

    pub fn schedule(&self) -> Schedule {
        self.schedule
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn cumulative_gain(&self) -> &HermitianMatrix {
        &self.cumulative
    }

    fn refresh(&mut self) {
        let eta = self.schedule.eta_at(self.rounds, self.dim);
        let scaled = self.cumulative.scale(eta);
        self.strategy = match self.regularizer {
            Regularizer::Entropy => scaled.exp_density(),
            Regularizer::Frobenius => project_to_density(&scaled),
        };
    }

    /// Feeds one gain matrix and returns the next strategy.
    pub fn step(&mut self, gain: &HermitianMatrix) -> Result<&DensityMatrix> {
        if gain.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "gain matrix",
                expected: self.dim,
                found: gain.dim(),
            });
        }
        let (epoch_before, _) = self.schedule.epoch_of(self.rounds);
        self.cumulative.add_assign(gain);
        self.rounds += 1;
        if self.schedule.epoch_of(self.rounds).0 != epoch_before {
            self.cumulative = HermitianMatrix::zeros(self.dim);
        }
        self.refresh();
        Ok(&self.strategy)
    }

    /// Like [`MatrixLearner::step`] for an unchecked matrix; rejects
    /// non-Hermitian input.
    pub fn step_matrix(&mut self, gain: &ComplexMatrix) -> Result<&DensityMatrix> {
        let gain = HermitianMatrix::new(gain.clone())?;
        self.step(&gain)
    }

    /// Total regret guarantee for one restart of length `rounds` at step size `eta`.
    fn block_bound(&self, eta: f64, rounds: usize) -> f64 {
        let d = self.dim as f64;
        match self.regularizer {
            Regularizer::Entropy => eta * rounds as f64 + libm::log(d) / eta,
            // Regularizer range ½(1 − 1/d); dual Frobenius norm of a gain is at most √d.
            Regularizer::Frobenius => eta * d * rounds as f64 + (1.0 - 1.0 / d) / (2.0 * eta),
        }
    }
}

impl Learner for MatrixLearner {
    fn dim(&self) -> usize {
        self.dim
    }

    fn strategy(&self) -> &DensityMatrix {
        &self.strategy
    }

    fn observe(&mut self, round: &Round<'_>) -> Result<()> {
        self.step(round.gain).map(|_| ())
    }

    fn regret_bound(&self, t: usize) -> Option<f64> {
        if t == 0 {
            return None;
        }
        let total: f64 = self
            .schedule
            .blocks(t, self.dim)
            .into_iter()
            .map(|(eta, rounds)| self.block_bound(eta, rounds))
            .sum();
        Some(total / t as f64)
    }

    fn describe(&self) -> String {
        let name = match self.regularizer {
            Regularizer::Entropy => "mmwu",
            Regularizer::Frobenius => "ftrl-frobenius",
        };
        format!("{name}/{}", self.schedule.describe())
    }
}

/// Plays the same state every round.
#[derive(Clone, Debug)]
pub struct FixedLearner {
    state: DensityMatrix,
}

impl FixedLearner {
    pub fn new(state: DensityMatrix) -> Self {
        Self { state }
    }
}

impl Learner for FixedLearner {
    fn dim(&self) -> usize {
        self.state.dim()
    }

    fn strategy(&self) -> &DensityMatrix {
        &self.state
    }

    fn observe(&mut self, _round: &Round<'_>) -> Result<()> {
        Ok(())
    }

    fn regret_bound(&self, _t: usize) -> Option<f64> {
        None
    }

    fn describe(&self) -> String {
        "fixed".into()
    }
}

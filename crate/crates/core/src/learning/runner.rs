use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{Learner, Round};
use crate::equilibria::{qcce_gaps, qne_gaps};
use crate::error::{Error, Result};
use crate::games::QuantumGame;
use crate::linalg::{ComplexMatrix, DensityMatrix, HermitianMatrix, RegisterLayout};
use crate::tol;

/// Which exploitability the runner records at checkpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapMetric {
    /// QCCE gaps of the time-averaged joint state.
    Qcce,
    /// Nash gaps of the product of time-averaged marginals.
    Qne,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub horizon: usize,
    pub checkpoint_stride: usize,
    pub metric: GapMetric,
    /// Keep every round's strategies, not only those at checkpoints.
    pub keep_strategies: bool,
}

impl RunOptions {
    pub fn new(horizon: usize) -> Self {
        Self {
            horizon,
            checkpoint_stride: 1,
            metric: GapMetric::Qcce,
            keep_strategies: false,
        }
    }

    pub fn stride(mut self, stride: usize) -> Self {
        self.checkpoint_stride = stride;
        self
    }

    pub fn metric(mut self, metric: GapMetric) -> Self {
        self.metric = metric;
        self
    }

    pub fn keep_strategies(mut self, keep: bool) -> Self {
        self.keep_strategies = keep;
        self
    }
}

/// State of the run after round `t`.
#[derive(Clone, Debug)]
pub struct Checkpoint {
    pub t: usize,
    /// Utilities of round `t`'s strategy profile.
    pub utilities: Vec<f64>,
    pub average_regret: Vec<f64>,
    /// Per-player gaps under the run's [`GapMetric`]; empty for `None`.
    pub gaps: Vec<f64>,
    /// Guarantee on the largest gap implied by the learners' regret bounds:
    /// the largest bound for QCCE gaps, the sum of bounds for Nash gaps.
    pub gap_bound: Option<f64>,
    /// Strategies played in round `t`.
    pub strategies: Vec<DensityMatrix>,
    /// Spectrum of round `t`'s joint state `⊗_i ρ_i^t`, descending.
    pub joint_eigenvalues: Vec<f64>,
}

impl Checkpoint {
    pub fn max_gap(&self) -> Option<f64> {
        self.gaps.iter().copied().reduce(f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    layout: RegisterLayout,
    rounds: usize,
    joint_sum: ComplexMatrix,
    marginal_sums: Vec<ComplexMatrix>,
    cumulative_gains: Vec<HermitianMatrix>,
    realized: Vec<f64>,
    checkpoints: Vec<Checkpoint>,
    history: Option<Vec<Vec<DensityMatrix>>>,
}

impl Trajectory {
    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn checkpoints(&self) -> &[Checkpoint] {
        &self.checkpoints
    }

    pub fn last_checkpoint(&self) -> Option<&Checkpoint> {
        self.checkpoints.last()
    }

    /// Every round's profile, when recorded.
    pub fn history(&self) -> Option<&[Vec<DensityMatrix>]> {
        self.history.as_deref()
    }

    pub fn joint_sum(&self) -> &ComplexMatrix {
        &self.joint_sum
    }

    /// `(1/T) Σ_t ⊗_i ρ_i^t`.
    pub fn time_averaged_joint_matrix(&self) -> ComplexMatrix {
        self.joint_sum.scale(1.0 / self.rounds as f64)
    }

    pub fn time_averaged_joint(&self) -> Result<DensityMatrix> {
        let m = HermitianMatrix::symmetrize(&self.time_averaged_joint_matrix());
        DensityMatrix::with_tolerance(m, tol::LEARNED)
    }

    pub fn averaged_marginal(&self, i: usize) -> Result<DensityMatrix> {
        let m = HermitianMatrix::symmetrize(&self.marginal_sums[i].scale(1.0 / self.rounds as f64));
        DensityMatrix::with_tolerance(m, tol::LEARNED)
    }

    pub fn averaged_marginals(&self) -> Result<Vec<DensityMatrix>> {
        (0..self.layout.len()).map(|i| self.averaged_marginal(i)).collect()
    }

    pub fn cumulative_gain(&self, i: usize) -> &HermitianMatrix {
        &self.cumulative_gains[i]
    }

    /// `Σ_t ⟨ρ_i^t, G_i^t⟩`.
    pub fn realized_payoff(&self, i: usize) -> f64 {
        self.realized[i]
    }

    /// `λ_max(Σ_t G_i^t) − Σ_t ⟨ρ_i^t, G_i^t⟩`.
    pub fn external_regret(&self, i: usize) -> f64 {
        self.cumulative_gains[i].lambda_max() - self.realized[i]
    }

    pub fn average_external_regret(&self, i: usize) -> f64 {
        self.external_regret(i) / self.rounds as f64
    }
}

/// Plays `g` for `options.horizon` rounds. Every round all gains are computed
/// from the current profile before any learner updates.
pub fn run_game(g: &QuantumGame, learners: &mut [Box<dyn Learner>], options: &RunOptions) -> Result<Trajectory> {
    if options.horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    if options.checkpoint_stride == 0 {
        return Err(Error::InvalidArgument("checkpoint stride must be at least 1".into()));
    }
    let layout = g.layout().clone();
    let k = layout.len();
    if learners.len() != k {
        return Err(Error::DimensionMismatch {
            context: "learners per player",
            expected: k,
            found: learners.len(),
        });
    }
    for (i, l) in learners.iter().enumerate() {
        if l.dim() != layout.dim(i) {
            return Err(Error::DimensionMismatch {
                context: "learner dimension",
                expected: layout.dim(i),
                found: l.dim(),
            });
        }
    }

    let joint = layout.joint_dim();
    let mut traj = Trajectory {
        rounds: 0,
        joint_sum: ComplexMatrix::zeros(joint, joint),
        marginal_sums: (0..k).map(|i| ComplexMatrix::zeros(layout.dim(i), layout.dim(i))).collect(),
        cumulative_gains: (0..k).map(|i| HermitianMatrix::zeros(layout.dim(i))).collect(),
        realized: alloc::vec![0.0; k],
        checkpoints: Vec::new(),
        history: options.keep_strategies.then(Vec::new),
        layout,
    };

    for t in 1..=options.horizon {
        let profile: Vec<DensityMatrix> = learners.iter().map(|l| l.strategy().clone()).collect();
        let gains = (0..k)
            .map(|i| g.gain_against_profile(i, &profile))
            .collect::<Result<Vec<_>>>()?;
        let mut utilities = Vec::with_capacity(k);
        for i in 0..k {
            let u = profile[i].as_hermitian().inner(&gains[i])?;
            utilities.push(u);
            traj.realized[i] += u;
            traj.cumulative_gains[i].add_assign(&gains[i]);
            traj.marginal_sums[i] = &traj.marginal_sums[i] + profile[i].as_matrix();
        }
        let product = DensityMatrix::product(&profile).expect("at least one player");
        traj.joint_sum = &traj.joint_sum + product.as_matrix();
        traj.rounds = t;

        for (i, l) in learners.iter_mut().enumerate() {
            l.observe(&Round {
                t,
                player: i,
                gain: &gains[i],
                profile: &profile,
            })?;
        }

        if t % options.checkpoint_stride == 0 || t == options.horizon {
            let checkpoint = checkpoint(g, &traj, learners, options.metric, utilities, &profile)?;
            traj.checkpoints.push(checkpoint);
        }
        if let Some(h) = &mut traj.history {
            h.push(profile);
        }
    }
    Ok(traj)
}

fn checkpoint(
    g: &QuantumGame,
    traj: &Trajectory,
    learners: &[Box<dyn Learner>],
    metric: GapMetric,
    utilities: Vec<f64>,
    profile: &[DensityMatrix],
) -> Result<Checkpoint> {
    let t = traj.rounds;
    let k = learners.len();
    let average_regret: Vec<f64> = (0..k).map(|i| traj.average_external_regret(i)).collect();
    let gaps = match metric {
        GapMetric::Qcce => qcce_gaps(g, &traj.time_averaged_joint_matrix())?,
        GapMetric::Qne => qne_gaps(g, &traj.averaged_marginals()?)?,
        GapMetric::None => Vec::new(),
    };
    let bounds: Option<Vec<f64>> = learners.iter().map(|l| l.regret_bound(t)).collect();
    let gap_bound = match metric {
        GapMetric::Qcce => bounds.map(|b| b.into_iter().fold(f64::NEG_INFINITY, f64::max)),
        GapMetric::Qne => bounds.map(|b| b.into_iter().sum()),
        GapMetric::None => None,
    };
    let mut joint_eigenvalues: Vec<f64> = Vec::new();
    for rho in profile {
        let values = rho.as_hermitian().eigenvalues();
        joint_eigenvalues = if joint_eigenvalues.is_empty() {
            values
        } else {
            joint_eigenvalues
                .iter()
                .flat_map(|a| values.iter().map(move |b| a * b))
                .collect()
        };
    }
    joint_eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(Checkpoint {
        t,
        utilities,
        average_regret,
        gaps,
        gap_bound,
        strategies: profile.to_vec(),
        joint_eigenvalues,
    })
}

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Learner, MatrixLearner, Round, Schedule};
use crate::error::{Error, Result};
use crate::linalg::{check_distribution, DensityMatrix};

/// `Σ_j λ_j ⊗_i ρ_{i,j}`: a separable joint state given by its components.
#[derive(Clone, Debug)]
pub struct SeparableDecomposition {
    weights: Vec<f64>,
    /// `components[j][i]` is player `i`'s state in component `j`.
    components: Vec<Vec<DensityMatrix>>,
}

impl SeparableDecomposition {
    pub fn new(weights: Vec<f64>, components: Vec<Vec<DensityMatrix>>) -> Result<Self> {
        check_distribution(&weights)?;
        if weights.len() != components.len() {
            return Err(Error::DimensionMismatch {
                context: "decomposition components",
                expected: weights.len(),
                found: components.len(),
            });
        }
        let first = &components[0];
        if first.is_empty() {
            return Err(Error::InvalidArgument("components need at least one player".into()));
        }
        for c in &components {
            if c.len() != first.len() || c.iter().zip(first).any(|(a, b)| a.dim() != b.dim()) {
                return Err(Error::InvalidArgument("components have inconsistent shapes".into()));
            }
        }
        Ok(Self { weights, components })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn components(&self) -> &[Vec<DensityMatrix>] {
        &self.components
    }

    pub fn players(&self) -> usize {
        self.components[0].len()
    }

    pub fn state(&self) -> DensityMatrix {
        let products: Vec<DensityMatrix> = self
            .components
            .iter()
            .map(|c| DensityMatrix::product(c).expect("nonempty component"))
            .collect();
        DensityMatrix::mixture(&self.weights, &products).expect("validated decomposition")
    }
}

/// Greedy rounding of `weights` to a play sequence: after `t − 1` rounds
/// with counts `count_j`, pick `argmax_j λ_j t − count_j` (lowest index on ties).
pub fn next_component(weights: &[f64], counts: &[usize], t: usize) -> usize {
    let mut best = 0;
    let mut best_score = f64::NEG_INFINITY;
    for (j, (&w, &c)) in weights.iter().zip(counts).enumerate() {
        let score = w * t as f64 - c as f64;
        if score > best_score {
            best = j;
            best_score = score;
        }
    }
    best
}

/// Follows a shared script that replays a separable joint state, and falls
/// back to doubling-trick MMWU for good once any opponent leaves the script.
#[derive(Clone, Debug)]
pub struct ScriptedLearner {
    player: usize,
    decomposition: SeparableDecomposition,
    counts: Vec<usize>,
    rounds: usize,
    current: usize,
    fallback: Option<MatrixLearner>,
    /// Rounds played before the fallback took over.
    switched_after: Option<usize>,
}

impl ScriptedLearner {
    /// Opponent strategies further than this (max entry) from the script count as a deviation.
    pub const DEVIATION_THRESHOLD: f64 = 1e-9;

    pub fn new(player: usize, decomposition: SeparableDecomposition) -> Result<Self> {
        if player >= decomposition.players() {
            return Err(Error::InvalidArgument(format!("player {player} out of range")));
        }
        let counts = vec![0; decomposition.weights.len()];
        let current = next_component(&decomposition.weights, &counts, 1);
        Ok(Self {
            player,
            decomposition,
            counts,
            rounds: 0,
            current,
            fallback: None,
            switched_after: None,
        })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn switched_after(&self) -> Option<usize> {
        self.switched_after
    }

    fn deviated(&self, profile: &[DensityMatrix]) -> bool {
        let script = &self.decomposition.components[self.current];
        profile.len() != script.len()
            || profile.iter().zip(script).enumerate().any(|(p, (played, expected))| {
                p != self.player
                    && (played.dim() != expected.dim()
                        || played.as_matrix().max_abs_diff(expected.as_matrix()) > Self::DEVIATION_THRESHOLD)
            })
    }
}

impl Learner for ScriptedLearner {
    fn dim(&self) -> usize {
        self.decomposition.components[0][self.player].dim()
    }

    fn strategy(&self) -> &DensityMatrix {
        match &self.fallback {
            Some(l) => l.strategy(),
            None => &self.decomposition.components[self.current][self.player],
        }
    }

    fn observe(&mut self, round: &Round<'_>) -> Result<()> {
        self.rounds += 1;
        if let Some(l) = &mut self.fallback {
            return l.observe(round);
        }
        if self.deviated(round.profile) {
            self.fallback = Some(MatrixLearner::mmwu(self.dim(), Schedule::doubling())?);
            self.switched_after = Some(self.rounds);
            return Ok(());
        }
        self.counts[self.current] += 1;
        self.current = next_component(&self.decomposition.weights, &self.counts, self.rounds + 1);
        Ok(())
    }

    /// Before a switch there is no guarantee. After switching at round `s`,
    /// the first `s` rounds cost at most 2 each and the rest are covered by
    /// the fallback's bound.
    fn regret_bound(&self, t: usize) -> Option<f64> {
        let s = self.switched_after?;
        let fallback = self.fallback.as_ref()?;
        if t <= s {
            return Some(2.0);
        }
        let rest = (t - s) as f64 * fallback.regret_bound(t - s)?;
        Some((2.0 * s as f64 + rest) / t as f64)
    }

    fn describe(&self) -> String {
        format!("scripted(components={})", self.decomposition.weights.len())
    }
}

/// One scripted learner per player, all following the same script.
pub fn scripted_qcce_learners(decomposition: &SeparableDecomposition) -> Result<Vec<ScriptedLearner>> {
    (0..decomposition.players())
        .map(|i| ScriptedLearner::new(i, decomposition.clone()))
        .collect()
}

use alloc::vec::Vec;

use super::{zero_sum_game, Graph, PolymatrixEdge, PolymatrixGame, QuantumGame};
use crate::error::{Error, Result};
use crate::linalg::RegisterLayout;
use crate::sampling::{random_hermitian, random_normalized_hermitian, rng_from_seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    /// Independent tensors per player.
    General,
    /// Two players, `R_2 = −R_1`.
    ZeroSum,
}

/// Seeded random game whose utility tensors all have unit spectral norm.
pub fn random_game(dims: &[usize], seed: u64, kind: RandomKind) -> Result<QuantumGame> {
    let layout = RegisterLayout::new(dims.to_vec())?;
    let joint = layout.joint_dim();
    let mut rng = rng_from_seed(seed);
    match kind {
        RandomKind::General => {
            let tensors = (0..layout.len())
                .map(|_| random_normalized_hermitian(joint, &mut rng))
                .collect();
            QuantumGame::new(layout, tensors)
        }
        RandomKind::ZeroSum => {
            if layout.len() != 2 {
                return Err(Error::InvalidArgument(
                    "random zero-sum games are two-player; use a pairwise zero-sum polymatrix game for more".into(),
                ));
            }
            zero_sum_game(random_normalized_hermitian(joint, &mut rng), dims[0], dims[1])
        }
    }
}

/// Seeded random polymatrix game.
///
/// Edge tensors are random Hermitian; with `pairwise_zero_sum` each edge
/// satisfies `R_ji = −swap(R_ij)`, which makes the whole game zero-sum (a
/// stronger condition than global zero-sum). All edges are then rescaled by
/// one common factor so the largest lifted tensor has unit spectral norm.
pub fn random_polymatrix(dims: &[usize], graph: &Graph, seed: u64, pairwise_zero_sum: bool) -> Result<PolymatrixGame> {
    let edges_ij = graph.edges(dims.len())?;
    if edges_ij.is_empty() {
        return Err(Error::InvalidArgument("graph has no edges".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(edges_ij.len());
    for (i, j) in edges_ij {
        let (di, dj) = (dims[i], dims[j]);
        let r_ij = random_hermitian(di * dj, &mut rng);
        let edge = if pairwise_zero_sum {
            PolymatrixEdge::zero_sum(i, j, r_ij, di, dj)?
        } else {
            let r_ji = random_hermitian(di * dj, &mut rng);
            PolymatrixEdge { i, j, r_ij, r_ji }
        };
        edges.push(edge);
    }
    let raw = PolymatrixGame::new(dims.to_vec(), edges)?;
    let norm = raw
        .lifted_tensors()?
        .iter()
        .map(|r| r.spectral_norm())
        .fold(0.0, f64::max);
    Ok(raw.scaled(1.0 / norm))
}

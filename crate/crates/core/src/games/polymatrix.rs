use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::QuantumGame;
use crate::error::{Error, Result};
use crate::linalg::{embed_operator, partial_trace, permute_registers, ComplexMatrix, DensityMatrix, HermitianMatrix, RegisterLayout};
use crate::tol;

/// Interaction graph over players `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Graph {
    Path,
    Cycle,
    Complete,
    Edges(Vec<(usize, usize)>),
}

impl Graph {
    /// Unordered edges `(i, j)` with `i < j`, deduplicated, in a fixed order.
    pub fn edges(&self, k: usize) -> Result<Vec<(usize, usize)>> {
        let mut edges: Vec<(usize, usize)> = match self {
            Graph::Path => (1..k).map(|j| (j - 1, j)).collect(),
            Graph::Cycle => {
                let mut e: Vec<_> = (1..k).map(|j| (j - 1, j)).collect();
                if k >= 3 {
                    e.push((0, k - 1));
                }
                e
            }
            Graph::Complete => (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect(),
            Graph::Edges(list) => {
                let mut e = Vec::with_capacity(list.len());
                for &(i, j) in list {
                    if i == j {
                        return Err(Error::InvalidArgument(format!("self-loop at player {i}")));
                    }
                    if i >= k || j >= k {
                        return Err(Error::InvalidArgument(format!("edge ({i}, {j}) out of range for {k} players")));
                    }
                    e.push((i.min(j), i.max(j)));
                }
                e
            }
        };
        edges.sort_unstable();
        edges.dedup();
        Ok(edges)
    }
}

/// A two-player game on the edge `{i, j}`: `r_ij` is player `i`'s tensor on
/// `H_i ⊗ H_j`, `r_ji` player `j`'s tensor on `H_j ⊗ H_i`.
#[derive(Clone, Debug)]
pub struct PolymatrixEdge {
    pub i: usize,
    pub j: usize,
    pub r_ij: HermitianMatrix,
    pub r_ji: HermitianMatrix,
}

impl PolymatrixEdge {
    /// Edge whose payoffs cancel: `r_ji = −swap(r_ij)`.
    pub fn zero_sum(i: usize, j: usize, r_ij: HermitianMatrix, dim_i: usize, dim_j: usize) -> Result<Self> {
        let r_ji = swap_factors(r_ij.as_matrix(), dim_i, dim_j)?.scale(-1.0);
        Ok(Self {
            i,
            j,
            r_ij,
            r_ji: HermitianMatrix::symmetrize(&r_ji),
        })
    }

    /// `‖r_ji + swap(r_ij)‖_max`.
    pub fn zero_sum_residual(&self, dim_i: usize, dim_j: usize) -> Result<f64> {
        let swapped = swap_factors(self.r_ij.as_matrix(), dim_i, dim_j)?;
        Ok((&swapped + self.r_ji.as_matrix()).max_abs())
    }
}

/// `A ⊗ B ↦ B ⊗ A` for an operator on `C^{d_a} ⊗ C^{d_b}`.
fn swap_factors(m: &ComplexMatrix, d_a: usize, d_b: usize) -> Result<ComplexMatrix> {
    let layout = RegisterLayout::new(vec![d_a, d_b])?;
    Ok(permute_registers(m, &layout, &[1, 0])?.0)
}

#[derive(Clone, Debug)]
pub struct PolymatrixGame {
    layout: RegisterLayout,
    edges: Vec<PolymatrixEdge>,
}

impl PolymatrixGame {
    pub fn new(dims: Vec<usize>, edges: Vec<PolymatrixEdge>) -> Result<Self> {
        let layout = RegisterLayout::new(dims)?;
        let k = layout.len();
        if k < 2 {
            return Err(Error::InvalidArgument("a polymatrix game needs at least two players".into()));
        }
        let mut seen = Vec::new();
        for e in &edges {
            if e.i == e.j {
                return Err(Error::InvalidArgument(format!("self-loop at player {}", e.i)));
            }
            if e.i >= k || e.j >= k {
                return Err(Error::InvalidArgument(format!("edge ({}, {}) out of range", e.i, e.j)));
            }
            let key = (e.i.min(e.j), e.i.max(e.j));
            if seen.contains(&key) {
                return Err(Error::InvalidArgument(format!("duplicate edge {key:?}")));
            }
            seen.push(key);
            let pair = layout.dim(e.i) * layout.dim(e.j);
            for r in [&e.r_ij, &e.r_ji] {
                if r.dim() != pair {
                    return Err(Error::DimensionMismatch {
                        context: "edge tensor",
                        expected: pair,
                        found: r.dim(),
                    });
                }
            }
        }
        Ok(Self { layout, edges })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn players(&self) -> usize {
        self.layout.len()
    }

    pub fn edges(&self) -> &[PolymatrixEdge] {
        &self.edges
    }

    /// Largest `‖r_ji + swap(r_ij)‖_max` over the edges.
    pub fn pairwise_zero_sum_residual(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| {
                e.zero_sum_residual(self.layout.dim(e.i), self.layout.dim(e.j))
                    .expect("validated edge dimensions")
            })
            .fold(0.0, f64::max)
    }

    pub fn is_pairwise_zero_sum(&self) -> bool {
        self.pairwise_zero_sum_residual() <= tol::ALGEBRAIC
    }

    /// Incident edge tensors of player `i` as `(j, R_ij on H_i ⊗ H_j)`.
    fn incident(&self, i: usize) -> impl Iterator<Item = (usize, &HermitianMatrix)> {
        self.edges.iter().filter_map(move |e| {
            if e.i == i {
                Some((e.j, &e.r_ij))
            } else if e.j == i {
                Some((e.i, &e.r_ji))
            } else {
                None
            }
        })
    }

    /// `R_i = Σ_j R_ij ⊗ I_{-ij}` for every player.
    pub fn lifted_tensors(&self) -> Result<Vec<HermitianMatrix>> {
        let joint = self.layout.joint_dim();
        (0..self.players())
            .map(|i| {
                let mut acc = ComplexMatrix::zeros(joint, joint);
                for (j, r) in self.incident(i) {
                    acc = &acc + &embed_operator(r.as_matrix(), &self.layout, &[i, j])?;
                }
                Ok(HermitianMatrix::symmetrize(&acc))
            })
            .collect()
    }

    /// The equivalent [`QuantumGame`]; flagged zero-sum when the lifted
    /// tensors cancel.
    pub fn to_quantum_game(&self) -> Result<QuantumGame> {
        let tensors = self.lifted_tensors()?;
        let game = QuantumGame::new(self.layout.clone(), tensors.clone())?;
        if game.zero_sum_residual() <= tol::ALGEBRAIC {
            QuantumGame::new_zero_sum(self.layout.clone(), tensors)
        } else {
            Ok(game)
        }
    }

    /// `Σ_j Tr(R_ij · Tr_{-ij} ρ)` evaluated edge by edge.
    pub fn utility_edgewise(&self, rho: &DensityMatrix, i: usize) -> Result<f64> {
        if i >= self.players() {
            return Err(Error::InvalidArgument(format!("player {i} out of range")));
        }
        let mut total = 0.0;
        for (j, r) in self.incident(i) {
            let pair = partial_trace(rho.as_matrix(), &self.layout, &[i.min(j), i.max(j)])?;
            let pair = if i < j {
                pair
            } else {
                swap_factors(&pair, self.layout.dim(j), self.layout.dim(i))?
            };
            total += r.as_matrix().hs_inner(&pair)?.re;
        }
        Ok(total)
    }

    /// Multiplies every edge tensor by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| PolymatrixEdge {
                i: e.i,
                j: e.j,
                r_ij: e.r_ij.scale(s),
                r_ji: e.r_ji.scale(s),
            })
            .collect();
        Self {
            layout: self.layout.clone(),
            edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron_all;
    use crate::sampling::{random_density, random_hermitian, rng_from_seed};

    fn random_pg(dims: &[usize], graph: Graph, zero_sum: bool, seed: u64) -> PolymatrixGame {
        let mut rng = rng_from_seed(seed);
        let edges = graph
            .edges(dims.len())
            .unwrap()
            .into_iter()
            .map(|(i, j)| {
                let r = random_hermitian(dims[i] * dims[j], &mut rng);
                if zero_sum {
                    PolymatrixEdge::zero_sum(i, j, r, dims[i], dims[j]).unwrap()
                } else {
                    let r_ji = random_hermitian(dims[i] * dims[j], &mut rng);
                    PolymatrixEdge { i, j, r_ij: r, r_ji }
                }
            })
            .collect();
        PolymatrixGame::new(dims.to_vec(), edges).unwrap()
    }

    #[test]
    fn graph_edges() {
        assert_eq!(Graph::Path.edges(3).unwrap(), vec![(0, 1), (1, 2)]);
        assert_eq!(Graph::Cycle.edges(3).unwrap(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(Graph::Cycle.edges(2).unwrap(), vec![(0, 1)]);
        assert_eq!(Graph::Complete.edges(4).unwrap().len(), 6);
        assert!(Graph::Edges(vec![(1, 1)]).edges(3).is_err());
        assert!(Graph::Edges(vec![(0, 5)]).edges(3).is_err());
    }

    #[test]
    fn two_node_lift_is_the_edge_game() {
        let pg = random_pg(&[2, 3], Graph::Path, false, 3);
        let lifted = pg.lifted_tensors().unwrap();
        let e = &pg.edges()[0];
        assert!(lifted[0].as_matrix().max_abs_diff(e.r_ij.as_matrix()) < 1e-15);
        let swapped = swap_factors(e.r_ji.as_matrix(), 3, 2).unwrap();
        assert!(lifted[1].as_matrix().max_abs_diff(&swapped) < 1e-15);
    }

    #[test]
    fn path_lift_matches_edgewise_on_product_states() {
        let pg = random_pg(&[2, 2, 2], Graph::Path, false, 5);
        let g = pg.to_quantum_game().unwrap();
        let mut rng = rng_from_seed(6);
        let factors: Vec<_> = (0..3).map(|_| random_density(2, &mut rng)).collect();
        let rho = DensityMatrix::product(&factors).unwrap();
        for i in 0..3 {
            // Direct oracle: each edge sees only its two factors.
            let mut direct = 0.0;
            for e in pg.edges() {
                let (r, a, b) = if e.i == i {
                    (&e.r_ij, e.i, e.j)
                } else if e.j == i {
                    (&e.r_ji, e.j, e.i)
                } else {
                    continue;
                };
                let pair = kron_all([factors[a].as_matrix(), factors[b].as_matrix()]).unwrap();
                direct += r.as_matrix().hs_inner(&pair).unwrap().re;
            }
            let lifted = g.utility(&rho, i).unwrap();
            assert!((lifted - direct).abs() < 1e-12);
            assert!((pg.utility_edgewise(&rho, i).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn lift_matches_edgewise_on_entangled_states() {
        let pg = random_pg(&[2, 3, 2], Graph::Cycle, false, 9);
        let g = pg.to_quantum_game().unwrap();
        let mut rng = rng_from_seed(10);
        let rho = random_density(12, &mut rng);
        for i in 0..3 {
            let a = g.utility(&rho, i).unwrap();
            let b = pg.utility_edgewise(&rho, i).unwrap();
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn pairwise_zero_sum_edges_cancel() {
        let pg = random_pg(&[2, 3, 2], Graph::Cycle, true, 11);
        assert!(pg.is_pairwise_zero_sum());
        let g = pg.to_quantum_game().unwrap();
        assert!(g.is_zero_sum());
        assert!(g.zero_sum_residual() <= 1e-9);
        assert!(!random_pg(&[2, 2, 2], Graph::Cycle, false, 11).is_pairwise_zero_sum());
    }

    #[test]
    fn rejects_bad_edges() {
        let h = HermitianMatrix::identity(4);
        let e = |i, j| PolymatrixEdge {
            i,
            j,
            r_ij: h.clone(),
            r_ji: h.clone(),
        };
        assert!(PolymatrixGame::new(vec![2, 2], vec![e(0, 0)]).is_err());
        assert!(PolymatrixGame::new(vec![2, 2], vec![e(0, 1), e(1, 0)]).is_err());
        assert!(PolymatrixGame::new(vec![2, 3], vec![e(0, 1)]).is_err());
        assert!(PolymatrixGame::new(vec![2, 2], vec![e(0, 2)]).is_err());
    }
}

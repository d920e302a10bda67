//! Quantum games: each player's payoff is the expectation `Tr(ρ R_i)` of a
//! Hermitian utility tensor on the joint register.

mod polymatrix;
mod random;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use polymatrix::{Graph, PolymatrixEdge, PolymatrixGame};
pub use random::{random_game, random_polymatrix, RandomKind};

use crate::channels::ChoiMatrix;
use crate::error::{Error, Result};
use crate::linalg::{
    partial_trace, permute_registers, to_front, ComplexMatrix, DensityMatrix, HermitianMatrix, RegisterLayout, C64,
};
use crate::tol;

#[derive(Clone, Debug)]
pub struct QuantumGame {
    layout: RegisterLayout,
    tensors: Vec<HermitianMatrix>,
    zero_sum: bool,
    /// `R_i` with register `i` permuted to the front.
    front: Vec<ComplexMatrix>,
}

impl QuantumGame {
    pub fn new(layout: RegisterLayout, tensors: Vec<HermitianMatrix>) -> Result<Self> {
        if tensors.len() != layout.len() {
            return Err(Error::DimensionMismatch {
                context: "utility tensors per player",
                expected: layout.len(),
                found: tensors.len(),
            });
        }
        let joint = layout.joint_dim();
        let mut front = Vec::with_capacity(tensors.len());
        for (i, r) in tensors.iter().enumerate() {
            if r.dim() != joint {
                return Err(Error::DimensionMismatch {
                    context: "utility tensor",
                    expected: joint,
                    found: r.dim(),
                });
            }
            let (m, _) = permute_registers(r.as_matrix(), &layout, &to_front(&layout, i))?;
            front.push(m);
        }
        Ok(Self {
            layout,
            tensors,
            zero_sum: false,
            front,
        })
    }

    /// Like [`QuantumGame::new`] but flags the game zero-sum after checking
    /// `‖Σ_i R_i‖_max ≤ 1e-9`.
    pub fn new_zero_sum(layout: RegisterLayout, tensors: Vec<HermitianMatrix>) -> Result<Self> {
        let mut game = Self::new(layout, tensors)?;
        let residual = game.zero_sum_residual();
        if residual > tol::ALGEBRAIC {
            return Err(Error::InvalidArgument(format!(
                "utility tensors do not sum to zero (max entry {residual:e})"
            )));
        }
        game.zero_sum = true;
        Ok(game)
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn players(&self) -> usize {
        self.tensors.len()
    }

    pub fn tensor(&self, i: usize) -> &HermitianMatrix {
        &self.tensors[i]
    }

    pub fn tensors(&self) -> &[HermitianMatrix] {
        &self.tensors
    }

    pub fn is_zero_sum(&self) -> bool {
        self.zero_sum
    }

    /// `‖Σ_i R_i‖_max`.
    pub fn zero_sum_residual(&self) -> f64 {
        let joint = self.layout.joint_dim();
        let mut sum = ComplexMatrix::zeros(joint, joint);
        for r in &self.tensors {
            sum = &sum + r.as_matrix();
        }
        sum.max_abs()
    }

    pub fn spectral_norms(&self) -> Vec<f64> {
        self.tensors.iter().map(|r| r.spectral_norm()).collect()
    }

    fn check_player(&self, i: usize) -> Result<()> {
        if i >= self.players() {
            return Err(Error::InvalidArgument(format!(
                "player {i} out of range for a {}-player game",
                self.players()
            )));
        }
        Ok(())
    }

    /// `u_i(ρ) = Tr(ρ R_i)`.
    pub fn utility(&self, rho: &DensityMatrix, i: usize) -> Result<f64> {
        self.check_player(i)?;
        self.utility_of_matrix(rho.as_matrix(), i)
    }

    pub(crate) fn utility_of_matrix(&self, rho: &ComplexMatrix, i: usize) -> Result<f64> {
        if rho.rows() != self.layout.joint_dim() {
            return Err(Error::DimensionMismatch {
                context: "joint state",
                expected: self.layout.joint_dim(),
                found: rho.rows(),
            });
        }
        Ok(self.tensors[i].as_matrix().hs_inner(rho)?.re)
    }

    /// Player `i`'s gain matrix `Θ_i(ρ_{-i}ᵀ) = Tr_{-i}(R_i (I ⊗ ρ_{-i}))`
    /// against the opponents' joint state (opponents in register order).
    /// `⟨ρ_i, gain⟩` is `i`'s utility at `ρ_i ⊗ ρ_{-i}`.
    pub fn gain_matrix(&self, i: usize, rho_others: &DensityMatrix) -> Result<HermitianMatrix> {
        self.check_player(i)?;
        self.gain_of_matrix(i, rho_others.as_matrix())
    }

    fn gain_of_matrix(&self, i: usize, others: &ComplexMatrix) -> Result<HermitianMatrix> {
        let d = self.layout.dim(i);
        let rest = self.layout.complement_dim(i);
        if others.rows() != rest || others.cols() != rest {
            return Err(Error::DimensionMismatch {
                context: "opponents' state",
                expected: rest,
                found: others.rows(),
            });
        }
        let r = &self.front[i];
        let gain = ComplexMatrix::from_fn(d, d, |a, b| {
            let mut acc = C64::new(0.0, 0.0);
            for x in 0..rest {
                let row = a * rest + x;
                for y in 0..rest {
                    acc += r[(row, b * rest + y)] * others[(y, x)];
                }
            }
            acc
        });
        Ok(HermitianMatrix::symmetrize(&gain))
    }

    /// Gain matrix against a product profile; `profile[i]` itself is ignored.
    pub fn gain_against_profile(&self, i: usize, profile: &[DensityMatrix]) -> Result<HermitianMatrix> {
        self.check_player(i)?;
        self.check_profile(profile)?;
        let others: Vec<DensityMatrix> = self
            .layout
            .others(i)
            .into_iter()
            .map(|j| profile[j].clone())
            .collect();
        let rho_others = DensityMatrix::product(&others).expect("at least two players");
        self.gain_of_matrix(i, rho_others.as_matrix())
    }

    /// Gain matrix against the opponents' marginal `Tr_i ρ` of a joint state.
    pub fn gain_from_joint(&self, i: usize, rho: &ComplexMatrix) -> Result<HermitianMatrix> {
        self.check_player(i)?;
        let others = partial_trace(rho, &self.layout, &self.layout.others(i))?;
        self.gain_of_matrix(i, &others)
    }

    pub(crate) fn check_profile(&self, profile: &[DensityMatrix]) -> Result<()> {
        if profile.len() != self.players() {
            return Err(Error::DimensionMismatch {
                context: "strategy profile",
                expected: self.players(),
                found: profile.len(),
            });
        }
        for (j, rho) in profile.iter().enumerate() {
            if rho.dim() != self.layout.dim(j) {
                return Err(Error::DimensionMismatch {
                    context: "player strategy",
                    expected: self.layout.dim(j),
                    found: rho.dim(),
                });
            }
        }
        Ok(())
    }

    /// Choi matrix of `Θ_i`, i.e. `R_i` with register `i` moved to the front.
    pub fn choi_of_player(&self, i: usize) -> Result<ChoiMatrix> {
        self.check_player(i)?;
        ChoiMatrix::new(
            self.layout.dim(i),
            self.layout.complement_dim(i),
            HermitianMatrix::symmetrize(&self.front[i]),
        )
    }
}

/// Two-player zero-sum game with Alice's tensor `r`; Bob's is `−r`.
///
/// Alice's payoff here is `⟨ρ, Θ(σ)⟩ = Tr(R (ρ ⊗ σᵀ))`: Bob's strategy `σ`
/// enters transposed. The equivalent [`QuantumGame`] is evaluated on the
/// register state `σᵀ`, so [`TwoPlayerZeroSum::strategy_from_register`] is
/// the one place that converts between the two conventions.
#[derive(Clone, Debug)]
pub struct TwoPlayerZeroSum {
    choi: ChoiMatrix,
}

impl TwoPlayerZeroSum {
    pub fn new(r: HermitianMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        Ok(Self {
            choi: ChoiMatrix::new(dim_a, dim_b, r)?,
        })
    }

    /// Reads Alice's tensor out of a two-player zero-sum [`QuantumGame`].
    pub fn from_game(game: &QuantumGame) -> Result<Self> {
        if game.players() != 2 || !game.is_zero_sum() {
            return Err(Error::InvalidArgument("expected a two-player zero-sum game".into()));
        }
        Self::new(game.tensor(0).clone(), game.layout().dim(0), game.layout().dim(1))
    }

    pub fn r(&self) -> &HermitianMatrix {
        self.choi.matrix()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.choi.out_dim(), self.choi.in_dim())
    }

    pub fn channel(&self) -> &ChoiMatrix {
        &self.choi
    }

    pub fn to_game(&self) -> Result<QuantumGame> {
        let (a, b) = self.dims();
        zero_sum_game(self.r().clone(), a, b)
    }

    /// Bob's strategy in this convention from the state of his register.
    pub fn strategy_from_register(register_state: &DensityMatrix) -> DensityMatrix {
        register_state.transpose()
    }

    /// `u_A(ρ, σ) = ⟨ρ, Θ(σ)⟩`.
    pub fn payoff(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        let theta_sigma = self.choi.apply_hermitian(sigma.as_hermitian())?;
        rho.as_hermitian().inner(&theta_sigma)
    }
}

/// Two-player game with `R_1 = r`, `R_2 = −r`.
pub fn zero_sum_game(r: HermitianMatrix, dim_a: usize, dim_b: usize) -> Result<QuantumGame> {
    let layout = RegisterLayout::new(vec![dim_a, dim_b])?;
    let neg = r.scale(-1.0);
    QuantumGame::new_zero_sum(layout, vec![r, neg])
}

/// Diagonal embedding of a normal-form game: `R_i = Σ_s u_i(s) |s⟩⟨s|`.
///
/// `payoffs[i]` lists player `i`'s payoff for every pure profile, row-major
/// over `action_counts` (player 0 most significant).
pub fn classical_embed(action_counts: &[usize], payoffs: &[Vec<f64>]) -> Result<QuantumGame> {
    let layout = RegisterLayout::new(action_counts.to_vec())?;
    if payoffs.len() != layout.len() {
        return Err(Error::DimensionMismatch {
            context: "classical payoff tables",
            expected: layout.len(),
            found: payoffs.len(),
        });
    }
    let tensors = payoffs
        .iter()
        .map(|table| {
            if table.len() != layout.joint_dim() {
                return Err(Error::DimensionMismatch {
                    context: "classical payoff table",
                    expected: layout.joint_dim(),
                    found: table.len(),
                });
            }
            if table.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument("payoffs must be finite".into()));
            }
            Ok(HermitianMatrix::from_real_diagonal(table))
        })
        .collect::<Result<Vec<_>>>()?;
    let residual: f64 = (0..layout.joint_dim())
        .map(|s| payoffs.iter().map(|t| t[s]).sum::<f64>().abs())
        .fold(0.0, f64::max);
    if residual <= tol::ALGEBRAIC && layout.len() >= 2 {
        QuantumGame::new_zero_sum(layout, tensors)
    } else {
        QuantumGame::new(layout, tensors)
    }
}

/// Real payoff matrices `a` (row player) and `b` (column player), row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalBimatrix {
    rows: usize,
    cols: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl ClassicalBimatrix {
    pub fn new(rows: usize, cols: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || a.len() != rows * cols || b.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "bimatrix payoffs",
                expected: rows * cols,
                found: a.len().min(b.len()),
            });
        }
        if a.iter().chain(&b).any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("payoffs must be finite".into()));
        }
        Ok(Self { rows, cols, a, b })
    }

    /// Both players receive `a`.
    pub fn common_payoff(rows: usize, cols: usize, a: Vec<f64>) -> Result<Self> {
        Self::new(rows, cols, a.clone(), a)
    }

    /// `a = [[1, -1], [-1, 1]]`, `b = -a`.
    pub fn matching_pennies() -> Self {
        Self::new(2, 2, vec![1.0, -1.0, -1.0, 1.0], vec![-1.0, 1.0, 1.0, -1.0]).expect("static payoffs")
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Quantum game with payoffs on the computational product basis.
    pub fn to_quantum_game(&self) -> Result<QuantumGame> {
        classical_embed(&[self.rows, self.cols], &[self.a.clone(), self.b.clone()])
    }
}

/// Bell basis of `C² ⊗ C²` in the order `e00 = φ+`, `e01 = φ−`, `e10 = ψ+`, `e11 = ψ−`.
pub fn bell_basis() -> [[C64; 4]; 4] {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let p = C64::new(s, 0.0);
    let m = C64::new(-s, 0.0);
    let z = C64::new(0.0, 0.0);
    [[p, z, z, p], [p, z, z, m], [z, p, p, z], [z, p, m, z]]
}

/// The max-ent game of a 2×2 bimatrix game: `R_1 = Σ a_pq |e_pq⟩⟨e_pq|`,
/// `R_2 = Σ b_pq |e_pq⟩⟨e_pq|` over the Bell basis.
pub fn maxent_game(bm: &ClassicalBimatrix) -> Result<QuantumGame> {
    if bm.shape() != (2, 2) {
        return Err(Error::InvalidArgument(
            "max-ent games are defined for 2x2 payoff matrices".into(),
        ));
    }
    let basis = bell_basis();
    let tensor = |payoff: &[f64]| {
        let mut acc = ComplexMatrix::zeros(4, 4);
        for (k, e) in basis.iter().enumerate() {
            acc = &acc + &ComplexMatrix::outer(e, e).scale(payoff[k]);
        }
        HermitianMatrix::symmetrize(&acc)
    };
    let layout = RegisterLayout::new(vec![2, 2])?;
    let tensors = vec![tensor(bm.a()), tensor(bm.b())];
    let residual = bm.a().iter().zip(bm.b()).map(|(x, y)| (x + y).abs()).fold(0.0, f64::max);
    if residual <= tol::ALGEBRAIC {
        QuantumGame::new_zero_sum(layout, tensors)
    } else {
        QuantumGame::new(layout, tensors)
    }
}

/// `|e_pq⟩⟨e_pq|` with `index = 2p + q`.
pub fn bell_state(index: usize) -> DensityMatrix {
    DensityMatrix::pure(&bell_basis()[index]).expect("Bell vectors are unit vectors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, paulis};
    use crate::sampling::{random_density, random_hermitian, rng_from_seed};

    #[test]
    fn matching_pennies_pure_profile() {
        let g = ClassicalBimatrix::matching_pennies().to_quantum_game().unwrap();
        assert!(g.is_zero_sum());
        let rho = DensityMatrix::basis(4, 0);
        assert_eq!(g.utility(&rho, 0).unwrap(), 1.0);
        let uniform = DensityMatrix::maximally_mixed(4);
        assert!(g.utility(&uniform, 0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn classical_embed_ignores_coherences() {
        let mut rng = rng_from_seed(1);
        let g = classical_embed(&[2, 3], &[vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0], vec![0.5; 6]]).unwrap();
        let rho = random_density(6, &mut rng);
        let diag: Vec<f64> = (0..6).map(|k| rho.as_matrix()[(k, k)].re).collect();
        let dephased = DensityMatrix::from_diagonal(&diag).unwrap();
        for i in 0..2 {
            let a = g.utility(&rho, i).unwrap();
            let b = g.utility(&dephased, i).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
        // Pure profile (1, 2) has flat index 5.
        assert_eq!(g.utility(&DensityMatrix::basis(6, 5), 0).unwrap(), 6.0);
    }

    #[test]
    fn maxent_game_spectrum_and_bell_payoffs() {
        let a = vec![0.3, -1.0, 2.0, 0.7];
        let bm = ClassicalBimatrix::new(2, 2, a.clone(), vec![1.0; 4]).unwrap();
        let g = maxent_game(&bm).unwrap();
        for (k, &payoff) in a.iter().enumerate() {
            assert!((g.utility(&bell_state(k), 0).unwrap() - payoff).abs() < 1e-14);
        }
        // b ≡ 1 resolves the identity.
        assert!(g.tensor(1).as_matrix().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        let mut spectrum = g.tensor(0).eigenvalues();
        let mut sorted = a.clone();
        sorted.sort_by(|x, y| y.total_cmp(x));
        spectrum.sort_by(|x, y| y.total_cmp(x));
        for (s, e) in spectrum.iter().zip(&sorted) {
            assert!((s - e).abs() < 1e-12);
        }
    }

    #[test]
    fn maxent_requires_two_by_two() {
        let bm = ClassicalBimatrix::common_payoff(2, 3, vec![0.0; 6]).unwrap();
        assert!(maxent_game(&bm).is_err());
    }

    #[test]
    fn maxent_basis_differs_from_computational_embedding() {
        let bm = ClassicalBimatrix::matching_pennies();
        let ent = maxent_game(&bm).unwrap();
        let cls = bm.to_quantum_game().unwrap();
        assert!(ent.tensor(0).as_matrix().max_abs_diff(cls.tensor(0).as_matrix()) > 0.1);
    }

    #[test]
    fn gain_of_product_observable() {
        let mut rng = rng_from_seed(8);
        let a = random_hermitian(2, &mut rng);
        let m = random_hermitian(3, &mut rng);
        let layout = RegisterLayout::new(vec![2, 3]).unwrap();
        let r = a.kron(&m);
        let g = QuantumGame::new(layout, vec![r.clone(), r]).unwrap();
        let sigma = random_density(3, &mut rng);
        let gain = g.gain_matrix(0, &sigma).unwrap();
        let scalar = m.inner(sigma.as_hermitian()).unwrap();
        assert!(gain.as_matrix().max_abs_diff(&a.as_matrix().scale(scalar)) < 1e-14);
    }

    #[test]
    fn gain_matches_choi_application_to_transpose() {
        let mut rng = rng_from_seed(21);
        let g = random_game(&[2, 3, 2], 4, RandomKind::General).unwrap();
        for i in 0..3 {
            let rest = g.layout().complement_dim(i);
            let others = random_density(rest, &mut rng);
            let gain = g.gain_matrix(i, &others).unwrap();
            let via_choi = g.choi_of_player(i).unwrap().apply(&others.as_matrix().transpose()).unwrap();
            assert!(gain.as_matrix().max_abs_diff(&via_choi) < 1e-13);
        }
    }

    #[test]
    fn zero_sum_construction() {
        let mut rng = rng_from_seed(2);
        let r = random_hermitian(4, &mut rng);
        let g = zero_sum_game(r, 2, 2).unwrap();
        assert!(g.is_zero_sum());
        assert_eq!(g.zero_sum_residual(), 0.0);
        for _ in 0..20 {
            let rho = random_density(4, &mut rng);
            let s = g.utility(&rho, 0).unwrap() + g.utility(&rho, 1).unwrap();
            assert!(s.abs() < 1e-14);
        }
    }

    #[test]
    fn two_player_convention_adapter() {
        let mut rng = rng_from_seed(4);
        let r = random_hermitian(4, &mut rng);
        let zs = TwoPlayerZeroSum::new(r.clone(), 2, 2).unwrap();
        let g = zs.to_game().unwrap();
        let rho = random_density(2, &mut rng);
        let bob_register = random_density(2, &mut rng);
        let sigma = TwoPlayerZeroSum::strategy_from_register(&bob_register);
        let joint = DensityMatrix::from_matrix(kron(rho.as_matrix(), bob_register.as_matrix())).unwrap();
        let lhs = zs.payoff(&rho, &sigma).unwrap();
        let rhs = g.utility(&joint, 0).unwrap();
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn rejects_mismatched_tensors() {
        let layout = RegisterLayout::new(vec![2, 2]).unwrap();
        assert!(QuantumGame::new(layout.clone(), vec![HermitianMatrix::identity(4)]).is_err());
        assert!(QuantumGame::new(layout.clone(), vec![HermitianMatrix::identity(3); 2]).is_err());
        let z = HermitianMatrix::new(paulis::z().kron(&paulis::z())).unwrap();
        assert!(QuantumGame::new_zero_sum(layout, vec![z.clone(), z]).is_err());
    }
}

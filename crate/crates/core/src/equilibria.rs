//! Exploitability, best responses and equilibrium certificates.
//!
//! Deviation gaps are kept signed; a negative gap means the player strictly
//! loses by deviating. Only verdicts compare against a tolerance.

use alloc::string::ToString;
use alloc::vec::Vec;

use rand::Rng;

use crate::channels::{lift_channel, ChoiMatrix};
use crate::error::{Error, Result};
use crate::games::{maxent_game, ClassicalBimatrix, QuantumGame, TwoPlayerZeroSum};
use crate::linalg::{
    check_distribution, partial_trace, partial_transpose, ComplexMatrix, DensityMatrix, HermitianMatrix,
    RegisterLayout,
};
use crate::sampling::{haar_vector, rng_from_seed};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    Qne,
    Qcce,
    QPhiE,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::Qne => "qne",
            CertificateKind::Qcce => "qcce",
            CertificateKind::QPhiE => "qphie",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumReport {
    pub kind: CertificateKind,
    /// Signed per-player deviation gains.
    pub gaps: Vec<f64>,
    pub max_gap: f64,
    pub tolerance: f64,
    /// For QNE checks on a joint state: `‖ρ − ⊗_i Tr_{-i} ρ‖_max`.
    pub product_residual: Option<f64>,
    pub verdict: bool,
}

impl EquilibriumReport {
    fn new(kind: CertificateKind, gaps: Vec<f64>, tolerance: f64, product_residual: Option<f64>) -> Self {
        let max_gap = gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let verdict = max_gap <= tolerance && product_residual.map_or(true, |r| r <= tolerance);
        Self {
            kind,
            gaps,
            max_gap,
            tolerance,
            product_residual,
            verdict,
        }
    }
}

/// Value bracket for a strategy pair of a two-player zero-sum game.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValueCertificate {
    /// `λ_min(Θ†(ρ))`: what Alice's `ρ` guarantees against any `σ`.
    pub lower: f64,
    /// `⟨ρ, Θ(σ)⟩`.
    pub value_at: f64,
    /// `λ_max(Θ(σ))`: the most Alice can get against Bob's `σ`.
    pub upper: f64,
}

impl ValueCertificate {
    /// Sum of both players' exploitabilities; `(ρ, σ)` is an ε-QNE when this is `≤ 2ε`.
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn alice_exploitability(&self) -> f64 {
        self.upper - self.value_at
    }

    pub fn bob_exploitability(&self) -> f64 {
        self.value_at - self.lower
    }

    pub fn satisfies_weak_duality(&self, tol: f64) -> bool {
        self.lower <= self.value_at + tol && self.value_at <= self.upper + tol
    }
}

/// Signed deviation gain `λ_max(Θ_i((Tr_i ρ)ᵀ)) − u_i(ρ)` of player `i`.
pub fn deviation_gap(g: &QuantumGame, i: usize, rho: &ComplexMatrix) -> Result<f64> {
    let gain = g.gain_from_joint(i, rho)?;
    Ok(gain.lambda_max() - g.utility_of_matrix(rho, i)?)
}

/// Largest gain player `i` can get by swapping their register for any state,
/// clamped at zero.
pub fn exploitability(g: &QuantumGame, i: usize, rho: &DensityMatrix) -> Result<f64> {
    Ok(deviation_gap(g, i, rho.as_matrix())?.max(0.0))
}

/// Signed QCCE gaps of a joint state (which may be a time average carrying
/// rounding error, hence the plain matrix).
pub fn qcce_gaps(g: &QuantumGame, rho: &ComplexMatrix) -> Result<Vec<f64>> {
    (0..g.players()).map(|i| deviation_gap(g, i, rho)).collect()
}

/// Signed Nash gaps `λ_max(gain_i) − ⟨ρ_i, gain_i⟩` of a product profile.
pub fn qne_gaps(g: &QuantumGame, profile: &[DensityMatrix]) -> Result<Vec<f64>> {
    g.check_profile(profile)?;
    (0..g.players())
        .map(|i| {
            let gain = g.gain_against_profile(i, profile)?;
            Ok(gain.lambda_max() - profile[i].as_hermitian().inner(&gain)?)
        })
        .collect()
}

pub fn is_qcce(g: &QuantumGame, rho: &DensityMatrix, tolerance: f64) -> Result<EquilibriumReport> {
    let gaps = qcce_gaps(g, rho.as_matrix())?;
    Ok(EquilibriumReport::new(CertificateKind::Qcce, gaps, tolerance, None))
}

pub fn is_qne(g: &QuantumGame, profile: &[DensityMatrix], tolerance: f64) -> Result<EquilibriumReport> {
    let gaps = qne_gaps(g, profile)?;
    Ok(EquilibriumReport::new(CertificateKind::Qne, gaps, tolerance, None))
}

/// QNE check on a joint state: it must be a product of its marginals and
/// no player may gain by deviating.
pub fn is_qne_joint(g: &QuantumGame, rho: &DensityMatrix, tolerance: f64) -> Result<EquilibriumReport> {
    let product = marginalize(rho, g.layout())?;
    let residual = rho.as_matrix().max_abs_diff(product.as_matrix());
    let gaps = qcce_gaps(g, rho.as_matrix())?;
    Ok(EquilibriumReport::new(CertificateKind::Qne, gaps, tolerance, Some(residual)))
}

/// Projector onto the top eigenvector of `gain` (lowest index among ties).
pub fn best_response_to_gain(gain: &HermitianMatrix) -> DensityMatrix {
    let eig = gain.eig();
    DensityMatrix::pure(&eig.vector(0)).expect("eigenvectors are unit vectors")
}

pub fn best_response(g: &QuantumGame, i: usize, rho_others: &DensityMatrix) -> Result<DensityMatrix> {
    Ok(best_response_to_gain(&g.gain_matrix(i, rho_others)?))
}

/// `max_φ u_i((φ ⊗ id)(ρ)) − u_i(ρ)` over each player's supplied deviations.
pub fn phi_gap(
    g: &QuantumGame,
    rho: &DensityMatrix,
    deviations: &[Vec<ChoiMatrix>],
    tolerance: f64,
) -> Result<EquilibriumReport> {
    if deviations.len() != g.players() {
        return Err(Error::DimensionMismatch {
            context: "deviation sets",
            expected: g.players(),
            found: deviations.len(),
        });
    }
    let mut gaps = Vec::with_capacity(g.players());
    for (i, set) in deviations.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::InvalidArgument("empty deviation set".to_string()));
        }
        let base = g.utility(rho, i)?;
        let mut best = f64::NEG_INFINITY;
        for phi in set {
            let lifted = lift_channel(phi, g.layout(), i)?;
            let moved = lifted.apply(rho.as_matrix())?;
            best = best.max(g.utility_of_matrix(&moved, i)? - base);
        }
        gaps.push(best);
    }
    Ok(EquilibriumReport::new(CertificateKind::QPhiE, gaps, tolerance, None))
}

/// `ρ` is Alice's strategy and `σ` Bob's, both in the zero-sum convention
/// (see [`TwoPlayerZeroSum`]).
pub fn zs_certificate(zs: &TwoPlayerZeroSum, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<ValueCertificate> {
    let theta = zs.channel();
    let adj = theta.apply_adjoint_hermitian(rho.as_hermitian())?;
    let fwd = theta.apply_hermitian(sigma.as_hermitian())?;
    Ok(ValueCertificate {
        lower: adj.lambda_min(),
        value_at: rho.as_hermitian().inner(&fwd)?,
        upper: fwd.lambda_max(),
    })
}

/// Single-register marginals `Tr_{-i} ρ`.
pub fn marginals(rho: &ComplexMatrix, layout: &RegisterLayout) -> Result<Vec<DensityMatrix>> {
    (0..layout.len())
        .map(|i| {
            let m = partial_trace(rho, layout, &[i])?;
            DensityMatrix::with_tolerance(HermitianMatrix::symmetrize(&m), tol::LEARNED)
        })
        .collect()
}

/// `⊗_i Tr_{-i} ρ`.
pub fn marginalize(rho: &DensityMatrix, layout: &RegisterLayout) -> Result<DensityMatrix> {
    let parts = marginals(rho.as_matrix(), layout)?;
    Ok(DensityMatrix::product(&parts).expect("layouts are nonempty"))
}

/// `Σ_pq a_pq λ_pq − ¼ Σ_pq a_pq` for both players; the Bell mixture with
/// weights `λ` is a QCCE of the max-ent game iff both are nonnegative.
pub fn maxent_qcce_slack(bm: &ClassicalBimatrix, lambda: &[f64]) -> Result<[f64; 2]> {
    if bm.shape() != (2, 2) {
        return Err(Error::InvalidArgument("max-ent games are defined for 2x2 payoff matrices".to_string()));
    }
    if lambda.len() != 4 {
        return Err(Error::DimensionMismatch {
            context: "Bell weights",
            expected: 4,
            found: lambda.len(),
        });
    }
    check_distribution(lambda)?;
    let slack = |payoff: &[f64]| {
        let weighted: f64 = payoff.iter().zip(lambda).map(|(x, l)| x * l).sum();
        let mean = payoff.iter().sum::<f64>() / 4.0;
        weighted - mean
    };
    Ok([slack(bm.a()), slack(bm.b())])
}

pub fn maxent_qcce_condition(bm: &ClassicalBimatrix, lambda: &[f64], tolerance: f64) -> Result<bool> {
    Ok(maxent_qcce_slack(bm, lambda)?.iter().all(|&s| s >= -tolerance))
}

/// The max-ent game together with the Bell mixture `Σ λ_pq |e_pq⟩⟨e_pq|`.
pub fn maxent_mixture(bm: &ClassicalBimatrix, lambda: &[f64]) -> Result<(QuantumGame, DensityMatrix)> {
    check_distribution(lambda)?;
    let game = maxent_game(bm)?;
    let states: Vec<DensityMatrix> = (0..4).map(crate::games::bell_state).collect();
    Ok((game, DensityMatrix::mixture(lambda, &states)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entanglement {
    Entangled,
    /// PPT: separable for 2⊗2 and 2⊗3, otherwise undecided.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PptReport {
    pub verdict: Entanglement,
    pub min_eigenvalue: f64,
}

/// Peres–Horodecki test: partially transposes `registers` and looks for a
/// negative eigenvalue below `−1e−9`.
pub fn ppt_witness(rho: &DensityMatrix, layout: &RegisterLayout, registers: &[usize]) -> Result<PptReport> {
    let pt = partial_transpose(rho.as_matrix(), layout, registers)?;
    let min_eigenvalue = HermitianMatrix::symmetrize(&pt).lambda_min();
    let verdict = if min_eigenvalue < -tol::ALGEBRAIC {
        Entanglement::Entangled
    } else {
        Entanglement::Inconclusive
    };
    Ok(PptReport { verdict, min_eigenvalue })
}

/// Best gain over `n_samples` Haar-random pure deviations of player `i`;
/// a lower bound on [`deviation_gap`] that is nondecreasing in `n_samples`.
pub fn brute_force_gap(g: &QuantumGame, i: usize, rho: &DensityMatrix, n_samples: usize, seed: u64) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be at least 1".to_string()));
    }
    let gain = g.gain_from_joint(i, rho.as_matrix())?;
    let base = g.utility(rho, i)?;
    let mut rng = rng_from_seed(seed);
    Ok(sampled_max(&gain, n_samples, &mut rng) - base)
}

fn sampled_max(gain: &HermitianMatrix, n: usize, rng: &mut impl Rng) -> f64 {
    let d = gain.dim();
    let mut best = f64::NEG_INFINITY;
    for _ in 0..n {
        let psi = haar_vector(d, rng);
        let g_psi = gain.as_matrix().matvec(&psi);
        let value: f64 = psi.iter().zip(&g_psi).map(|(a, b)| (a.conj() * b).re).sum();
        best = best.max(value);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::games::{bell_state, random_game, RandomKind};
    use crate::linalg::{kron, C64};
    use crate::sampling::{random_density, random_hermitian, random_unitary};

    /// `R_i = H_i ⊗ I`: each player only cares about their own register, so
    /// the top eigenprojectors form a QNE.
    fn dominant_strategy_game(seed: u64) -> (QuantumGame, Vec<DensityMatrix>) {
        let mut rng = rng_from_seed(seed);
        let layout = RegisterLayout::new(vec![2, 3]).unwrap();
        let h0 = random_hermitian(2, &mut rng);
        let h1 = random_hermitian(3, &mut rng);
        let r0 = HermitianMatrix::symmetrize(&kron(h0.as_matrix(), &ComplexMatrix::identity(3)));
        let r1 = HermitianMatrix::symmetrize(&kron(&ComplexMatrix::identity(2), h1.as_matrix()));
        let profile = vec![best_response_to_gain(&h0), best_response_to_gain(&h1)];
        (QuantumGame::new(layout, vec![r0, r1]).unwrap(), profile)
    }

    #[test]
    fn matching_pennies_uniform_is_unexploitable() {
        let g = ClassicalBimatrix::matching_pennies().to_quantum_game().unwrap();
        let rho = DensityMatrix::maximally_mixed(4);
        for i in 0..2 {
            assert!(exploitability(&g, i, &rho).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn maxent_bell_at_maximum_entry_is_clamped() {
        let a = vec![0.2, 0.9, -0.4, 0.1];
        let bm = ClassicalBimatrix::common_payoff(2, 2, a.clone()).unwrap();
        let g = maxent_game(&bm).unwrap();
        let rho = bell_state(1);
        let signed = deviation_gap(&g, 0, rho.as_matrix()).unwrap();
        let mean = a.iter().sum::<f64>() / 4.0;
        assert!((signed - (mean - 0.9)).abs() < 1e-12);
        assert_eq!(exploitability(&g, 0, &rho).unwrap(), 0.0);
    }

    #[test]
    fn best_response_examples() {
        let layout = RegisterLayout::new(vec![2, 2]).unwrap();
        let r = HermitianMatrix::from_real_diagonal(&[0.2, 0.2, 0.8, 0.8]);
        let g = QuantumGame::new(layout, vec![r.clone(), r]).unwrap();
        let br = best_response(&g, 0, &DensityMatrix::maximally_mixed(2)).unwrap();
        assert!(br.as_matrix().max_abs_diff(DensityMatrix::basis(2, 1).as_matrix()) < 1e-15);
        let gain = g.gain_matrix(0, &DensityMatrix::maximally_mixed(2)).unwrap();
        assert!((br.as_hermitian().inner(&gain).unwrap() - 0.8).abs() < 1e-12);

        let tie = best_response_to_gain(&HermitianMatrix::identity(3));
        assert_eq!(tie.as_matrix(), DensityMatrix::basis(3, 0).as_matrix());
    }

    #[test]
    fn best_response_dominates_sampled_pure_states() {
        let g = random_game(&[2, 2], 31, RandomKind::General).unwrap();
        let mut rng = rng_from_seed(32);
        let others = random_density(2, &mut rng);
        let gain = g.gain_matrix(0, &others).unwrap();
        let br = best_response(&g, 0, &others).unwrap();
        let value = br.as_hermitian().inner(&gain).unwrap();
        assert!((value - gain.lambda_max()).abs() < 1e-9);
        assert!(sampled_max(&gain, 10_000, &mut rng) <= value + 1e-9);
    }

    #[test]
    fn maximally_mixed_is_boundary_qcce_of_maxent_game() {
        let bm = ClassicalBimatrix::new(2, 2, vec![0.3, -1.0, 2.0, 0.7], vec![1.0, 0.5, -0.2, 0.0]).unwrap();
        let g = maxent_game(&bm).unwrap();
        let report = is_qcce(&g, &DensityMatrix::maximally_mixed(4), 1e-9).unwrap();
        assert!(report.verdict);
        for gap in report.gaps {
            assert!(gap.abs() <= 1e-9);
        }
    }

    #[test]
    fn qne_implies_qcce() {
        let (g, profile) = dominant_strategy_game(40);
        let qne = is_qne(&g, &profile, 1e-9).unwrap();
        assert!(qne.verdict);
        let joint = DensityMatrix::product(&profile).unwrap();
        assert!(is_qne_joint(&g, &joint, 1e-9).unwrap().verdict);
        assert!(is_qcce(&g, &joint, 1e-9).unwrap().verdict);
    }

    #[test]
    fn qne_joint_rejects_entangled_states() {
        let bm = ClassicalBimatrix::common_payoff(2, 2, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let g = maxent_game(&bm).unwrap();
        let report = is_qne_joint(&g, &bell_state(0), 1e-8).unwrap();
        assert!(report.max_gap <= 1e-8);
        assert!(!report.verdict);
        assert!(report.product_residual.unwrap() > 0.1);
    }

    #[test]
    fn phi_gap_examples() {
        let g = random_game(&[2, 2], 50, RandomKind::General).unwrap();
        let mut rng = rng_from_seed(51);
        let rho = random_density(4, &mut rng);
        let identity = vec![vec![ChoiMatrix::identity(2)]; 2];
        let report = phi_gap(&g, &rho, &identity, 1e-9).unwrap();
        for gap in &report.gaps {
            assert!(gap.abs() < 1e-12);
        }

        let qcce = qcce_gaps(&g, rho.as_matrix()).unwrap();
        let replacements: Vec<Vec<ChoiMatrix>> = (0..2)
            .map(|i| {
                let br = best_response_to_gain(&g.gain_from_joint(i, rho.as_matrix()).unwrap());
                vec![ChoiMatrix::replacement(&br, 2)]
            })
            .collect();
        let report = phi_gap(&g, &rho, &replacements, 1e-9).unwrap();
        for (a, b) in report.gaps.iter().zip(&qcce) {
            assert!((a - b).abs() < 1e-9);
        }

        let transpose = vec![vec![ChoiMatrix::transpose_map(2)], vec![ChoiMatrix::identity(2)]];
        assert!(phi_gap(&g, &rho, &transpose, 1e-9).is_err());
    }

    #[test]
    fn unitary_deviations_do_not_help_at_a_qne() {
        let (g, profile) = dominant_strategy_game(60);
        let rho = DensityMatrix::product(&profile).unwrap();
        let mut rng = rng_from_seed(61);
        let deviations: Vec<Vec<ChoiMatrix>> = [2, 3]
            .iter()
            .map(|&d| {
                (0..20)
                    .map(|_| ChoiMatrix::unitary(&random_unitary(d, &mut rng)).unwrap())
                    .collect()
            })
            .collect();
        let report = phi_gap(&g, &rho, &deviations, 1e-8).unwrap();
        assert!(report.verdict);
    }

    #[test]
    fn zs_certificate_matching_pennies() {
        let zs = TwoPlayerZeroSum::from_game(&ClassicalBimatrix::matching_pennies().to_quantum_game().unwrap()).unwrap();
        let half = DensityMatrix::maximally_mixed(2);
        let cert = zs_certificate(&zs, &half, &half).unwrap();
        assert!(cert.lower.abs() < 1e-15 && cert.upper.abs() < 1e-15 && cert.value_at.abs() < 1e-15);
    }

    #[test]
    fn zs_certificate_weak_duality_and_exploitabilities() {
        let g = random_game(&[2, 2], 70, RandomKind::ZeroSum).unwrap();
        let zs = TwoPlayerZeroSum::from_game(&g).unwrap();
        let mut rng = rng_from_seed(71);
        for _ in 0..50 {
            let rho = random_density(2, &mut rng);
            let bob_register = random_density(2, &mut rng);
            let sigma = TwoPlayerZeroSum::strategy_from_register(&bob_register);
            let cert = zs_certificate(&zs, &rho, &sigma).unwrap();
            assert!(cert.satisfies_weak_duality(1e-9));
            // Same exploitabilities as the general-game formulas on the register state.
            let profile = vec![rho.clone(), bob_register];
            let gaps = qne_gaps(&g, &profile).unwrap();
            assert!((gaps[0] - cert.alice_exploitability()).abs() < 1e-12);
            assert!((gaps[1] - cert.bob_exploitability()).abs() < 1e-12);
        }
    }

    #[test]
    fn marginalize_examples() {
        let layout = RegisterLayout::new(vec![2, 2]).unwrap();
        let mut rng = rng_from_seed(80);
        let a = random_density(2, &mut rng);
        let b = random_density(2, &mut rng);
        let prod = a.kron(&b);
        let m = marginalize(&prod, &layout).unwrap();
        assert!(m.as_matrix().max_abs_diff(prod.as_matrix()) < 1e-10);

        let bell = marginalize(&bell_state(0), &layout).unwrap();
        assert!(bell.as_matrix().max_abs_diff(DensityMatrix::maximally_mixed(4).as_matrix()) < 1e-15);

        let rho = random_density(4, &mut rng);
        let tr = marginalize(&rho, &layout).unwrap().as_matrix().trace();
        assert!((tr - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn maxent_condition_examples() {
        let bm = ClassicalBimatrix::common_payoff(2, 2, vec![0.5, -0.3, 1.2, 0.1]).unwrap();
        let slack = maxent_qcce_slack(&bm, &[0.25; 4]).unwrap();
        assert!(slack.iter().all(|s| s.abs() < 1e-15));
        assert!(maxent_qcce_condition(&bm, &[0.0, 0.0, 1.0, 0.0], 1e-8).unwrap());
        assert!(!maxent_qcce_condition(&bm, &[0.0, 1.0, 0.0, 0.0], 1e-8).unwrap());
        assert!(maxent_qcce_condition(&bm, &[0.5, 0.6, 0.0, -0.1], 1e-8).is_err());
    }

    #[test]
    fn maxent_condition_agrees_with_spectrahedral_test() {
        let bm = ClassicalBimatrix::new(2, 2, vec![0.5, -0.3, 1.2, 0.1], vec![-1.0, 0.4, 0.0, 0.9]).unwrap();
        for lambda in [[0.25; 4], [0.1, 0.2, 0.6, 0.1], [0.7, 0.1, 0.1, 0.1], [0.0, 0.0, 0.0, 1.0]] {
            let (g, rho) = maxent_mixture(&bm, &lambda).unwrap();
            let scalar = maxent_qcce_condition(&bm, &lambda, 1e-8).unwrap();
            assert_eq!(scalar, is_qcce(&g, &rho, 1e-8).unwrap().verdict);
        }
    }

    #[test]
    fn ppt_examples() {
        let layout = RegisterLayout::new(vec![2, 2]).unwrap();
        let bell = ppt_witness(&bell_state(0), &layout, &[1]).unwrap();
        assert_eq!(bell.verdict, Entanglement::Entangled);
        assert!((bell.min_eigenvalue + 0.5).abs() < 1e-9);
        let mut rng = rng_from_seed(90);
        let prod = random_density(2, &mut rng).kron(&random_density(2, &mut rng));
        assert_eq!(ppt_witness(&prod, &layout, &[1]).unwrap().verdict, Entanglement::Inconclusive);
        let mixed = DensityMatrix::maximally_mixed(4);
        assert_eq!(ppt_witness(&mixed, &layout, &[1]).unwrap().verdict, Entanglement::Inconclusive);
    }

    #[test]
    fn brute_force_examples() {
        let g = random_game(&[2, 2], 100, RandomKind::General).unwrap();
        let mut rng = rng_from_seed(101);
        let rho = random_density(4, &mut rng);
        let exact = deviation_gap(&g, 0, rho.as_matrix()).unwrap();
        let sampled = brute_force_gap(&g, 0, &rho, 10_000, 5).unwrap();
        assert!(sampled <= exact + 1e-9 && sampled >= exact - 1e-2);

        let mut prev = f64::NEG_INFINITY;
        for n in [1, 10, 100, 1000] {
            let v = brute_force_gap(&g, 0, &rho, n, 5).unwrap();
            assert!(v >= prev);
            prev = v;
        }

        let (g, profile) = dominant_strategy_game(102);
        let rho = DensityMatrix::product(&profile).unwrap();
        assert!(brute_force_gap(&g, 1, &rho, 1000, 3).unwrap() <= 1e-8);
        assert!(brute_force_gap(&g, 1, &rho, 0, 3).is_err());
    }
}

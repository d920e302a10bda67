//! Seeded random states, observables and deviations.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{ComplexMatrix, DensityMatrix, HermitianMatrix, C64};

/// Deterministic generator used throughout the crate.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`, so `E|z|² = 1`.
pub fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    // Box–Muller; `1 - u` keeps the logarithm away from zero.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen::<f64>();
    let r = libm::sqrt(-libm::log(u1));
    C64::new(r * libm::cos(TAU * u2), r * libm::sin(TAU * u2))
}

pub fn gaussian_vector(d: usize, rng: &mut impl Rng) -> Vec<C64> {
    (0..d).map(|_| complex_gaussian(rng)).collect()
}

/// Haar-random unit vector.
pub fn haar_vector(d: usize, rng: &mut impl Rng) -> Vec<C64> {
    let v = gaussian_vector(d, rng);
    let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
    v.into_iter().map(|z| z / norm).collect()
}

pub fn haar_pure_state(d: usize, rng: &mut impl Rng) -> DensityMatrix {
    DensityMatrix::pure(&haar_vector(d, rng)).expect("Gaussian vector is nonzero")
}

/// `G G† / Tr(G G†)` with `G` a complex Ginibre matrix (full rank almost surely).
pub fn random_density(d: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let w = g.matmul(&g.adjoint());
    let tr = w.trace().re;
    DensityMatrix::from_matrix(w.scale(1.0 / tr)).expect("Wishart matrix is a valid density")
}

/// `(G + G†)/2` with `G` complex Ginibre.
pub fn random_hermitian(d: usize, rng: &mut impl Rng) -> HermitianMatrix {
    let g = ComplexMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    HermitianMatrix::symmetrize(&g)
}

/// Random Hermitian rescaled to unit spectral norm.
pub fn random_normalized_hermitian(d: usize, rng: &mut impl Rng) -> HermitianMatrix {
    let h = random_hermitian(d, rng);
    let norm = h.spectral_norm();
    h.scale(1.0 / norm)
}

/// Haar-random unitary via Gram–Schmidt on a Ginibre matrix.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v = gaussian_vector(d, rng);
        for u in &cols {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(d, d, |r, c| cols[c][r])
}

/// Uniform sample from the probability simplex (normalized exponentials).
pub fn random_distribution(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -libm::log(1.0 - rng.gen::<f64>())).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

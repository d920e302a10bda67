use alloc::vec::Vec;

use super::eigen::{jacobi_eigh, Eigen};
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tol;

/// Square complex matrix equal to its conjugate transpose.
///
/// Every constructor symmetrizes `(M + M†)/2`, so the stored matrix is
/// Hermitian to rounding and eigensolvers never see drift.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Accepts `m` if it is Hermitian to within `1e-9` (relative to its
    /// largest entry when that exceeds one).
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        m.ensure_square()?;
        let deviation = m.hermitian_deviation();
        let scale = m.max_abs().max(1.0);
        if !(deviation <= tol::HERMITIAN_INPUT * scale) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::symmetrize(&m))
    }

    /// `(m + m†)/2` without checking how far `m` was from Hermitian.
    pub fn symmetrize(m: &ComplexMatrix) -> Self {
        assert!(m.is_square(), "symmetrize needs a square matrix");
        let n = m.rows();
        let mut out = m.clone();
        for r in 0..n {
            out[(r, r)] = C64::new(m[(r, r)].re, 0.0);
            for c in (r + 1)..n {
                let avg = (m[(r, c)] + m[(c, r)].conj()) * 0.5;
                out[(r, c)] = avg;
                out[(c, r)] = avg.conj();
            }
        }
        Self(out)
    }

    pub fn zeros(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_real_diagonal(diag))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn eig(&self) -> Eigen {
        jacobi_eigh(&self.0)
    }

    /// Descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eig().values
    }

    pub fn lambda_max(&self) -> f64 {
        self.eig().values[0]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.eig().values.last().expect("non-empty spectrum")
    }

    pub fn spectral_norm(&self) -> f64 {
        let values = self.eig().values;
        values[0].abs().max(values[values.len() - 1].abs())
    }

    /// Matrix exponential through the eigendecomposition.
    pub fn exp(&self) -> HermitianMatrix {
        Self::symmetrize(&self.eig().reconstruct_with(libm::exp))
    }

    /// `exp(h - λ_max I) / Tr(...)`, the density matrix proportional to
    /// `exp(h)`. Never overflows: the largest weight is exactly one.
    pub fn exp_density(&self) -> DensityMatrix {
        let eig = self.eig();
        let top = eig.values[0];
        let total: f64 = eig.values.iter().map(|&l| libm::exp(l - top)).sum();
        let m = eig.reconstruct_with(|l| libm::exp(l - top) / total);
        DensityMatrix(Self::symmetrize(&m))
    }

    /// `⟨self, other⟩ = Tr(self† other)`, real for Hermitian arguments.
    pub fn inner(&self, other: &HermitianMatrix) -> Result<f64> {
        Ok(self.0.hs_inner(&other.0)?.re)
    }

    pub fn add(&self, other: &HermitianMatrix) -> HermitianMatrix {
        Self::symmetrize(&(&self.0 + &other.0))
    }

    pub fn sub(&self, other: &HermitianMatrix) -> HermitianMatrix {
        Self::symmetrize(&(&self.0 - &other.0))
    }

    pub fn scale(&self, s: f64) -> HermitianMatrix {
        Self(self.0.scale(s))
    }

    /// `self + s I`.
    pub fn shift(&self, s: f64) -> HermitianMatrix {
        let mut m = self.0.clone();
        for i in 0..m.rows() {
            m[(i, i)] += s;
        }
        Self(m)
    }

    pub fn kron(&self, other: &HermitianMatrix) -> HermitianMatrix {
        Self::symmetrize(&self.0.kron(&other.0))
    }

    pub(crate) fn add_assign(&mut self, other: &HermitianMatrix) {
        self.0.add_assign_scaled(&other.0, 1.0);
    }
}

/// Hermitian, positive semidefinite, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(HermitianMatrix);

impl DensityMatrix {
    /// Validates at the analytic tier: trace within `1e-9` of one and no
    /// eigenvalue below `-1e-9`.
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        Self::with_tolerance(h, tol::ALGEBRAIC)
    }

    /// Same checks at a caller-chosen tolerance (time-averaged states use
    /// [`tol::LEARNED`]).
    pub fn with_tolerance(h: HermitianMatrix, tol: f64) -> Result<Self> {
        let trace = h.as_matrix().trace().re;
        let min_eigenvalue = h.lambda_min();
        if !((trace - 1.0).abs() <= tol && min_eigenvalue >= -tol) {
            return Err(Error::NotDensity {
                trace,
                min_eigenvalue,
            });
        }
        Ok(Self(h))
    }

    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    /// `I / d`.
    pub fn maximally_mixed(d: usize) -> Self {
        Self(HermitianMatrix::identity(d).scale(1.0 / d as f64))
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm_sqr: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.is_empty() || !(norm_sqr > 0.0) || !norm_sqr.is_finite() {
            return Err(Error::InvalidArgument("pure state needs a nonzero finite vector".into()));
        }
        let m = ComplexMatrix::outer(psi, psi).scale(1.0 / norm_sqr);
        Ok(Self(HermitianMatrix::symmetrize(&m)))
    }

    /// Computational basis projector `|k⟩⟨k|`.
    pub fn basis(d: usize, k: usize) -> Self {
        let mut diag = alloc::vec![0.0; d];
        diag[k] = 1.0;
        Self(HermitianMatrix::from_real_diagonal(&diag))
    }

    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_diagonal(probs))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        self.0.as_matrix()
    }

    pub fn into_hermitian(self) -> HermitianMatrix {
        self.0
    }

    pub fn kron(&self, other: &DensityMatrix) -> DensityMatrix {
        Self(self.0.kron(&other.0))
    }

    /// Transpose in the computational basis; still a density matrix.
    pub fn transpose(&self) -> DensityMatrix {
        Self(HermitianMatrix::symmetrize(&self.as_matrix().transpose()))
    }

    /// Tensor product of `factors`, first factor most significant.
    pub fn product(factors: &[DensityMatrix]) -> Option<DensityMatrix> {
        let mut it = factors.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, f| acc.kron(f)))
    }

    /// Convex combination `Σ w_k ρ_k`; weights must form a distribution.
    pub fn mixture(weights: &[f64], states: &[DensityMatrix]) -> Result<DensityMatrix> {
        check_distribution(weights)?;
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::DimensionMismatch {
                context: "mixture weights",
                expected: states.len(),
                found: weights.len(),
            });
        }
        let d = states[0].dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != d {
                return Err(Error::DimensionMismatch {
                    context: "mixture components",
                    expected: d,
                    found: s.dim(),
                });
            }
            acc.add_assign_scaled(s.as_matrix(), *w);
        }
        Ok(Self(HermitianMatrix::symmetrize(&acc)))
    }
}

pub(crate) fn check_distribution(weights: &[f64]) -> Result<()> {
    let total: f64 = weights.iter().sum();
    if weights.is_empty()
        || weights.iter().any(|w| !(*w >= -tol::ALGEBRAIC) || !w.is_finite())
        || (total - 1.0).abs() > tol::ALGEBRAIC
    {
        return Err(Error::InvalidArgument(
            "weights must be nonnegative and sum to one".into(),
        ));
    }
    Ok(())
}

/// Euclidean projection of `v` onto the probability simplex.
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted: Vec<f64> = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - 1.0) / (j + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

/// Nearest density matrix to `h` in Hilbert–Schmidt norm.
pub fn project_to_density(h: &HermitianMatrix) -> DensityMatrix {
    let eig = h.eig();
    let projected = project_to_simplex(&eig.values);
    let mut weights = eig.clone();
    weights.values = projected;
    let m = weights.reconstruct_with(|l| l);
    DensityMatrix(HermitianMatrix::symmetrize(&m))
}

pub fn herm_eig(h: &HermitianMatrix) -> Eigen {
    h.eig()
}

pub fn herm_exp(h: &HermitianMatrix) -> HermitianMatrix {
    h.exp()
}

pub fn lambda_max(h: &HermitianMatrix) -> f64 {
    h.lambda_max()
}

pub fn lambda_min(h: &HermitianMatrix) -> f64 {
    h.lambda_min()
}

/// `⟨a, b⟩ = Tr(a† b)` for Hermitian arguments.
pub fn hs_inner(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    a.inner(b)
}

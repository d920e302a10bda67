//! Superoperators in Choi form.
//!
//! A map `Θ: L(B) → L(A)` is stored as `C_Θ = Σ_ij Θ(E_ij) ⊗ E_ij` on
//! `A ⊗ B`, output register first. Conversely any `R` on `A ⊗ B` defines
//! `Θ_R(X) = Tr_B(R (I_A ⊗ Xᵀ))`, and the two constructions are inverse to
//! each other. The transpose is taken in the computational basis of the
//! stored matrix; there is no basis parameter.
//!
//! Complete positivity is PSD-ness of the Choi matrix, trace preservation is
//! `Tr_A C = I_B` and unitality is `Tr_B C = I_A`. Some texts call a map with
//! `Θ†(I_A) = I_B` "unitary"; that condition is trace preservation, and only
//! [`ChoiMatrix::is_trace_preserving`] and [`ChoiMatrix::is_unital`] are exposed.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{
    partial_trace, permute_registers, to_front, ComplexMatrix, DensityMatrix, HermitianMatrix, RegisterLayout, C64,
};
use crate::tol;

/// How a channel was built.
#[derive(Clone, Debug, PartialEq)]
pub enum ChannelKind {
    General,
    Identity,
    /// `X ↦ Tr(X) ρ'`.
    Replacement(DensityMatrix),
    /// `X ↦ U X U†`.
    Unitary(ComplexMatrix),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    out_dim: usize,
    in_dim: usize,
    matrix: HermitianMatrix,
    kind: ChannelKind,
}

impl ChoiMatrix {
    /// Wraps a Hermitian matrix on `A ⊗ B` (`A` = output) as a Choi matrix.
    pub fn new(out_dim: usize, in_dim: usize, matrix: HermitianMatrix) -> Result<Self> {
        if out_dim == 0 || in_dim == 0 || matrix.dim() != out_dim * in_dim {
            return Err(Error::DimensionMismatch {
                context: "Choi matrix",
                expected: out_dim * in_dim,
                found: matrix.dim(),
            });
        }
        Ok(Self {
            out_dim,
            in_dim,
            matrix,
            kind: ChannelKind::General,
        })
    }

    /// Choi matrix of an arbitrary linear map given by its action on matrix
    /// units. The map must preserve Hermiticity.
    pub fn from_map(out_dim: usize, in_dim: usize, map: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        let n = out_dim * in_dim;
        let mut c = ComplexMatrix::zeros(n, n);
        for i in 0..in_dim {
            for j in 0..in_dim {
                let image = map(&ComplexMatrix::unit(in_dim, i, j));
                if (image.rows(), image.cols()) != (out_dim, out_dim) {
                    return Err(Error::DimensionMismatch {
                        context: "superoperator image",
                        expected: out_dim,
                        found: image.rows(),
                    });
                }
                for a in 0..out_dim {
                    for b in 0..out_dim {
                        c[(a * in_dim + i, b * in_dim + j)] = image[(a, b)];
                    }
                }
            }
        }
        Self::new(out_dim, in_dim, HermitianMatrix::new(c)?)
    }

    /// `Σ_ij E_ij ⊗ E_ij`.
    pub fn identity(dim: usize) -> Self {
        let n = dim * dim;
        let mut c = ComplexMatrix::zeros(n, n);
        for i in 0..dim {
            for j in 0..dim {
                c[(i * dim + i, j * dim + j)] = C64::new(1.0, 0.0);
            }
        }
        Self {
            out_dim: dim,
            in_dim: dim,
            matrix: HermitianMatrix::symmetrize(&c),
            kind: ChannelKind::Identity,
        }
    }

    /// `X ↦ Tr(X) target`, with Choi matrix `target ⊗ I`.
    pub fn replacement(target: &DensityMatrix, in_dim: usize) -> Self {
        let c = target.as_hermitian().kron(&HermitianMatrix::identity(in_dim));
        Self {
            out_dim: target.dim(),
            in_dim,
            matrix: c,
            kind: ChannelKind::Replacement(target.clone()),
        }
    }

    /// `X ↦ U X U†`, assembled column by column from `U E_ij U†`.
    pub fn unitary(u: &ComplexMatrix) -> Result<Self> {
        let d = u.ensure_square()?;
        let gram = u.adjoint().matmul(u);
        let deviation = gram.max_abs_diff(&ComplexMatrix::identity(d));
        if deviation > tol::ALGEBRAIC {
            return Err(Error::InvalidArgument("matrix is not unitary".into()));
        }
        let u_adj = u.adjoint();
        let mut choi = Self::from_map(d, d, |e| u.matmul(e).matmul(&u_adj))?;
        choi.kind = ChannelKind::Unitary(u.clone());
        Ok(choi)
    }

    /// The transpose map `X ↦ Xᵀ`. Positive but not completely positive;
    /// its Choi matrix is SWAP.
    pub fn transpose_map(dim: usize) -> Self {
        Self::from_map(dim, dim, |e| e.transpose()).expect("transpose preserves Hermiticity")
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> &ChannelKind {
        &self.kind
    }

    fn layout(&self) -> RegisterLayout {
        RegisterLayout::new(alloc::vec![self.out_dim.max(2), self.in_dim.max(2)])
            .expect("dims are at least 2")
    }

    /// `Θ(X) = Tr_B(C (I_A ⊗ Xᵀ))`.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if (x.rows(), x.cols()) != (self.in_dim, self.in_dim) {
            return Err(Error::DimensionMismatch {
                context: "superoperator input",
                expected: self.in_dim,
                found: x.rows(),
            });
        }
        // Entrywise: Θ(X)[a,b] = Σ_{r,s} C[(a,r),(b,s)] X[r,s].
        let (da, db) = (self.out_dim, self.in_dim);
        let c = self.matrix.as_matrix();
        Ok(ComplexMatrix::from_fn(da, da, |a, b| {
            let mut acc = C64::new(0.0, 0.0);
            for r in 0..db {
                for s in 0..db {
                    acc += c[(a * db + r, b * db + s)] * x[(r, s)];
                }
            }
            acc
        }))
    }

    /// `Θ(X)` for Hermitian `X`; the result is symmetrized.
    pub fn apply_hermitian(&self, x: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(HermitianMatrix::symmetrize(&self.apply(x.as_matrix())?))
    }

    /// The adjoint map, fixed by `⟨A, Θ(B)⟩ = ⟨Θ†(A), B⟩`.
    ///
    /// Computed as `conj(Tr_A(C (A† ⊗ I_B)))`, which for Hermitian `C` and
    /// `A` equals `[Tr_A(C (A ⊗ I_B))]ᵀ`.
    pub fn apply_adjoint(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if (a.rows(), a.cols()) != (self.out_dim, self.out_dim) {
            return Err(Error::DimensionMismatch {
                context: "adjoint superoperator input",
                expected: self.out_dim,
                found: a.rows(),
            });
        }
        // Θ†(A)[r,s] = Σ_{a,b} conj(C[(a,r),(b,s)]) A[a,b].
        let (da, db) = (self.out_dim, self.in_dim);
        let c = self.matrix.as_matrix();
        Ok(ComplexMatrix::from_fn(db, db, |r, s| {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..da {
                for j in 0..da {
                    acc += c[(i * db + r, j * db + s)].conj() * a[(i, j)];
                }
            }
            acc
        }))
    }

    pub fn apply_adjoint_hermitian(&self, a: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(HermitianMatrix::symmetrize(&self.apply_adjoint(a.as_matrix())?))
    }

    pub fn min_choi_eigenvalue(&self) -> f64 {
        self.matrix.lambda_min()
    }

    pub fn is_completely_positive(&self, tol: f64) -> bool {
        self.min_choi_eigenvalue() >= -tol
    }

    /// `‖Tr_A(C) − I_B‖_max`.
    pub fn trace_preservation_deviation(&self) -> f64 {
        let reduced = self.reduced(1);
        reduced.max_abs_diff(&ComplexMatrix::identity(self.in_dim))
    }

    /// `‖Tr_B(C) − I_A‖_max`.
    pub fn unitality_deviation(&self) -> f64 {
        let reduced = self.reduced(0);
        reduced.max_abs_diff(&ComplexMatrix::identity(self.out_dim))
    }

    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        self.trace_preservation_deviation() <= tol
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        self.unitality_deviation() <= tol
    }

    fn reduced(&self, keep: usize) -> ComplexMatrix {
        if self.out_dim >= 2 && self.in_dim >= 2 {
            partial_trace(self.matrix.as_matrix(), &self.layout(), &[keep]).expect("Choi layout is consistent")
        } else {
            // One of the factors is trivial; sum the diagonal blocks by hand.
            let (da, db) = (self.out_dim, self.in_dim);
            let c = self.matrix.as_matrix();
            if keep == 1 {
                ComplexMatrix::from_fn(db, db, |r, s| (0..da).map(|a| c[(a * db + r, a * db + s)]).sum())
            } else {
                ComplexMatrix::from_fn(da, da, |a, b| (0..db).map(|r| c[(a * db + r, b * db + r)]).sum())
            }
        }
    }

    pub fn ensure_cptp(&self, tol: f64) -> Result<()> {
        let min_eigenvalue = self.min_choi_eigenvalue();
        let trace_deviation = self.trace_preservation_deviation();
        if min_eigenvalue >= -tol && trace_deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotCptp {
                min_eigenvalue,
                trace_deviation,
            })
        }
    }
}

/// `φ_i ⊗ id_{-i}` acting on joint operators.
#[derive(Clone, Debug)]
pub struct LiftedChannel {
    channel: ChoiMatrix,
    layout: RegisterLayout,
    register: usize,
}

/// Lifts a CPTP channel on register `register` to the joint space.
pub fn lift_channel(channel: &ChoiMatrix, layout: &RegisterLayout, register: usize) -> Result<LiftedChannel> {
    if register >= layout.len() {
        return Err(Error::InvalidLayout("register index out of range".into()));
    }
    let d = layout.dim(register);
    if channel.in_dim() != d || channel.out_dim() != d {
        return Err(Error::DimensionMismatch {
            context: "lifted channel",
            expected: d,
            found: channel.in_dim(),
        });
    }
    channel.ensure_cptp(tol::CPTP)?;
    Ok(LiftedChannel {
        channel: channel.clone(),
        layout: layout.clone(),
        register,
    })
}

impl LiftedChannel {
    pub fn register(&self) -> usize {
        self.register
    }

    pub fn channel(&self) -> &ChoiMatrix {
        &self.channel
    }

    /// Permutes the register to the front, acts blockwise and permutes back.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let perm = to_front(&self.layout, self.register);
        let (front, front_layout) = permute_registers(rho, &self.layout, &perm)?;
        let d = self.layout.dim(self.register);
        let rest = self.layout.complement_dim(self.register);
        let c = self.channel.matrix().as_matrix();
        // out[(a,r),(b,s)] = Σ_{k,l} C[(a,k),(b,l)] ρ[(k,r),(l,s)]
        let mut out = ComplexMatrix::zeros(d * rest, d * rest);
        for k in 0..d {
            for l in 0..d {
                let coeffs: Vec<(usize, usize, C64)> = (0..d)
                    .flat_map(|a| (0..d).map(move |b| (a, b)))
                    .map(|(a, b)| (a, b, c[(a * d + k, b * d + l)]))
                    .filter(|&(_, _, z)| z != C64::new(0.0, 0.0))
                    .collect();
                if coeffs.is_empty() {
                    continue;
                }
                for r in 0..rest {
                    for s in 0..rest {
                        let x = front[(k * rest + r, l * rest + s)];
                        if x == C64::new(0.0, 0.0) {
                            continue;
                        }
                        for &(a, b, z) in &coeffs {
                            out[(a * rest + r, b * rest + s)] += z * x;
                        }
                    }
                }
            }
        }
        let back = crate::linalg::invert_permutation(&perm);
        let (joint, _) = permute_registers(&out, &front_layout, &back)?;
        Ok(joint)
    }

    /// Applies to a density matrix; the output is re-validated at the learned tier.
    pub fn apply_density(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = HermitianMatrix::symmetrize(&self.apply(rho.as_matrix())?);
        DensityMatrix::with_tolerance(out, tol::LEARNED)
    }
}

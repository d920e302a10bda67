//! Dense complex linear algebra on multi-register Hilbert spaces.

mod eigen;
mod hermitian;
mod matrix;
mod registers;

pub use eigen::Eigen;
pub use hermitian::{
    herm_eig, herm_exp, hs_inner, lambda_max, lambda_min, project_to_density, project_to_simplex, DensityMatrix,
    HermitianMatrix,
};
pub(crate) use hermitian::check_distribution;
pub use matrix::{kron, kron_all, ComplexMatrix, C64};
pub use registers::{
    embed_operator, invert_permutation, partial_trace, partial_transpose, permute_registers, to_front,
    RegisterLayout,
};

/// Pauli matrices and a few other fixed operators.
pub mod paulis {
    use super::{ComplexMatrix, C64};
    use alloc::vec;

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        let i = C64::new(0.0, 1.0);
        ComplexMatrix::new(2, 2, vec![C64::new(0.0, 0.0), -i, i, C64::new(0.0, 0.0)]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&[1.0, -1.0])
    }

    /// SWAP on `C^d ⊗ C^d`.
    pub fn swap(d: usize) -> ComplexMatrix {
        let n = d * d;
        ComplexMatrix::from_fn(n, n, |r, c| {
            let (a, b) = (r / d, r % d);
            if c == b * d + a {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }
}

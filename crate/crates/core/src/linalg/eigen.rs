//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Jacobi is slow asymptotically but accurate to working precision, fully
//! deterministic, and trivially `no_std`. Joint spaces here stay at or below
//! 64 dimensions, where it is more than fast enough.

use alloc::vec::Vec;

use super::matrix::{modulus, ComplexMatrix, C64, ZERO};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// `V diag(f(λ)) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let weights: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |r, c| {
            let mut acc = ZERO;
            for (k, &w) in weights.iter().enumerate() {
                if w != 0.0 {
                    acc += self.vectors[(r, k)] * self.vectors[(c, k)].conj() * w;
                }
            }
            acc
        })
    }
}

/// Diagonalizes `a`, which must be square and Hermitian (not re-checked).
///
/// Ties keep solver order (stable sort). Each eigenvector is rotated so its
/// first component with modulus above `1e-12` is real and positive.
pub(crate) fn jacobi_eigh(a: &ComplexMatrix) -> Eigen {
    let n = a.rows();
    let mut m = a.clone();
    let mut v = ComplexMatrix::identity(n);

    let scale = m.frobenius_norm();
    if n > 1 && scale > 0.0 {
        let target = (f64::EPSILON * scale) * (f64::EPSILON * scale);
        for _ in 0..MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += m[(p, q)].norm_sqr();
                }
            }
            if off <= target {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut m, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let values = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let phase = (0..n)
            .map(|r| v[(r, src)])
            .find(|&z| modulus(z) > 1e-12)
            .map(|z| z.conj() / modulus(z))
            .unwrap_or(C64::new(1.0, 0.0));
        for r in 0..n {
            vectors[(r, col)] = v[(r, src)] * phase;
        }
    }
    Eigen { values, vectors }
}

/// One complex Jacobi rotation zeroing `m[p][q]`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = m[(p, q)];
    let abs_beta = modulus(beta);
    if abs_beta == 0.0 {
        return;
    }
    let alpha = m[(p, p)].re;
    let gamma = m[(q, q)].re;
    // Phase e^{-iφ} on column q makes the pivot real, then a real rotation.
    let phase = beta.conj() / abs_beta;
    let tau = (gamma - alpha) / (2.0 * abs_beta);
    let t = if tau >= 0.0 {
        1.0 / (tau + libm::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;

    // U restricted to (p, q): [[c, s], [-s·phase, c·phase]].
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = phase * (-s);
    let u_qq = phase * c;

    let n = m.rows();
    for k in 0..n {
        let a_kp = m[(k, p)];
        let a_kq = m[(k, q)];
        m[(k, p)] = a_kp * u_pp + a_kq * u_qp;
        m[(k, q)] = a_kp * u_pq + a_kq * u_qq;
    }
    for k in 0..n {
        let a_pk = m[(p, k)];
        let a_qk = m[(q, k)];
        m[(p, k)] = u_pp.conj() * a_pk + u_qp.conj() * a_qk;
        m[(q, k)] = u_pq.conj() * a_pk + u_qq.conj() * a_qk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let v_kp = v[(k, p)];
        let v_kq = v[(k, q)];
        v[(k, p)] = v_kp * u_pp + v_kq * u_qp;
        v[(k, q)] = v_kp * u_pq + v_kq * u_qq;
    }
}

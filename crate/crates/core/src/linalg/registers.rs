//! Multi-register index bookkeeping: partial traces, register permutations
//! and partial transposes. Register 0 is the most significant tensor factor.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Ordered per-player register dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegisterLayout {
    dims: Vec<usize>,
}

impl RegisterLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidLayout("at least one register is required".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidLayout(format!("register dimension {d} is below 2")));
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, register: usize) -> usize {
        self.dims[register]
    }

    pub fn joint_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(1)
    }

    /// Dimension of everything except `register`.
    pub fn complement_dim(&self, register: usize) -> usize {
        self.joint_dim() / self.dims[register]
    }

    /// Layout of the listed registers, in the listed order.
    pub fn select(&self, registers: &[usize]) -> Result<RegisterLayout> {
        let dims = registers
            .iter()
            .map(|&r| self.dims.get(r).copied().ok_or(Error::InvalidPermutation))
            .collect::<Result<Vec<_>>>()?;
        RegisterLayout::new(dims)
    }

    /// All registers except `register`, in order.
    pub fn others(&self, register: usize) -> Vec<usize> {
        (0..self.len()).filter(|&r| r != register).collect()
    }

    /// Stride of each register in the flattened joint index.
    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.len()];
        for r in (0..self.len().saturating_sub(1)).rev() {
            strides[r] = strides[r + 1] * self.dims[r + 1];
        }
        strides
    }

    /// Flattened offsets contributed by the given registers, enumerated with
    /// the first listed register most significant.
    fn offsets(&self, registers: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut out = vec![0usize];
        for &r in registers {
            let mut next = Vec::with_capacity(out.len() * self.dims[r]);
            for &base in &out {
                for digit in 0..self.dims[r] {
                    next.push(base + digit * strides[r]);
                }
            }
            out = next;
        }
        out
    }

    fn check_square(&self, m: &ComplexMatrix, context: &'static str) -> Result<()> {
        let n = m.ensure_square()?;
        if n != self.joint_dim() {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.joint_dim(),
                found: n,
            });
        }
        Ok(())
    }

    fn check_registers(&self, registers: &[usize], allow_empty: bool) -> Result<Vec<usize>> {
        let mut sorted = registers.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != registers.len() || sorted.iter().any(|&r| r >= self.len()) {
            return Err(Error::InvalidLayout(format!(
                "register selection {registers:?} does not fit {} registers",
                self.len()
            )));
        }
        if sorted.is_empty() && !allow_empty {
            return Err(Error::InvalidLayout("empty register selection".into()));
        }
        Ok(sorted)
    }
}

/// Traces out every register not in `keep`. The result acts on the kept
/// registers in their original order; an empty `keep` yields the 1×1 total trace.
pub fn partial_trace(m: &ComplexMatrix, layout: &RegisterLayout, keep: &[usize]) -> Result<ComplexMatrix> {
    layout.check_square(m, "partial trace")?;
    let keep = layout.check_registers(keep, true)?;
    let traced: Vec<usize> = (0..layout.len()).filter(|r| !keep.contains(r)).collect();
    let kept_offsets = layout.offsets(&keep);
    let traced_offsets = layout.offsets(&traced);
    let n = kept_offsets.len();
    let joint = layout.joint_dim();
    let data = m.data();
    let mut out = ComplexMatrix::zeros(n, n);
    for (a, &ra) in kept_offsets.iter().enumerate() {
        for (b, &cb) in kept_offsets.iter().enumerate() {
            let mut acc = ZERO;
            for &t in &traced_offsets {
                acc += data[(ra + t) * joint + cb + t];
            }
            out[(a, b)] = acc;
        }
    }
    Ok(out)
}

/// Reorders tensor factors: register `j` of the result is register
/// `perm[j]` of the input. Returns the matrix and its new layout.
pub fn permute_registers(
    m: &ComplexMatrix,
    layout: &RegisterLayout,
    perm: &[usize],
) -> Result<(ComplexMatrix, RegisterLayout)> {
    layout.check_square(m, "register permutation")?;
    if perm.len() != layout.len() {
        return Err(Error::InvalidPermutation);
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::InvalidPermutation);
        }
        seen[p] = true;
    }
    let map = layout.offsets(perm);
    let joint = layout.joint_dim();
    let data = m.data();
    let out = ComplexMatrix::from_fn(joint, joint, |r, c| data[map[r] * joint + map[c]]);
    Ok((out, layout.select(perm)?))
}

/// Permutation that moves `register` to the front and keeps the rest in order.
pub fn to_front(layout: &RegisterLayout, register: usize) -> Vec<usize> {
    let mut perm = vec![register];
    perm.extend(layout.others(register));
    perm
}

/// Inverse of a permutation.
pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (j, &p) in perm.iter().enumerate() {
        inv[p] = j;
    }
    inv
}

/// Transposes the listed registers' indices, leaving the others alone.
pub fn partial_transpose(m: &ComplexMatrix, layout: &RegisterLayout, registers: &[usize]) -> Result<ComplexMatrix> {
    layout.check_square(m, "partial transpose")?;
    let registers = layout.check_registers(registers, true)?;
    let rest: Vec<usize> = (0..layout.len()).filter(|r| !registers.contains(r)).collect();
    let t_offsets = layout.offsets(&registers);
    let r_offsets = layout.offsets(&rest);
    let joint = layout.joint_dim();
    let data = m.data();
    let mut out = ComplexMatrix::zeros(joint, joint);
    for &ta in &t_offsets {
        for &tb in &t_offsets {
            for &ra in &r_offsets {
                for &rb in &r_offsets {
                    out[(ta + ra, tb + rb)] = data[(tb + ra) * joint + ta + rb];
                }
            }
        }
    }
    Ok(out)
}

/// Places `op`, acting on `registers` (in that order), into the joint space
/// as `op ⊗ I` on the remaining registers.
pub fn embed_operator(op: &ComplexMatrix, layout: &RegisterLayout, registers: &[usize]) -> Result<ComplexMatrix> {
    let sub = layout.select(registers)?;
    let n = op.ensure_square()?;
    if n != sub.joint_dim() {
        return Err(Error::DimensionMismatch {
            context: "embedded operator",
            expected: sub.joint_dim(),
            found: n,
        });
    }
    let rest: Vec<usize> = (0..layout.len()).filter(|r| !registers.contains(r)).collect();
    let rest_dim: usize = rest.iter().map(|&r| layout.dim(r)).product();
    let padded = op.kron(&ComplexMatrix::identity(rest_dim));
    let mut order = registers.to_vec();
    order.extend(rest);
    let current = layout.select(&order)?;
    let (m, _) = permute_registers(&padded, &current, &invert_permutation(&order))?;
    Ok(m)
}

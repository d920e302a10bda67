//! Checkpoint CSV export.
//!
//! Columns, in order:
//! `t`, `utility_<i>`, `avg_regret_<i>`, `gap_<i>`, `max_gap`, `bound`,
//! `joint_eig_<k>` for every eigenvalue of the round's joint state, and
//! `bloch_<i>_x`, `bloch_<i>_y`, `bloch_<i>_z` for every qubit register.
//! Reals use 17 significant digits; unavailable values are left empty.

use std::io::Write;

use qgame_core::learning::{Checkpoint, Trajectory};
use qgame_core::linalg::DensityMatrix;

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochCoords {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochCoords {
    /// Coordinates `(Tr ρσ_x, Tr ρσ_y, Tr ρσ_z)` of a qubit state.
    pub fn of(rho: &DensityMatrix) -> Option<Self> {
        if rho.dim() != 2 {
            return None;
        }
        let m = rho.as_matrix();
        Some(Self {
            x: 2.0 * m[(0, 1)].re,
            y: -2.0 * m[(0, 1)].im,
            z: m[(0, 0)].re - m[(1, 1)].re,
        })
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

pub fn header(dims: &[usize]) -> Vec<String> {
    let k = dims.len();
    let mut cols = vec!["t".to_string()];
    cols.extend((0..k).map(|i| format!("utility_{i}")));
    cols.extend((0..k).map(|i| format!("avg_regret_{i}")));
    cols.extend((0..k).map(|i| format!("gap_{i}")));
    cols.push("max_gap".into());
    cols.push("bound".into());
    let joint: usize = dims.iter().product();
    cols.extend((0..joint).map(|e| format!("joint_eig_{e}")));
    for (i, _) in dims.iter().enumerate().filter(|(_, &d)| d == 2) {
        for axis in ["x", "y", "z"] {
            cols.push(format!("bloch_{i}_{axis}"));
        }
    }
    cols
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn row(dims: &[usize], c: &Checkpoint) -> Vec<String> {
    let k = dims.len();
    let mut out = vec![c.t.to_string()];
    out.extend(c.utilities.iter().map(|&u| real(u)));
    out.extend(c.average_regret.iter().map(|&r| real(r)));
    if c.gaps.is_empty() {
        out.extend((0..k).map(|_| String::new()));
    } else {
        out.extend(c.gaps.iter().map(|&g| real(g)));
    }
    out.push(c.max_gap().map(real).unwrap_or_default());
    out.push(c.gap_bound.map(real).unwrap_or_default());
    out.extend(c.joint_eigenvalues.iter().map(|&e| real(e)));
    for rho in &c.strategies {
        if let Some(b) = BlochCoords::of(rho) {
            out.extend([real(b.x), real(b.y), real(b.z)]);
        }
    }
    out
}

pub fn write_csv<W: Write>(out: W, trajectory: &Trajectory) -> CliResult<()> {
    let dims = trajectory.layout().dims();
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header(dims))?;
    for c in trajectory.checkpoints() {
        w.write_record(row(dims, c))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn csv_string(trajectory: &Trajectory) -> CliResult<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, trajectory)?;
    Ok(String::from_utf8(buf).expect("CSV output is ASCII"))
}

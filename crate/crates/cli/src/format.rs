//! JSON game, state and report files.
//!
//! Complex matrices are stored row-major as `[re, im]` pairs. Reals are
//! written in their shortest round-trip decimal form, so reading a file back
//! reproduces every bit.

use std::fs;
use std::path::Path;

use qgame_core::equilibria::{EquilibriumReport, ValueCertificate};
use qgame_core::games::{PolymatrixEdge, PolymatrixGame, QuantumGame};
use qgame_core::linalg::{ComplexMatrix, DensityMatrix, HermitianMatrix, RegisterLayout, C64};
use qgame_core::tol;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub type Entries = Vec<[f64; 2]>;

pub fn matrix_to_entries(m: &ComplexMatrix) -> Entries {
    m.data().iter().map(|z| [z.re, z.im]).collect()
}

pub fn entries_to_matrix(n: usize, entries: &[[f64; 2]]) -> qgame_core::Result<ComplexMatrix> {
    ComplexMatrix::new(n, n, entries.iter().map(|&[re, im]| C64::new(re, im)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeFile {
    pub i: usize,
    pub j: usize,
    pub r_ij: Entries,
    pub r_ji: Entries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameFile {
    pub kind: String,
    pub dims: Vec<usize>,
    /// One utility tensor per player on the joint register.
    pub tensors: Vec<Entries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub spectral_norms: Vec<f64>,
}

/// A game read from disk, with its polymatrix structure when present.
#[derive(Clone, Debug)]
pub struct LoadedGame {
    pub kind: String,
    pub game: QuantumGame,
    pub polymatrix: Option<PolymatrixGame>,
    pub seed: Option<u64>,
}

impl GameFile {
    pub fn from_game(kind: &str, game: &QuantumGame, seed: Option<u64>) -> Self {
        Self {
            kind: kind.to_string(),
            dims: game.layout().dims().to_vec(),
            tensors: game.tensors().iter().map(|r| matrix_to_entries(r.as_matrix())).collect(),
            edges: None,
            seed,
            spectral_norms: game.spectral_norms(),
        }
    }

    pub fn from_polymatrix(pg: &PolymatrixGame, seed: Option<u64>) -> CliResult<Self> {
        let game = pg.to_quantum_game()?;
        let mut file = Self::from_game("polymatrix", &game, seed);
        file.edges = Some(
            pg.edges()
                .iter()
                .map(|e| EdgeFile {
                    i: e.i,
                    j: e.j,
                    r_ij: matrix_to_entries(e.r_ij.as_matrix()),
                    r_ji: matrix_to_entries(e.r_ji.as_matrix()),
                })
                .collect(),
        );
        Ok(file)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// Rebuilds the game; two-player and polymatrix games whose tensors
    /// cancel are flagged zero-sum.
    pub fn to_game(&self) -> qgame_core::Result<LoadedGame> {
        let layout = RegisterLayout::new(self.dims.clone())?;
        let n = layout.joint_dim();
        let tensors = self
            .tensors
            .iter()
            .map(|t| HermitianMatrix::new(entries_to_matrix(n, t)?))
            .collect::<qgame_core::Result<Vec<_>>>()?;
        let plain = QuantumGame::new(layout.clone(), tensors.clone())?;
        let game = if plain.players() >= 2 && plain.zero_sum_residual() <= tol::ALGEBRAIC {
            QuantumGame::new_zero_sum(layout, tensors)?
        } else {
            plain
        };
        let polymatrix = match &self.edges {
            None => None,
            Some(edges) => {
                let edges = edges
                    .iter()
                    .map(|e| {
                        let pair = self.dims.get(e.i).copied().unwrap_or(0) * self.dims.get(e.j).copied().unwrap_or(0);
                        Ok(PolymatrixEdge {
                            i: e.i,
                            j: e.j,
                            r_ij: HermitianMatrix::new(entries_to_matrix(pair, &e.r_ij)?)?,
                            r_ji: HermitianMatrix::new(entries_to_matrix(pair, &e.r_ji)?)?,
                        })
                    })
                    .collect::<qgame_core::Result<Vec<_>>>()?;
                let pg = PolymatrixGame::new(self.dims.clone(), edges)?;
                let lifted = pg.lifted_tensors()?;
                let mismatch = lifted
                    .iter()
                    .zip(game.tensors())
                    .map(|(a, b)| a.as_matrix().max_abs_diff(b.as_matrix()))
                    .fold(0.0, f64::max);
                if mismatch > tol::ALGEBRAIC {
                    return Err(qgame_core::Error::InvalidArgument(format!(
                        "edge tensors disagree with the stored utility tensors by {mismatch:e}"
                    )));
                }
                Some(pg)
            }
        };
        Ok(LoadedGame {
            kind: self.kind.clone(),
            game,
            polymatrix,
            seed: self.seed,
        })
    }
}

/// A joint state, or a product state given by its factors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint: Option<Entries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<Entries>>,
}

impl StateFile {
    pub fn product(factors: &[DensityMatrix]) -> Self {
        Self {
            dims: factors.iter().map(|f| f.dim()).collect(),
            joint: None,
            factors: Some(factors.iter().map(|f| matrix_to_entries(f.as_matrix())).collect()),
        }
    }

    pub fn joint(dims: Vec<usize>, rho: &DensityMatrix) -> Self {
        Self {
            dims,
            joint: Some(matrix_to_entries(rho.as_matrix())),
            factors: None,
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn factor_states(&self) -> qgame_core::Result<Option<Vec<DensityMatrix>>> {
        let Some(factors) = &self.factors else {
            return Ok(None);
        };
        if factors.len() != self.dims.len() {
            return Err(qgame_core::Error::DimensionMismatch {
                context: "state factors",
                expected: self.dims.len(),
                found: factors.len(),
            });
        }
        factors
            .iter()
            .zip(&self.dims)
            .map(|(f, &d)| DensityMatrix::from_matrix(entries_to_matrix(d, f)?))
            .collect::<qgame_core::Result<Vec<_>>>()
            .map(Some)
    }

    /// The joint state, forming the product of the factors if needed.
    pub fn joint_state(&self) -> qgame_core::Result<DensityMatrix> {
        if let Some(joint) = &self.joint {
            let n = self.dims.iter().product();
            return DensityMatrix::from_matrix(entries_to_matrix(n, joint)?);
        }
        match self.factor_states()? {
            Some(f) => DensityMatrix::product(&f)
                .ok_or_else(|| qgame_core::Error::InvalidArgument("state has no factors".into())),
            None => Err(qgame_core::Error::InvalidArgument("state file has neither joint nor factors".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub kind: String,
    pub gaps: Vec<f64>,
    pub max_gap: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_residual: Option<f64>,
    pub verdict: bool,
}

impl From<&EquilibriumReport> for ReportFile {
    fn from(r: &EquilibriumReport) -> Self {
        Self {
            kind: r.kind.as_str().to_string(),
            gaps: r.gaps.clone(),
            max_gap: r.max_gap,
            tolerance: r.tolerance,
            product_residual: r.product_residual,
            verdict: r.verdict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueCertificateFile {
    pub kind: String,
    pub lower: f64,
    pub value_at: f64,
    pub upper: f64,
    /// `upper − lower`, the sum of both players' exploitabilities.
    pub width: f64,
    pub tolerance: f64,
    /// The pair is a `tolerance`-QNE: `width ≤ 2·tolerance`.
    pub verdict: bool,
}

impl ValueCertificateFile {
    pub fn new(c: &ValueCertificate, tolerance: f64) -> Self {
        Self {
            kind: "zs_value".to_string(),
            lower: c.lower,
            value_at: c.value_at,
            upper: c.upper,
            width: c.width(),
            tolerance,
            verdict: c.width() <= 2.0 * tolerance,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::malformed(path, e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn load_game(path: &Path) -> CliResult<LoadedGame> {
    let file: GameFile = read_json(path)?;
    file.to_game().map_err(|e| CliError::malformed(path, e))
}

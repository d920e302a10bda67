//! `gen`, `verify` and `maxent` as library functions; `run` lives in [`crate::run`].

use std::path::Path;

use qgame_core::equilibria::{
    is_qcce, is_qne, is_qne_joint, maxent_mixture, maxent_qcce_condition, ppt_witness, zs_certificate, Entanglement,
};
use qgame_core::games::{ClassicalBimatrix, TwoPlayerZeroSum};
use qgame_core::linalg::RegisterLayout;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::format::{load_game, read_json, to_json, write_text, ReportFile, StateFile, ValueCertificateFile};
use crate::generate::{generate, GenSpec};

pub fn gen(spec: &GenSpec, out: &Path) -> CliResult<()> {
    let file = generate(spec)?;
    write_text(out, &file.to_json())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Qne,
    Qcce,
    ZsValue,
}

impl std::str::FromStr for VerifyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "qne" => Ok(VerifyKind::Qne),
            "qcce" => Ok(VerifyKind::Qcce),
            "zs-value" => Ok(VerifyKind::ZsValue),
            other => Err(format!("unknown certificate `{other}` (expected qne, qcce or zs-value)")),
        }
    }
}

/// Report JSON and verdict for a (game, state) pair.
pub fn verify(game_path: &Path, state_path: &Path, kind: VerifyKind, tolerance: f64) -> CliResult<(String, bool)> {
    let loaded = load_game(game_path)?;
    let state: StateFile = read_json(state_path)?;
    let g = &loaded.game;
    if state.dims != g.layout().dims() {
        return Err(CliError::domain(format!(
            "state dimensions {:?} do not match game dimensions {:?}",
            state.dims,
            g.layout().dims()
        )));
    }
    let malformed = |e: qgame_core::Error| CliError::malformed(state_path, e);
    match kind {
        VerifyKind::Qcce => {
            let rho = state.joint_state().map_err(malformed)?;
            let r = is_qcce(g, &rho, tolerance)?;
            Ok((to_json(&ReportFile::from(&r)), r.verdict))
        }
        VerifyKind::Qne => {
            let r = match state.factor_states().map_err(malformed)? {
                Some(profile) => is_qne(g, &profile, tolerance)?,
                None => is_qne_joint(g, &state.joint_state().map_err(malformed)?, tolerance)?,
            };
            Ok((to_json(&ReportFile::from(&r)), r.verdict))
        }
        VerifyKind::ZsValue => {
            let zs = TwoPlayerZeroSum::from_game(g)?;
            let factors = state
                .factor_states()
                .map_err(malformed)?
                .ok_or_else(|| CliError::domain("zs-value needs a product state given by its factors"))?;
            // The state file holds register states; Bob's strategy enters transposed.
            let sigma = TwoPlayerZeroSum::strategy_from_register(&factors[1]);
            let cert = zs_certificate(&zs, &factors[0], &sigma)?;
            let file = ValueCertificateFile::new(&cert, tolerance);
            Ok((to_json(&file), file.verdict))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PptFile {
    pub entangled: bool,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxentReport {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// Bell index `2p + q` of the largest entry of `a` (lowest index on ties).
    pub max_entry: usize,
    pub bell_state: String,
    pub qcce: ReportFile,
    pub ppt: PptFile,
    pub scalar_condition: bool,
    pub conditions_agree: bool,
    /// Bell index of the smallest entry of `a`, and whether that point mass is a QCCE.
    pub min_entry: usize,
    pub min_entry_is_qcce: bool,
}

fn bell_name(index: usize) -> String {
    format!("e_{}{}", index / 2, index % 2)
}

fn point_mass(index: usize) -> [f64; 4] {
    let mut l = [0.0; 4];
    l[index] = 1.0;
    l
}

/// Certifies the Bell state at the largest payoff entry of a max-ent game.
pub fn maxent(a: &[f64], b: Option<&[f64]>, tolerance: f64) -> CliResult<(String, bool)> {
    if a.len() != 4 || b.is_some_and(|b| b.len() != 4) {
        return Err(CliError::domain("payoff matrices must be 2x2 (four row-major entries)"));
    }
    let b = b.unwrap_or(a).to_vec();
    let bm = ClassicalBimatrix::new(2, 2, a.to_vec(), b.clone())?;
    let pick = |better: fn(f64, f64) -> bool| {
        (0..4).fold(0, |best, k| if better(a[k], a[best]) { k } else { best })
    };
    let max_entry = pick(|x, y| x > y);
    let min_entry = pick(|x, y| x < y);

    let lambda = point_mass(max_entry);
    let (game, rho) = maxent_mixture(&bm, &lambda)?;
    let report = is_qcce(&game, &rho, tolerance)?;
    let layout = RegisterLayout::new(vec![2, 2])?;
    let ppt = ppt_witness(&rho, &layout, &[1])?;
    let scalar = maxent_qcce_condition(&bm, &lambda, tolerance)?;

    let (game_min, rho_min) = maxent_mixture(&bm, &point_mass(min_entry))?;
    let min_entry_is_qcce = is_qcce(&game_min, &rho_min, tolerance)?.verdict;

    let out = MaxentReport {
        a: a.to_vec(),
        b,
        max_entry,
        bell_state: bell_name(max_entry),
        qcce: ReportFile::from(&report),
        ppt: PptFile {
            entangled: ppt.verdict == Entanglement::Entangled,
            min_eigenvalue: ppt.min_eigenvalue,
        },
        scalar_condition: scalar,
        conditions_agree: scalar == report.verdict,
        min_entry,
        min_entry_is_qcce,
    };
    let ok = report.verdict && out.ppt.entangled && out.conditions_agree;
    Ok((to_json(&out), ok))
}

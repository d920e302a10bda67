//! Learning runs: configuration, execution, batch fan-out and manifests.

use std::fs;
use std::path::{Path, PathBuf};

use qgame_core::learning::{
    horizon_for_epsilon, run_game, GapMetric, Learner, MatrixLearner, Regularizer, RunOptions, Schedule, Setting,
    Trajectory,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::format::{load_game, read_json, to_json, write_text, GameFile, LoadedGame};
use crate::generate::{generate, GenSpec};
use crate::trajectory::csv_string;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameSource {
    File(PathBuf),
    Generate(GenSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleSpec {
    Fixed { eta: f64 },
    Doubling { base_len: usize },
}

impl From<ScheduleSpec> for Schedule {
    fn from(s: ScheduleSpec) -> Self {
        match s {
            ScheduleSpec::Fixed { eta } => Schedule::Fixed { eta },
            ScheduleSpec::Doubling { base_len } => Schedule::Doubling { base_len },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub game: GameSource,
    /// `mmwu` or `ftrl-frobenius`; one entry for everyone or one per player.
    pub learners: Vec<String>,
    /// Required unless `epsilon` is given.
    pub schedule: Option<ScheduleSpec>,
    pub horizon: Option<usize>,
    /// Target accuracy; picks the fixed step size and horizon for the game's setting.
    pub epsilon: Option<f64>,
    pub checkpoint_stride: Option<usize>,
    /// `qcce`, `qne` or `none`; defaults to `qne` for zero-sum games and `qcce` otherwise.
    pub metric: Option<String>,
    /// Number of runs. Generated games use seed `seed + run id` per run.
    pub runs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool_version: String,
    pub run_id: usize,
    /// SHA-256 of the game file bytes.
    pub game_hash: String,
    pub seeds: Vec<u64>,
    pub learners: Vec<String>,
    pub schedule: String,
    #[serde(rename = "T")]
    pub horizon: usize,
    pub checkpoint_stride: usize,
    pub metric: String,
    /// Everything needed for `run --replay`.
    pub config: RunConfig,
}

/// Outputs of one run, as written to disk.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub run_id: usize,
    pub game_json: String,
    pub csv: String,
    pub manifest: Manifest,
    pub trajectory: Trajectory,
}

impl RunOutput {
    pub fn manifest_json(&self) -> String {
        to_json(&self.manifest)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn parse_metric(text: &str) -> CliResult<GapMetric> {
    match text {
        "qcce" => Ok(GapMetric::Qcce),
        "qne" => Ok(GapMetric::Qne),
        "none" => Ok(GapMetric::None),
        other => Err(CliError::domain(format!("unknown metric `{other}` (expected qcce, qne or none)"))),
    }
}

fn metric_name(m: GapMetric) -> &'static str {
    match m {
        GapMetric::Qcce => "qcce",
        GapMetric::Qne => "qne",
        GapMetric::None => "none",
    }
}

fn parse_regularizer(text: &str) -> CliResult<Regularizer> {
    match text {
        "mmwu" => Ok(Regularizer::Entropy),
        "ftrl-frobenius" | "ftrl" => Ok(Regularizer::Frobenius),
        other => Err(CliError::domain(format!("unknown learner `{other}` (expected mmwu or ftrl-frobenius)"))),
    }
}

/// Which horizon formula applies to a loaded game.
pub fn setting_for(loaded: &LoadedGame) -> Setting {
    let g = &loaded.game;
    let d = g.layout().max_dim();
    if g.is_zero_sum() && loaded.polymatrix.is_some() {
        Setting::Polymatrix { d, k: g.players() }
    } else if g.is_zero_sum() && g.players() == 2 {
        Setting::ZeroSum { d }
    } else {
        Setting::General { d }
    }
}

/// Step-size schedule and horizon a config resolves to for `loaded`.
pub fn resolve_schedule(config: &RunConfig, loaded: &LoadedGame) -> CliResult<(Schedule, usize)> {
    match (config.epsilon, config.horizon) {
        (Some(eps), None) => {
            if config.schedule.is_some() {
                return Err(CliError::domain("give either --epsilon or a step-size schedule, not both"));
            }
            let (eta, horizon) = horizon_for_epsilon(setting_for(loaded), eps)?;
            Ok((Schedule::Fixed { eta }, horizon))
        }
        (None, Some(horizon)) => {
            let schedule = config
                .schedule
                .ok_or_else(|| CliError::domain("a step-size schedule (--eta or --doubling) is required"))?;
            Ok((schedule.into(), horizon))
        }
        _ => Err(CliError::domain("specify exactly one of --horizon and --epsilon")),
    }
}

fn game_for_run(config: &RunConfig, run_id: usize) -> CliResult<(String, LoadedGame, Vec<u64>)> {
    match &config.game {
        GameSource::File(path) => {
            let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
            let loaded = load_game(path)?;
            let seeds = loaded.seed.into_iter().collect();
            let text = String::from_utf8(bytes).map_err(|e| CliError::malformed(path, e))?;
            Ok((text, loaded, seeds))
        }
        GameSource::Generate(spec) => {
            let spec = GenSpec {
                seed: spec.seed.wrapping_add(run_id as u64),
                ..spec.clone()
            };
            let file: GameFile = generate(&spec)?;
            let text = file.to_json();
            let loaded = file.to_game()?;
            Ok((text, loaded, vec![spec.seed]))
        }
    }
}

/// Executes run `run_id` of `config` without touching the filesystem
/// (except to read a game file).
pub fn execute_run(config: &RunConfig, run_id: usize) -> CliResult<RunOutput> {
    let (game_json, loaded, seeds) = game_for_run(config, run_id)?;
    let game = &loaded.game;
    let (schedule, horizon) = resolve_schedule(config, &loaded)?;
    let k = game.players();
    let kinds = match config.learners.len() {
        1 => vec![config.learners[0].clone(); k],
        n if n == k => config.learners.clone(),
        n => return Err(CliError::domain(format!("{n} learners given for a {k}-player game"))),
    };
    let mut learners: Vec<Box<dyn Learner>> = kinds
        .iter()
        .enumerate()
        .map(|(i, kind)| {
            let l = MatrixLearner::new(parse_regularizer(kind)?, game.layout().dim(i), schedule)?;
            Ok(Box::new(l) as Box<dyn Learner>)
        })
        .collect::<CliResult<_>>()?;
    let metric = match &config.metric {
        Some(m) => parse_metric(m)?,
        None if game.is_zero_sum() => GapMetric::Qne,
        None => GapMetric::Qcce,
    };
    let stride = config.checkpoint_stride.unwrap_or((horizon / 1000).max(1));
    let options = RunOptions::new(horizon).stride(stride).metric(metric);
    let trajectory = run_game(game, &mut learners, &options)?;
    let manifest = Manifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        run_id,
        game_hash: sha256_hex(game_json.as_bytes()),
        seeds,
        learners: learners.iter().map(|l| l.describe()).collect(),
        schedule: schedule.describe(),
        horizon,
        checkpoint_stride: stride,
        metric: metric_name(metric).to_string(),
        config: config.clone(),
    };
    Ok(RunOutput {
        run_id,
        game_json,
        csv: csv_string(&trajectory)?,
        manifest,
        trajectory,
    })
}

/// Thread cap from `QG_THREADS`; `None` means one thread per core.
pub fn thread_cap() -> CliResult<Option<usize>> {
    match std::env::var("QG_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::domain(format!("QG_THREADS must be a positive integer, got `{v}`"))),
        },
    }
}

/// Runs `0..config.runs` in parallel; results are ordered by run id.
pub fn execute_batch(config: &RunConfig) -> CliResult<Vec<RunOutput>> {
    if config.runs == 0 {
        return Err(CliError::domain("--runs must be at least 1"));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::domain(format!("cannot start worker threads: {e}")))?;
    pool.install(|| (0..config.runs).into_par_iter().map(|r| execute_run(config, r)).collect())
}

/// Where run `r` writes: the output directory itself for a single run,
/// `run_<r>/` otherwise.
pub fn run_dir(out: &Path, runs: usize, run_id: usize) -> PathBuf {
    if runs == 1 {
        out.to_path_buf()
    } else {
        out.join(format!("run_{run_id:03}"))
    }
}

pub fn write_outputs(out: &Path, runs: usize, outputs: &[RunOutput]) -> CliResult<()> {
    for o in outputs {
        let dir = run_dir(out, runs, o.run_id);
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        if matches!(o.manifest.config.game, GameSource::Generate(_)) {
            write_text(&dir.join("game.json"), &o.game_json)?;
        }
        write_text(&dir.join("trajectory.csv"), &o.csv)?;
        write_text(&dir.join("manifest.json"), &o.manifest_json())?;
    }
    Ok(())
}

pub fn read_manifest(path: &Path) -> CliResult<Manifest> {
    read_json(path)
}

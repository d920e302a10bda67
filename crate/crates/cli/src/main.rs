use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qgame::commands::{self, VerifyKind};
use qgame::generate::GenSpec;
use qgame::run::{self, GameSource, RunConfig, ScheduleSpec};
use qgame::{CliError, CliResult};
use qgame_core::learning::Schedule;

#[derive(Parser)]
#[command(name = "qgame", version, about = "No-regret learning and equilibrium certificates for quantum games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random game file.
    Gen {
        #[command(flatten)]
        spec: GenArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run learning dynamics and write a checkpoint CSV plus manifest.
    Run(RunArgs),
    /// Certify a state against a game; exits 0 iff the verdict holds.
    Verify {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        state: PathBuf,
        /// qne, qcce or zs-value.
        #[arg(long)]
        kind: VerifyKind,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Certify the Bell state at the largest payoff of a 2x2 max-ent game.
    Maxent {
        /// Row player's payoffs, four row-major entries.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        /// Column player's payoffs; defaults to `a` (common payoff).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Args, Clone)]
struct GenArgs {
    /// general, zero-sum or polymatrix.
    #[arg(long)]
    kind: String,
    /// Register dimensions, e.g. 2,2.
    #[arg(long, value_delimiter = ',', default_value = "2,2")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Polymatrix graph: path, cycle, complete (optionally with a player count, e.g. cycle3) or 0-1,1-2.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    pairwise_zero_sum: bool,
}

impl GenArgs {
    fn spec(&self) -> GenSpec {
        GenSpec {
            kind: self.kind.clone(),
            dims: self.dims.clone(),
            seed: self.seed,
            graph: self.graph.clone(),
            pairwise_zero_sum: self.pairwise_zero_sum,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Re-run the configuration stored in a manifest.
    #[arg(long, conflicts_with_all = ["game", "kind"])]
    replay: Option<PathBuf>,
    #[arg(long, conflicts_with = "kind")]
    game: Option<PathBuf>,
    /// Inline generator: general, zero-sum or polymatrix.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long, value_delimiter = ',', default_value = "2,2")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    pairwise_zero_sum: bool,
    /// mmwu or ftrl-frobenius, once for all players or once per player.
    #[arg(long, value_delimiter = ',', default_value = "mmwu")]
    learner: Vec<String>,
    /// Fixed step size.
    #[arg(long, conflicts_with = "doubling")]
    eta: Option<f64>,
    /// Doubling-trick schedule.
    #[arg(long)]
    doubling: bool,
    #[arg(long, default_value_t = Schedule::DEFAULT_BASE_LEN)]
    base_len: usize,
    #[arg(long, conflicts_with = "epsilon")]
    horizon: Option<usize>,
    /// Target accuracy; sets the step size and horizon for the game's setting.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    stride: Option<usize>,
    /// qcce, qne or none.
    #[arg(long)]
    metric: Option<String>,
    #[arg(long, default_value_t = 1)]
    runs: usize,
}

impl RunArgs {
    fn config(&self) -> CliResult<RunConfig> {
        if let Some(path) = &self.replay {
            return Ok(run::read_manifest(path)?.config);
        }
        let game = match (&self.game, &self.kind) {
            (Some(path), None) => GameSource::File(path.clone()),
            (None, Some(kind)) => GameSource::Generate(GenSpec {
                kind: kind.clone(),
                dims: self.dims.clone(),
                seed: self.seed,
                graph: self.graph.clone(),
                pairwise_zero_sum: self.pairwise_zero_sum,
            }),
            _ => return Err(CliError::domain("give either --game or --kind")),
        };
        let schedule = match (self.eta, self.doubling) {
            (Some(eta), false) => Some(ScheduleSpec::Fixed { eta }),
            (None, true) => Some(ScheduleSpec::Doubling {
                base_len: self.base_len,
            }),
            _ => None,
        };
        Ok(RunConfig {
            game,
            learners: self.learner.clone(),
            schedule,
            horizon: self.horizon,
            epsilon: self.epsilon,
            checkpoint_stride: self.stride,
            metric: self.metric.clone(),
            runs: self.runs,
        })
    }
}

fn execute(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Gen { spec, out } => {
            commands::gen(&spec.spec(), &out)?;
            Ok(true)
        }
        Command::Run(args) => {
            let config = args.config()?;
            let outputs = run::execute_batch(&config)?;
            run::write_outputs(&args.out, config.runs, &outputs)?;
            for o in &outputs {
                let last = o.trajectory.last_checkpoint().expect("runs have at least one checkpoint");
                let gap = last.max_gap().map_or("n/a".to_string(), |g| format!("{g:.6e}"));
                println!(
                    "run {}: T = {}, max gap {gap} -> {}",
                    o.run_id,
                    last.t,
                    run::run_dir(&args.out, config.runs, o.run_id).display()
                );
            }
            Ok(true)
        }
        Command::Verify { game, state, kind, tol } => {
            let (json, verdict) = commands::verify(&game, &state, kind, tol)?;
            print!("{json}");
            Ok(verdict)
        }
        Command::Maxent { a, b, tol } => {
            let (json, ok) = commands::maxent(&a, b.as_deref(), tol)?;
            print!("{json}");
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

//! Online learning in quantum games: matrix FTRL learners, step-size
//! schedules, the scripted equilibrium-replay learner and the game runner.

mod learners;
mod runner;
mod schedule;
mod scripted;

pub use learners::{FixedLearner, Learner, MatrixLearner, Regularizer, Round};
pub use runner::{run_game, Checkpoint, GapMetric, RunOptions, Trajectory};
pub use schedule::{horizon_for_epsilon, Schedule, Setting};
pub use scripted::{next_component, scripted_qcce_learners, ScriptedLearner, SeparableDecomposition};

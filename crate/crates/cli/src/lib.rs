//! File formats, trajectory export and the `qgame` command-line tool built
//! on [`qgame_core`].

pub mod commands;
pub mod error;
pub mod format;
pub mod generate;
pub mod run;
pub mod trajectory;

pub use error::{CliError, CliResult};

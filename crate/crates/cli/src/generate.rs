//! Seeded game generation shared by `gen` and inline `run` specs.

use qgame_core::games::{random_game, random_polymatrix, Graph, RandomKind};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::format::GameFile;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    /// `general`, `zero-sum` or `polymatrix`.
    pub kind: String,
    pub dims: Vec<usize>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default)]
    pub pairwise_zero_sum: bool,
}

/// Parses `path`, `cycle`, `complete` (optionally suffixed with the player
/// count, e.g. `cycle3`) or an explicit edge list such as `0-1,1-2`.
pub fn parse_graph(text: &str) -> CliResult<(Graph, Option<usize>)> {
    let text = text.trim();
    for (name, graph) in [("path", Graph::Path), ("cycle", Graph::Cycle), ("complete", Graph::Complete)] {
        if let Some(rest) = text.strip_prefix(name) {
            if rest.is_empty() {
                return Ok((graph, None));
            }
            let k = rest
                .parse::<usize>()
                .map_err(|_| CliError::domain(format!("unrecognised graph `{text}`")))?;
            return Ok((graph, Some(k)));
        }
    }
    let edges = text
        .split(',')
        .map(|pair| {
            let (a, b) = pair
                .split_once('-')
                .ok_or_else(|| CliError::domain(format!("unrecognised graph `{text}`")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::domain(format!("bad player index `{s}` in graph")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok((Graph::Edges(edges), None))
}

pub fn generate(spec: &GenSpec) -> CliResult<GameFile> {
    match spec.kind.as_str() {
        "general" => Ok(GameFile::from_game(
            "general",
            &random_game(&spec.dims, spec.seed, RandomKind::General)?,
            Some(spec.seed),
        )),
        "zero-sum" => Ok(GameFile::from_game(
            "zero-sum",
            &random_game(&spec.dims, spec.seed, RandomKind::ZeroSum)?,
            Some(spec.seed),
        )),
        "polymatrix" => {
            let (graph, count) = parse_graph(spec.graph.as_deref().unwrap_or("path"))?;
            let dims = match (count, spec.dims.len()) {
                (Some(k), 1) => vec![spec.dims[0]; k],
                (Some(k), n) if k != n => {
                    return Err(CliError::domain(format!("graph has {k} players but {n} dimensions were given")))
                }
                _ => spec.dims.clone(),
            };
            let pg = random_polymatrix(&dims, &graph, spec.seed, spec.pairwise_zero_sum)?;
            GameFile::from_polymatrix(&pg, Some(spec.seed))
        }
        other => Err(CliError::domain(format!(
            "unknown game kind `{other}` (expected general, zero-sum or polymatrix)"
        ))),
    }
}

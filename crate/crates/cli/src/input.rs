use std::path::PathBuf;

use chain_ssc::{ChainGraph, Error, ForestSpec};
use clap::Args;
use serde::{Deserialize, Serialize};

/// Graph description accepted by `--spec`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub r: usize,
    pub m: Vec<usize>,
    #[serde(default)]
    pub forest: ForestSpec,
}

impl GraphSpec {
    pub fn build(&self) -> Result<ChainGraph, Error> {
        if self.r != self.m.len() || self.r == 0 {
            return Err(Error::InvalidCycleCount {
                r: self.r,
                lengths: self.m.len(),
            });
        }
        ChainGraph::new(&self.m, self.forest.clone())
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct GraphArgs {
    /// JSON graph spec file.
    #[arg(long, global = true, value_name = "FILE", conflicts_with_all = ["r", "m", "t", "attach"])]
    pub spec: Option<PathBuf>,

    /// Number of cycles; defaults to the length of --m.
    #[arg(long, global = true)]
    pub r: Option<usize>,

    /// Cycle lengths, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub m: Option<Vec<usize>>,

    /// Forest edges hanging off vertex 0 as a path.
    #[arg(long, global = true, conflicts_with = "attach")]
    pub t: Option<usize>,

    /// Attachment vertex of each forest edge, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub attach: Option<Vec<usize>>,
}

#[derive(Debug)]
pub enum InputError {
    Missing,
    Io(String),
    Parse(String),
    Graph(Error),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Missing => f.write_str("no graph given; pass --spec FILE or --m"),
            InputError::Io(e) | InputError::Parse(e) => f.write_str(e),
            InputError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl GraphArgs {
    pub fn spec(&self) -> Result<GraphSpec, InputError> {
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?;
            return serde_json::from_str(&text)
                .map_err(|e| InputError::Parse(format!("{}: {e}", path.display())));
        }
        let m = self.m.clone().ok_or(InputError::Missing)?;
        let forest = match (&self.attach, self.t) {
            (Some(at), _) => ForestSpec::Attach(at.clone()),
            (None, t) => ForestSpec::Count(t.unwrap_or(0)),
        };
        Ok(GraphSpec {
            r: self.r.unwrap_or(m.len()),
            m,
            forest,
        })
    }

    pub fn graph(&self) -> Result<ChainGraph, InputError> {
        self.spec()?.build().map_err(InputError::Graph)
    }
}

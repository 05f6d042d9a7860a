use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;

use pconn::connectivity::connectivity_at_least;
use pconn::{Graph, Variant, Vertex};
use serde_json::{json, Value};
use thiserror::Error;

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pconn::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::Failed => ExitCode::from(1),
        }
    }
}

pub type CliResult = Result<Status, CliError>;

pub fn read_text(path: Option<&Path>) -> Result<String, CliError> {
    let mut text = String::new();
    let res = match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).map(|t| text = t),
        _ => std::io::stdin().read_to_string(&mut text).map(|_| ()),
    };
    res.map_err(|source| CliError::Io {
        path: path.map_or("<stdin>".into(), |p| p.display().to_string()),
        source,
    })?;
    Ok(text)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_graph(path: Option<&Path>) -> Result<Graph, CliError> {
    Ok(pconn::io::parse_graph(&read_text(path)?)?)
}

pub fn one_based(vs: &[Vertex]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
pub fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

pub fn emit(v: &Value) {
    out(&format!("{}\n", serde_json::to_string_pretty(v).expect("json values always serialize")));
}

/// Solution checks that only use the graph predicates, never a solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub in_range: bool,
    pub vertex_cover: bool,
    pub connected: bool,
    pub within_budget: Option<bool>,
}

impl Verdict {
    pub fn check(g: &Graph, set: &[Vertex], p: usize, variant: Variant, k: Option<usize>) -> Verdict {
        let in_range = set.iter().all(|&v| v < g.n());
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let (vertex_cover, connected) = if in_range {
            (g.is_vertex_cover(&sorted), connectivity_at_least(&g.induced(&sorted), p, variant))
        } else {
            (false, false)
        };
        Verdict {
            in_range,
            vertex_cover,
            connected,
            within_budget: k.map(|k| sorted.len() <= k),
        }
    }

    pub fn ok(&self) -> bool {
        self.in_range && self.vertex_cover && self.connected && self.within_budget != Some(false)
    }

    pub fn to_json(self) -> Value {
        json!({
            "ok": self.ok(),
            "in_range": self.in_range,
            "vertex_cover": self.vertex_cover,
            "connected": self.connected,
            "within_budget": self.within_budget,
        })
    }
}

/// Verifies a solver's answer before it is printed. A solver that returns an
/// invalid set is a bug, reported on stderr with exit code 1.
pub fn checked(g: &Graph, set: &[Vertex], p: usize, variant: Variant, k: Option<usize>) -> Result<Verdict, Status> {
    let v = Verdict::check(g, set, p, variant, k);
    if v.ok() {
        Ok(v)
    } else {
        eprintln!("pconn: solver returned an invalid solution {:?}", one_based(set));
        Err(Status::Failed)
    }
}

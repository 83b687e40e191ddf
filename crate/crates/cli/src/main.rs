//! `kcross`: decide, certify and draw small crossing numbers.
//!
//! Exit status: 0 verdict produced (yes / true), 1 verdict "no", 2 budget
//! exhausted, 3 input error.

mod cross;
mod grid;
mod mso;

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use kcross::graph::{EdgeId, EdgeSet, MultiGraph};
use kcross::solver::{Budget, SolveOptions};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "kcross", version, about = "Exact crossing numbers for small k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Crossing-number decisions, drawings and certificate checks.
    #[command(subcommand)]
    Cross(cross::CrossCmd),
    /// Hexagonal grids, grid embeddings and flat-grid reductions.
    #[command(subcommand)]
    Grid(grid::GridCmd),
    /// Monadic second-order logic on graphs.
    #[command(subcommand)]
    Mso(mso::MsoCmd),
}

/// Outcome of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Yes => 0,
            Status::No => 1,
            Status::Unknown => 2,
        }
    }
}

/// Search limits, shared by the solver subcommands.
#[derive(Args, Clone, Debug)]
pub struct BudgetArgs {
    /// Maximum search nodes.
    #[arg(long, env = "KCROSS_MAX_NODES")]
    max_nodes: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long, env = "KCROSS_MAX_SECONDS")]
    max_seconds: Option<f64>,
    /// Search workers; reports are deterministic only with one.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl BudgetArgs {
    pub fn options(&self) -> Result<SolveOptions> {
        if self.workers == 0 {
            anyhow::bail!("--workers must be positive");
        }
        if self.max_nodes == Some(0) {
            anyhow::bail!("--max-nodes must be positive");
        }
        let max_time = match self.max_seconds {
            Some(s) if !(s > 0.0 && s.is_finite()) => anyhow::bail!("--max-seconds must be positive, got {s}"),
            s => s.map(Duration::from_secs_f64),
        };
        Ok(SolveOptions {
            budget: Budget {
                max_nodes: self.max_nodes,
                max_time,
            },
            workers: self.workers,
        })
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn read_graph(path: &Path) -> Result<MultiGraph> {
    kcross::io::parse_graph(&read_text(path)?).with_context(|| format!("{}", path.display()))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?).with_context(|| format!("{}", path.display()))
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_file(path, &(serde_json::to_string_pretty(value)? + "\n"))
}

pub fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Builds `F` from edge ids, checking each one exists.
pub fn forbidden_set(g: &MultiGraph, ids: &[u32]) -> Result<EdgeSet> {
    let f: EdgeSet = ids.iter().map(|&e| EdgeId(e)).collect();
    for e in f.iter() {
        if !g.has_edge(e) {
            anyhow::bail!("forbidden edge {e} is not an edge of the graph");
        }
    }
    Ok(f)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cross(c) => cross::run(c),
        Command::Grid(c) => grid::run(c),
        Command::Mso(c) => mso::run(c),
    };
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

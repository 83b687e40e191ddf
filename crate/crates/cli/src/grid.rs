use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Subcommand;
use kcross::graph::{EdgeSet, MultiGraph};
use kcross::grid::planted::planted;
use kcross::grid::{
    embed_grid, hex_grid, is_flat, reduce, reduce_loop, EmbedOutcome, GridEmbedding, ReductionConfig,
};
use serde::Serialize;

use crate::{forbidden_set, print_json, read_graph, read_json, write_file, write_json, Status};

#[derive(Subcommand)]
pub enum GridCmd {
    /// Write the hexagonal grid of radius r, or a planted instance.
    Gen {
        #[arg(long)]
        r: usize,
        /// Plant the grid in a random host built from this seed.
        #[arg(long)]
        planted: Option<u64>,
        /// Probability that a host edge is forbidden.
        #[arg(long, default_value_t = 0.2)]
        forbid_prob: f64,
        /// Graph output (JSON); printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the graph as an edge list here.
        #[arg(long)]
        edges: Option<PathBuf>,
        /// Embedding certificate output.
        #[arg(long)]
        embedding: Option<PathBuf>,
    },
    /// Search for a topological hexagonal grid of radius r.
    Embed {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        /// Certificate output when a grid is found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contract flat grids, with a given certificate or by searching.
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<u32>,
        /// Use this embedding certificate instead of searching.
        #[arg(long)]
        embedding: Option<PathBuf>,
        /// Grid radius; anything other than 2k+2 is experimental.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        /// Reduced graph output (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct GenSummary {
    r: usize,
    vertices: usize,
    edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    forbidden: Option<EdgeSet>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    gadgets: Vec<String>,
}

#[derive(Serialize)]
struct ReduceSummary {
    vertices_before: usize,
    vertices_after: usize,
    steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    stop: Option<kcross::grid::StopReason>,
    forbidden: EdgeSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    experimental_radius: Option<usize>,
}

fn write_graph(g: &MultiGraph, out: &Option<PathBuf>, edges: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(p) => write_json(p, g)?,
        None => println!("{}", kcross::io::write_json(g)),
    }
    if let Some(p) = edges {
        write_file(p, &kcross::io::write_edge_list(g))?;
    }
    Ok(())
}

pub fn run(cmd: GridCmd) -> Result<Status> {
    match cmd {
        GridCmd::Gen {
            r,
            planted: seed,
            forbid_prob,
            out,
            edges,
            embedding,
        } => {
            if !(0.0..=1.0).contains(&forbid_prob) {
                bail!("--forbid-prob must lie in [0, 1], got {forbid_prob}");
            }
            let (g, h, summary) = match seed {
                Some(s) => {
                    let p = planted(s, r, forbid_prob)?;
                    let summary = GenSummary {
                        r,
                        vertices: p.graph.vertex_count(),
                        edges: p.graph.edge_count(),
                        seed: Some(s),
                        forbidden: Some(p.forbidden),
                        gadgets: p.gadgets.iter().map(|g| format!("{g:?}")).collect(),
                    };
                    (p.graph, p.embedding, summary)
                }
                None => {
                    let grid = hex_grid(r)?;
                    let h = GridEmbedding::identity(&grid);
                    let summary = GenSummary {
                        r,
                        vertices: grid.graph.vertex_count(),
                        edges: grid.graph.edge_count(),
                        seed: None,
                        forbidden: None,
                        gadgets: Vec::new(),
                    };
                    (grid.graph, h, summary)
                }
            };
            write_graph(&g, &out, &edges)?;
            if let Some(p) = embedding {
                write_json(&p, &h)?;
            }
            if out.is_some() {
                print_json(&summary)?;
            } else {
                eprintln!("{}", serde_json::to_string(&summary)?);
            }
            Ok(Status::Yes)
        }
        GridCmd::Embed { input, r, budget, out } => {
            let g = read_graph(&input)?;
            let outcome = embed_grid(&g, r, budget)?;
            print_json(&outcome)?;
            Ok(match outcome {
                EmbedOutcome::Found { embedding } => {
                    if let Some(p) = out {
                        write_json(&p, &embedding)?;
                    }
                    Status::Yes
                }
                EmbedOutcome::Absent { .. } => Status::No,
                EmbedOutcome::Exhausted | EmbedOutcome::BudgetExceeded => Status::Unknown,
            })
        }
        GridCmd::Reduce {
            input,
            k,
            forbid,
            embedding,
            r,
            budget,
            out,
        } => {
            let g = read_graph(&input)?;
            let f = forbidden_set(&g, &forbid)?;
            let mut cfg = ReductionConfig::new(k);
            cfg.budget = budget;
            let experimental = r.filter(|&r| r != cfg.r);
            if let Some(r) = r {
                cfg.r = r;
            }
            if experimental.is_some() {
                eprintln!("warning: radius {} differs from 2k+2 = {}; preservation is not guaranteed", cfg.r, 2 * k + 2);
            }
            let before = g.vertex_count();
            let (graph, forbidden, steps, stop) = match embedding {
                Some(p) => {
                    let h: GridEmbedding = read_json(&p)?;
                    if !is_flat(&h, &g)? {
                        bail!("{}: the embedded grid is not flat", p.display());
                    }
                    let red = reduce(&g, &f, &cfg, &h)?;
                    (red.graph, red.forbidden, 1, None)
                }
                None => {
                    let t = reduce_loop(&g, &f, &cfg)?;
                    (t.graph, t.forbidden, t.steps.len(), Some(t.stop))
                }
            };
            write_graph(&graph, &out, &None)?;
            let summary = ReduceSummary {
                vertices_before: before,
                vertices_after: graph.vertex_count(),
                steps,
                stop,
                forbidden,
                experimental_radius: experimental,
            };
            if out.is_some() {
                print_json(&summary)?;
            } else {
                eprintln!("{}", serde_json::to_string(&summary)?);
            }
            Ok(Status::Yes)
        }
    }
}

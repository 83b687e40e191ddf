use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Subcommand;
use kcross::graph::{crossed_pair, EdgeId};
use kcross::mso::{
    build_chi, eval, eval_witness, interpret_crossed, parse, Assignment, Elem, EvalOptions, Formula, MsoError,
};
use serde::Serialize;

use crate::{print_json, read_graph, read_text, Status};

#[derive(Subcommand)]
pub enum MsoCmd {
    /// Evaluate a formula on a graph.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        /// Set variable value, e.g. `Y=e0,e3,v1`.
        #[arg(long = "set")]
        sets: Vec<String>,
        /// Individual variable value, e.g. `x=v2`.
        #[arg(long = "elem")]
        elems: Vec<String>,
        /// Free individual variables to find witnesses for (comma separated).
        #[arg(long, value_delimiter = ',')]
        witness: Vec<String>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print the crossed-graph interpretation of a formula, or its χ family.
    Interpret {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, default_value = "x1")]
        x1: String,
        #[arg(long, default_value = "x2")]
        x2: String,
        /// Print χ_l built from the formula instead.
        #[arg(long)]
        chi: Option<usize>,
        /// Check the interpretation on this graph.
        #[arg(long, requires_all = ["e1", "e2"])]
        graph: Option<PathBuf>,
        #[arg(long)]
        e1: Option<u32>,
        #[arg(long)]
        e2: Option<u32>,
        /// Edge ids assigned to the free set variable `Y`.
        #[arg(long, value_delimiter = ',')]
        y: Vec<u32>,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(clap::Args)]
pub struct Limits {
    /// Largest universe on which set quantifiers are evaluated.
    #[arg(long, default_value_t = 64, env = "KCROSS_MSO_MAX_UNIVERSE")]
    max_universe: usize,
    /// Evaluation step budget.
    #[arg(long, env = "KCROSS_MAX_NODES")]
    max_steps: Option<u64>,
}

impl Limits {
    fn options(&self) -> EvalOptions {
        EvalOptions {
            max_set_universe: self.max_universe,
            max_steps: self.max_steps,
        }
    }
}

fn read_formula(path: &PathBuf) -> Result<Formula> {
    let text = read_text(path)?;
    parse(&text).with_context(|| format!("{}", path.display()))
}

fn parse_binding(s: &str) -> Result<(&str, &str)> {
    s.split_once('=').with_context(|| format!("`{s}` is not of the form NAME=VALUE"))
}

fn elem(s: &str) -> Result<Elem> {
    s.trim().parse().with_context(|| format!("bad element `{s}`"))
}

/// Maps a budget overrun to exit status 2.
fn outcome(r: std::result::Result<bool, MsoError>) -> Result<Option<bool>> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(MsoError::Budget(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct InterpretCheck {
    original: Option<bool>,
    crossed: Option<bool>,
    agree: bool,
}

pub fn run(cmd: MsoCmd) -> Result<Status> {
    match cmd {
        MsoCmd::Eval {
            graph,
            formula,
            sets,
            elems,
            witness,
            limits,
        } => {
            let g = read_graph(&graph)?;
            let f = read_formula(&formula)?;
            let mut a = Assignment::new();
            for s in &sets {
                let (name, vals) = parse_binding(s)?;
                let vals: Vec<Elem> = vals.split(',').filter(|t| !t.is_empty()).map(elem).collect::<Result<_>>()?;
                a = a.with_set(name, vals);
            }
            for s in &elems {
                let (name, val) = parse_binding(s)?;
                a = a.with_elem(name, elem(val)?);
            }
            let opts = limits.options();
            if witness.is_empty() {
                return Ok(match outcome(eval(&g, &a, &f, &opts))? {
                    Some(b) => {
                        println!("{b}");
                        if b { Status::Yes } else { Status::No }
                    }
                    None => {
                        println!("unknown");
                        Status::Unknown
                    }
                });
            }
            let vars: Vec<&str> = witness.iter().map(String::as_str).collect();
            match eval_witness(&g, &a, &f, &vars, &opts) {
                Ok(Some(w)) => {
                    println!("true");
                    let w: BTreeMap<String, String> = w.into_iter().map(|(k, v)| (k, v.to_string())).collect();
                    print_json(&w)?;
                    Ok(Status::Yes)
                }
                Ok(None) => {
                    println!("false");
                    Ok(Status::No)
                }
                Err(MsoError::Budget(_)) => {
                    println!("unknown");
                    Ok(Status::Unknown)
                }
                Err(e) => Err(e.into()),
            }
        }
        MsoCmd::Interpret {
            formula,
            x1,
            x2,
            chi,
            graph,
            e1,
            e2,
            y,
            limits,
        } => {
            let f = read_formula(&formula)?;
            if let Some(l) = chi {
                if graph.is_some() {
                    bail!("--chi cannot be combined with --graph");
                }
                let fam = build_chi(l, &f)?;
                println!("{}", fam.chi);
                eprintln!("sizes {:?}", fam.psi_sizes());
                return Ok(Status::Yes);
            }
            let star = interpret_crossed(&f, &x1, &x2)?;
            println!("{star}");
            let (Some(path), Some(e1), Some(e2)) = (graph, e1, e2) else {
                return Ok(Status::Yes);
            };
            let g = read_graph(&path)?;
            let (e1, e2) = (EdgeId(e1), EdgeId(e2));
            let ys: Vec<Elem> = y.iter().map(|&e| Elem::E(EdgeId(e))).collect();
            for e in y.iter().map(|&e| EdgeId(e)).chain([e1, e2]) {
                if !g.has_edge(e) {
                    bail!("edge {e} is not an edge of {}", path.display());
                }
            }
            if ys.contains(&Elem::E(e1)) || ys.contains(&Elem::E(e2)) {
                bail!("Y must not contain the crossed edges");
            }
            let opts = limits.options();
            let a = Assignment::new()
                .with_elem(&x1, Elem::E(e1))
                .with_elem(&x2, Elem::E(e2))
                .with_set("Y", ys.clone());
            let original = outcome(eval(&g, &a, &star, &opts))?;
            let crossed = crossed_pair(&g, e1, e2)?.graph;
            let crossed = outcome(eval(&crossed, &Assignment::new().with_set("Y", ys), &f, &opts))?;
            let agree = original.is_some() && original == crossed;
            print_json(&InterpretCheck { original, crossed, agree })?;
            Ok(if original.is_none() || crossed.is_none() {
                Status::Unknown
            } else if agree {
                Status::Yes
            } else {
                Status::No
            })
        }
    }
}

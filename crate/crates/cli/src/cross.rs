use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Subcommand;
use kcross::drawing::{emit_svg, realize, validate, Drawing, ValidationReport};
use kcross::graph::{EdgeId, EdgeSet, MultiGraph, VertexId};
use kcross::grid::{reduce_loop, ReductionConfig, StopReason};
use kcross::solver::{SolveOptions, crossing_number, decide_k_good, lower_bound, CrossingWitness, SolveError, Verdict};
use serde::{Deserialize, Serialize};

use crate::{forbidden_set, print_json, read_graph, read_json, write_file, write_json, BudgetArgs, Status};

#[derive(Subcommand)]
pub enum CrossCmd {
    /// Decide whether the graph has a k-good drawing.
    Decide {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Edge ids that must not be crossed (comma separated).
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<u32>,
        /// Contract flat grids before searching.
        #[arg(long)]
        reduce: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Outputs,
    },
    /// Compute the crossing number with a validated drawing.
    Number {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Outputs,
    },
    /// Draw a witness from a report, or an optimal drawing if none is given.
    Draw {
        #[arg(long = "in")]
        input: PathBuf,
        /// Report whose witness is drawn.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Outputs,
    },
    /// Re-check a report, or a drawing of a graph.
    Validate {
        /// Report written by `decide`, `number` or `draw`.
        #[arg(long, conflicts_with_all = ["input", "drawing"])]
        report: Option<PathBuf>,
        #[arg(long = "in", requires = "drawing")]
        input: Option<PathBuf>,
        #[arg(long)]
        drawing: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<u32>,
    },
}

#[derive(clap::Args)]
pub struct Outputs {
    /// JSON report path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// SVG drawing path.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// JSON drawing path.
    #[arg(long)]
    drawing: Option<PathBuf>,
    /// Record elapsed time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepSummary {
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub v_i: VertexId,
    pub contracted: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionSummary {
    pub steps: Vec<StepSummary>,
    pub stop: StopReason,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationSummary {
    pub valid: bool,
    pub crossing_count: usize,
    pub declared_matches: bool,
    pub k_good: bool,
}

impl From<&ValidationReport> for ValidationSummary {
    fn from(v: &ValidationReport) -> Self {
        ValidationSummary {
            valid: v.is_valid(),
            crossing_count: v.crossing_count,
            declared_matches: v.declared_matches,
            k_good: v.k_good,
        }
    }
}

/// Everything needed to re-check a run standalone. `graph` and
/// `forbidden` are the instance the witness refers to, which is the
/// reduced one under `--reduce`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossReport {
    pub command: String,
    pub graph: MultiGraph,
    pub forbidden: EdgeSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossing_number: Option<usize>,
    pub lower_bound: usize,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CrossingWitness>,
    /// Witness pairs as edges of `graph`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub original_pairs: Vec<(EdgeId, EdgeId)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drawing: Option<Drawing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl CrossReport {
    fn new(command: &str, graph: MultiGraph, forbidden: EdgeSet) -> Self {
        CrossReport {
            command: command.into(),
            lower_bound: lower_bound(&graph),
            graph,
            forbidden,
            k: None,
            verdict: Verdict::Unknown,
            crossing_number: None,
            nodes: 0,
            witness: None,
            original_pairs: Vec::new(),
            drawing: None,
            validation: None,
            reduction: None,
            elapsed_ms: None,
        }
    }

    /// Draws the witness and audits the drawing.
    fn attach(&mut self, w: CrossingWitness, k: usize) -> Result<()> {
        let d = realize(&self.graph, &w).context("drawing the witness")?;
        let v = validate(&self.graph, &self.forbidden, &d, k);
        self.original_pairs = w.original_pairs();
        self.validation = Some((&v).into());
        self.drawing = Some(d);
        self.witness = Some(w);
        Ok(())
    }

    fn emit(&mut self, out: &Outputs, start: Instant) -> Result<()> {
        if out.timing {
            self.elapsed_ms = Some(start.elapsed().as_millis());
        }
        if let Some(p) = &out.report {
            write_json(p, self)?;
        }
        if let Some(d) = &self.drawing {
            if let Some(p) = &out.svg {
                write_file(p, &emit_svg(d))?;
            }
            if let Some(p) = &out.drawing {
                write_json(p, d)?;
            }
        } else if out.svg.is_some() || out.drawing.is_some() {
            eprintln!("note: no drawing produced");
        }
        Ok(())
    }
}

fn status(v: Verdict) -> Status {
    match v {
        Verdict::Yes => Status::Yes,
        Verdict::No => Status::No,
        Verdict::Unknown => Status::Unknown,
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

pub fn run(cmd: CrossCmd) -> Result<Status> {
    let start = Instant::now();
    match cmd {
        CrossCmd::Decide {
            input,
            k,
            forbid,
            reduce,
            budget,
            out,
        } => {
            let opts = budget.options()?;
            let g = read_graph(&input)?;
            let f = forbidden_set(&g, &forbid)?;
            let mut report = if reduce {
                let trace = reduce_loop(&g, &f, &ReductionConfig::new(k))?;
                let mut r = CrossReport::new("decide", trace.graph, trace.forbidden);
                r.reduction = Some(ReductionSummary {
                    steps: trace
                        .steps
                        .iter()
                        .map(|s| StepSummary {
                            vertices_before: s.vertices_before,
                            vertices_after: s.vertices_after,
                            v_i: s.v_i,
                            contracted: s.contracted.len(),
                        })
                        .collect(),
                    stop: trace.stop,
                });
                r
            } else {
                CrossReport::new("decide", g, f)
            };
            let solved = decide_k_good(&report.graph, &report.forbidden, k, &opts)?;
            report.k = Some(k);
            report.verdict = solved.verdict;
            report.nodes = solved.nodes;
            if let Some(w) = solved.witness {
                report.attach(w, k)?;
            }
            println!("{}", verdict_word(report.verdict));
            report.emit(&out, start)?;
            Ok(status(report.verdict))
        }
        CrossCmd::Number { input, budget, out } => {
            let opts = budget.options()?;
            let g = read_graph(&input)?;
            number(g, &opts, "number", &out, start)
        }
        CrossCmd::Draw {
            input,
            witness,
            budget,
            out,
        } => {
            let g = read_graph(&input)?;
            let Some(path) = witness else {
                return number(g, &budget.options()?, "draw", &out, start);
            };
            let src: CrossReport = read_json(&path)?;
            let w = src.witness.with_context(|| format!("{} carries no witness", path.display()))?;
            if src.graph != g {
                bail!("{} was computed for a different graph than {}", path.display(), input.display());
            }
            let mut report = CrossReport::new("draw", g, src.forbidden);
            report.k = Some(src.k.unwrap_or(w.len()));
            report.verdict = Verdict::Yes;
            report.attach(w, report.k.unwrap())?;
            println!("{}", report.validation.as_ref().map_or(0, |v| v.crossing_count));
            report.emit(&out, start)?;
            Ok(Status::Yes)
        }
        CrossCmd::Validate {
            report,
            input,
            drawing,
            k,
            forbid,
        } => match (report, input, drawing) {
            (Some(p), _, _) => check_report(&read_json(&p)?, k),
            (None, Some(i), Some(d)) => {
                let g = read_graph(&i)?;
                let f = forbidden_set(&g, &forbid)?;
                let d: Drawing = read_json(&d)?;
                let v = validate(&g, &f, &d, k.unwrap_or(usize::MAX));
                print_json(&v)?;
                Ok(if v.is_valid() && v.k_good && v.declared_matches { Status::Yes } else { Status::No })
            }
            _ => bail!("give --report, or --in with --drawing"),
        },
    }
}

fn number(g: MultiGraph, opts: &SolveOptions, cmd: &str, out: &Outputs, start: Instant) -> Result<Status> {
    let mut report = CrossReport::new(cmd, g, EdgeSet::new());
    match crossing_number(&report.graph, opts) {
        Ok(cn) => {
            report.verdict = Verdict::Yes;
            report.crossing_number = Some(cn.value);
            report.k = Some(cn.value);
            report.nodes = cn.nodes;
            report.attach(cn.witness, cn.value)?;
            println!("{}", cn.value);
        }
        Err(SolveError::BudgetExceeded { lower }) => {
            report.lower_bound = report.lower_bound.max(lower);
            println!("unknown (at least {lower})");
        }
        Err(e) => return Err(e.into()),
    }
    report.emit(out, start)?;
    Ok(status(report.verdict))
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

fn check_report(r: &CrossReport, k: Option<usize>) -> Result<Status> {
    let mut checks = Vec::new();
    let mut push = |name, res: std::result::Result<(), String>| {
        checks.push(Check {
            name,
            ok: res.is_ok(),
            detail: res.err(),
        })
    };
    push(
        "forbidden_edges_exist",
        r.forbidden.check(&r.graph).map_err(|e| e.to_string()),
    );
    let k = k.or(r.k);
    if let Some(w) = &r.witness {
        let bound = k.unwrap_or(w.len());
        push("witness", w.validate(&r.graph, &r.forbidden, bound).map_err(|e| e.to_string()));
        if let Some(d) = &r.drawing {
            let v = validate(&r.graph, &r.forbidden, d, bound);
            push(
                "drawing",
                if v.is_valid() { Ok(()) } else { Err(format!("{:?}", v.violations)) },
            );
            push(
                "drawing_k_good",
                if v.k_good { Ok(()) } else { Err(format!("{} crossings", v.crossing_count)) },
            );
            push(
                "declared_crossings",
                if v.declared_matches { Ok(()) } else { Err("declared crossings differ".into()) },
            );
            push(
                "crossings_match_witness",
                if v.crossing_count == w.len() {
                    Ok(())
                } else {
                    Err(format!("{} crossings, {} pairs", v.crossing_count, w.len()))
                },
            );
        }
        if let Some(cn) = r.crossing_number {
            push(
                "value_matches_witness",
                if cn == w.len() { Ok(()) } else { Err(format!("{cn} vs {}", w.len())) },
            );
            let lb = lower_bound(&r.graph);
            push(
                "lower_bound_certifies",
                if lb == cn { Ok(()) } else { Err(format!("lower bound {lb} < {cn}; optimality rests on the search")) },
            );
        }
    } else if r.verdict == Verdict::Yes {
        push("witness", Err("verdict yes without a witness".into()));
    }
    let ok = checks.iter().all(|c| c.ok || c.name == "lower_bound_certifies");
    print_json(&checks)?;
    Ok(if ok { Status::Yes } else { Status::No })
}

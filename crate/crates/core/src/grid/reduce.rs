use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{embed_grid, hex_grid, EmbedOutcome, EmbeddingError, GridEmbedding, GridError, HexGrid};
use crate::graph::{contract_connected, h_components, EdgeSet, HComponent, MultiGraph, SubGraph, VertexId};
use crate::planarity::planar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionConfig {
    pub k: usize,
    pub r: usize,
    /// Step budget for each grid search.
    pub budget: u64,
}

impl ReductionConfig {
    pub fn new(k: usize) -> Self {
        ReductionConfig {
            k,
            r: 2 * k + 2,
            budget: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub graph: MultiGraph,
    pub forbidden: EdgeSet,
    pub v_i: VertexId,
    /// Vertices of `G` merged into `v_i`.
    pub contracted: BTreeSet<VertexId>,
}

struct Layout {
    grid: HexGrid,
    /// `h(H_r)`.
    image: SubGraph,
    /// Attachments of `h(H_r)`.
    attachments: Vec<HComponent>,
}

/// Vertices of `h(H^i)` that are not on `h(C_i)`.
fn interior(grid: &HexGrid, h: &GridEmbedding, g: &MultiGraph, i: usize) -> BTreeSet<VertexId> {
    let inner = h.image(grid, g, &grid.inner(i));
    let cycle = h.cycle_image(grid, g, i);
    inner.vertices.difference(&cycle.vertices).copied().collect()
}

fn layout(h: &GridEmbedding, g: &MultiGraph) -> Result<Layout, GridError> {
    let grid = hex_grid(h.r)?;
    h.check(&grid, g)?;
    let image = h.image(&grid, g, &SubGraph::whole(&grid.graph));
    let inside = interior(&grid, h, g, h.r);
    let attachments = h_components(g, &image)?
        .into_iter()
        .filter(|c| !c.attachments.is_disjoint(&inside))
        .collect();
    Ok(Layout {
        grid,
        image,
        attachments,
    })
}

/// The `h(H_r)`-components of `g` that touch the interior `h(H_r ∖ C_r)`.
pub fn attachments(h: &GridEmbedding, g: &MultiGraph) -> Result<Vec<HComponent>, GridError> {
    Ok(layout(h, g)?.attachments)
}

fn flat(l: &Layout, g: &MultiGraph) -> Result<bool, GridError> {
    let mut union = l.image.clone();
    for a in &l.attachments {
        union.union_with(&a.sub);
    }
    Ok(planar(&g.subgraph(&union)?))
}

/// Whether `h(H_r)` together with all its attachments is planar.
pub fn is_flat(h: &GridEmbedding, g: &MultiGraph) -> Result<bool, GridError> {
    flat(&layout(h, g)?, g)
}

/// `K_i`: `h(H^i)` plus the attachments meeting `h(H^i ∖ C_i)`.
fn k_part(l: &Layout, h: &GridEmbedding, g: &MultiGraph, i: usize) -> SubGraph {
    let mut k = h.image(&l.grid, g, &l.grid.inner(i));
    let inside = interior(&l.grid, h, g, i);
    for a in &l.attachments {
        if !a.attachments.is_disjoint(&inside) {
            k.union_with(&a.sub);
        }
    }
    k
}

/// `F_2, …, F_r`: the edges of `K_i` with an endpoint on `h(C_i)`.
pub fn f_sets(h: &GridEmbedding, g: &MultiGraph) -> Result<Vec<EdgeSet>, GridError> {
    let l = layout(h, g)?;
    Ok((2..=h.r)
        .map(|i| {
            let k = k_part(&l, h, g, i);
            let on_c = h.cycle_image(&l.grid, g, i).vertices;
            k.edges
                .iter()
                .copied()
                .filter(|&e| {
                    let (u, v) = g.endpoints(e).expect("edge of g");
                    on_c.contains(&u) || on_c.contains(&v)
                })
                .collect()
        })
        .collect())
}

/// Contracts `I = K_2 ∖ h(C_2)` to a new vertex and forbids crossings on
/// `h(C_2)` and on every edge at the new vertex.
pub fn reduce(
    g: &MultiGraph,
    forbidden: &EdgeSet,
    cfg: &ReductionConfig,
    h: &GridEmbedding,
) -> Result<Reduction, GridError> {
    if h.r < 2 {
        return Err(GridError::Radius { got: h.r, min: 2 });
    }
    if h.r != cfg.r {
        return Err(EmbeddingError::Radius { got: h.r, want: cfg.r }.into());
    }
    forbidden.check(g)?;
    let l = layout(h, g)?;
    if !flat(&l, g)? {
        return Err(GridError::NotFlat);
    }
    let k = k_part(&l, h, g, 2);
    let c = h.cycle_image(&l.grid, g, 2);
    let set: BTreeSet<VertexId> = k.vertices.difference(&c.vertices).copied().collect();
    if set.is_empty() {
        return Err(GridError::Malformed("empty"));
    }
    let (graph, v_i) = contract_connected(g, &set).map_err(|e| match e {
        crate::graph::GraphError::NotConnected => GridError::Malformed("disconnected"),
        other => other.into(),
    })?;
    let mut f: EdgeSet = forbidden.iter().filter(|&e| graph.has_edge(e)).collect();
    for &e in &c.edges {
        f.insert(e);
    }
    for &e in graph.incident(v_i) {
        f.insert(e);
    }
    Ok(Reduction {
        graph,
        forbidden: f,
        v_i,
        contracted: set,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// The graph is provably too small for `H_r`.
    Absent,
    /// The grid search finished without finding `H_r`.
    NotFound,
    /// The grid search ran out of budget.
    BudgetExceeded,
    /// A grid was found but it is not flat.
    NotFlat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub v_i: VertexId,
    pub contracted: BTreeSet<VertexId>,
    pub embedding: GridEmbedding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub graph: MultiGraph,
    pub forbidden: EdgeSet,
    pub steps: Vec<ReductionStep>,
    pub stop: StopReason,
}

/// Finds and contracts flat grids until none is found.
pub fn reduce_loop(
    g: &MultiGraph,
    forbidden: &EdgeSet,
    cfg: &ReductionConfig,
) -> Result<ReductionTrace, GridError> {
    if cfg.r < 2 {
        return Err(GridError::Radius { got: cfg.r, min: 2 });
    }
    let mut graph = g.clone();
    let mut f = forbidden.clone();
    let mut steps = Vec::new();
    let stop = loop {
        let h = match embed_grid(&graph, cfg.r, cfg.budget)? {
            EmbedOutcome::Found { embedding } => embedding,
            EmbedOutcome::Absent { .. } => break StopReason::Absent,
            EmbedOutcome::Exhausted => break StopReason::NotFound,
            EmbedOutcome::BudgetExceeded => break StopReason::BudgetExceeded,
        };
        let red = match reduce(&graph, &f, cfg, &h) {
            Ok(red) => red,
            Err(GridError::NotFlat) => break StopReason::NotFlat,
            Err(e) => return Err(e),
        };
        steps.push(ReductionStep {
            vertices_before: graph.vertex_count(),
            vertices_after: red.graph.vertex_count(),
            v_i: red.v_i,
            contracted: red.contracted,
            embedding: h,
        });
        graph = red.graph;
        f = red.forbidden;
    };
    Ok(ReductionTrace {
        graph,
        forbidden: f,
        steps,
        stop,
    })
}

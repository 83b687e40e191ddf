//! Hexagonal grids, topological grid embeddings, flatness and the
//! contraction step that shrinks a graph around a flat grid.
//!
//! `H_r` is the honeycomb made of all hexagonal cells within hex distance
//! `r − 1` of a central cell. A corner belongs to ring `i` when the nearest
//! cell containing it is at distance `i − 1`; ring `i` is the principal
//! cycle `C_i`, of length `6(2i − 1)`. Vertex identifiers run ring by ring
//! in cyclic order, starting from the innermost ring.

mod embed;
pub mod planted;
mod reduce;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, GraphError, MultiGraph, SubGraph, VertexId};

pub use embed::{embed_grid, EmbedOutcome};
pub use reduce::{
    attachments, f_sets, is_flat, reduce, reduce_loop, Reduction, ReductionConfig, ReductionStep,
    ReductionTrace, StopReason,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("grid radius must be at least {min}, got {got}")]
    Radius { got: usize, min: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid embedding: {0}")]
    Embedding(#[from] EmbeddingError),
    #[error("embedding is not flat")]
    NotFlat,
    #[error("contracted part is {0}")]
    Malformed(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexGrid {
    pub r: usize,
    pub graph: MultiGraph,
    /// Principal cycles `C_1..C_r`, vertices in cyclic order.
    pub cycles: Vec<Vec<VertexId>>,
    /// Edges of each principal cycle, aligned with `cycles`.
    pub cycle_edges: Vec<Vec<EdgeId>>,
}

impl HexGrid {
    /// Ring number (1-based) of a grid vertex.
    pub fn ring(&self, v: VertexId) -> usize {
        let mut seen = 0;
        for (i, c) in self.cycles.iter().enumerate() {
            seen += c.len();
            if (v.0 as usize) < seen {
                return i + 1;
            }
        }
        panic!("vertex {v} not in grid")
    }

    /// `H^i`: the subgrid bounded by `C_i`.
    pub fn inner(&self, i: usize) -> SubGraph {
        let mut sub = SubGraph::new();
        sub.vertices = self
            .graph
            .vertices()
            .filter(|&v| self.ring(v) <= i)
            .collect();
        sub.edges = self
            .graph
            .edges()
            .filter(|&(_, u, v)| self.ring(u) <= i && self.ring(v) <= i)
            .map(|(e, _, _)| e)
            .collect();
        sub
    }
}

fn hex_distance(q: i32, r: i32) -> i32 {
    (q.abs() + r.abs() + (q + r).abs()) / 2
}

/// Builds `H_r`.
pub fn hex_grid(r: usize) -> Result<HexGrid, GridError> {
    if r == 0 {
        return Err(GridError::Radius { got: 0, min: 1 });
    }
    let reach = r as i32 - 1;
    let sqrt3 = 3f64.sqrt();
    // Corner positions keyed on rounded coordinates so shared corners merge.
    let key = |x: f64, y: f64| ((x * 1000.0).round() as i64, (y * 1000.0).round() as i64);
    let mut corners: BTreeMap<(i64, i64), (f64, f64, usize)> = BTreeMap::new();
    let mut cell_edges: BTreeSet<((i64, i64), (i64, i64))> = BTreeSet::new();
    for q in -reach..=reach {
        for s in -reach..=reach {
            let d = hex_distance(q, s);
            if d > reach {
                continue;
            }
            let cx = 1.5 * q as f64;
            let cy = sqrt3 * (s as f64 + q as f64 / 2.0);
            let pts: Vec<(i64, i64)> = (0..6)
                .map(|i| {
                    let a = std::f64::consts::PI / 3.0 * i as f64;
                    let (x, y) = (cx + a.cos(), cy + a.sin());
                    let k = key(x, y);
                    let entry = corners.entry(k).or_insert((x, y, d as usize + 1));
                    entry.2 = entry.2.min(d as usize + 1);
                    k
                })
                .collect();
            for i in 0..6 {
                let (a, b) = (pts[i], pts[(i + 1) % 6]);
                cell_edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    // Rings in cyclic order by angle; each ring is star-shaped around the
    // centre, and ties cannot occur because ring vertices have distinct
    // angles.
    let mut rings: Vec<Vec<(i64, i64)>> = vec![Vec::new(); r];
    for (&k, &(_, _, ring)) in &corners {
        rings[ring - 1].push(k);
    }
    let angle = |k: &(i64, i64)| {
        let (x, y, _) = corners[k];
        let a = y.atan2(x);
        if a < -1e-9 {
            a + 2.0 * std::f64::consts::PI
        } else {
            a.max(0.0)
        }
    };
    let mut ids: BTreeMap<(i64, i64), VertexId> = BTreeMap::new();
    let mut cycles = Vec::with_capacity(r);
    for ring in &mut rings {
        ring.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
        let mut cyc = Vec::with_capacity(ring.len());
        for &k in ring.iter() {
            let id = VertexId(ids.len() as u32);
            ids.insert(k, id);
            cyc.push(id);
        }
        cycles.push(cyc);
    }
    let mut pairs: Vec<(u32, u32)> = cell_edges
        .iter()
        .map(|(a, b)| {
            let (u, v) = (ids[a].0, ids[b].0);
            (u.min(v), u.max(v))
        })
        .collect();
    pairs.sort();
    let graph = MultiGraph::from_edges(ids.len() as u32, &pairs)?;
    let mut cycle_edges = Vec::with_capacity(r);
    for cyc in &cycles {
        let mut list = Vec::with_capacity(cyc.len());
        for i in 0..cyc.len() {
            let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            let e = graph
                .incident(a)
                .iter()
                .copied()
                .find(|&e| graph.opposite(e, a) == Some(b))
                .ok_or(GridError::Malformed("a ring that is not a cycle"))?;
            list.push(e);
        }
        cycle_edges.push(list);
    }
    Ok(HexGrid {
        r,
        graph,
        cycles,
        cycle_edges,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("radius {got} does not match grid radius {want}")]
    Radius { got: usize, want: usize },
    #[error("grid vertex {0} has no image")]
    MissingVertex(VertexId),
    #[error("grid edge {0} has no path")]
    MissingEdge(EdgeId),
    #[error("image {0} is not a vertex of the graph")]
    UnknownImage(VertexId),
    #[error("grid vertices {0} and {1} share an image")]
    NotInjective(VertexId, VertexId),
    #[error("path of grid edge {0} does not join the images of its ends")]
    BrokenPath(EdgeId),
    #[error("path of grid edge {edge} passes through branch vertex {vertex}")]
    ThroughBranch { edge: EdgeId, vertex: VertexId },
    #[error("paths of grid edges {0} and {1} are not internally disjoint")]
    NotDisjoint(EdgeId, EdgeId),
}

/// A topological embedding `h: H_r → G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEmbedding {
    pub r: usize,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    /// Path in `G` for every grid edge, listed from the image of the grid
    /// edge's first endpoint.
    pub edge_paths: BTreeMap<EdgeId, Vec<EdgeId>>,
}

impl GridEmbedding {
    /// The identity embedding of a grid into itself.
    pub fn identity(grid: &HexGrid) -> Self {
        GridEmbedding {
            r: grid.r,
            vertex_map: grid.graph.vertices().map(|v| (v, v)).collect(),
            edge_paths: grid.graph.edge_ids().map(|e| (e, vec![e])).collect(),
        }
    }

    /// Vertex sequence of the path of grid edge `e`.
    fn walk(&self, grid: &HexGrid, g: &MultiGraph, e: EdgeId) -> Result<Vec<VertexId>, EmbeddingError> {
        let (a, b) = grid.graph.endpoints(e).ok_or(EmbeddingError::MissingEdge(e))?;
        let path = self.edge_paths.get(&e).ok_or(EmbeddingError::MissingEdge(e))?;
        let start = *self.vertex_map.get(&a).ok_or(EmbeddingError::MissingVertex(a))?;
        let end = *self.vertex_map.get(&b).ok_or(EmbeddingError::MissingVertex(b))?;
        let mut seq = vec![start];
        let mut cur = start;
        for &pe in path {
            cur = g.opposite(pe, cur).ok_or(EmbeddingError::BrokenPath(e))?;
            seq.push(cur);
        }
        if path.is_empty() || cur != end {
            return Err(EmbeddingError::BrokenPath(e));
        }
        Ok(seq)
    }

    /// Condition 1: the vertex map is total and injective.
    pub fn check_injective(&self, grid: &HexGrid, g: &MultiGraph) -> Result<(), EmbeddingError> {
        let mut seen: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for v in grid.graph.vertices() {
            let img = *self.vertex_map.get(&v).ok_or(EmbeddingError::MissingVertex(v))?;
            if !g.has_vertex(img) {
                return Err(EmbeddingError::UnknownImage(img));
            }
            if let Some(&u) = seen.get(&img) {
                return Err(EmbeddingError::NotInjective(u, v));
            }
            seen.insert(img, v);
        }
        Ok(())
    }

    /// Condition 3: each path joins the images of its grid edge's ends and
    /// meets no other branch vertex.
    pub fn check_endpoints(&self, grid: &HexGrid, g: &MultiGraph) -> Result<(), EmbeddingError> {
        let branch: BTreeSet<VertexId> = self.vertex_map.values().copied().collect();
        for e in grid.graph.edge_ids() {
            let seq = self.walk(grid, g, e)?;
            if let Some(&v) = seq[1..seq.len() - 1].iter().find(|v| branch.contains(v)) {
                return Err(EmbeddingError::ThroughBranch { edge: e, vertex: v });
            }
        }
        Ok(())
    }

    /// Condition 2: paths are internally disjoint (no shared edge, no
    /// shared or repeated inner vertex).
    pub fn check_disjoint(&self, grid: &HexGrid, g: &MultiGraph) -> Result<(), EmbeddingError> {
        let mut vowner: BTreeMap<VertexId, EdgeId> = BTreeMap::new();
        let mut eowner: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        for e in grid.graph.edge_ids() {
            let seq = self.walk(grid, g, e)?;
            for &pe in &self.edge_paths[&e] {
                if let Some(&o) = eowner.get(&pe) {
                    return Err(EmbeddingError::NotDisjoint(o, e));
                }
                eowner.insert(pe, e);
            }
            for &v in &seq[1..seq.len() - 1] {
                if let Some(&o) = vowner.get(&v) {
                    return Err(EmbeddingError::NotDisjoint(o, e));
                }
                vowner.insert(v, e);
            }
        }
        Ok(())
    }

    pub fn check(&self, grid: &HexGrid, g: &MultiGraph) -> Result<(), EmbeddingError> {
        if self.r != grid.r {
            return Err(EmbeddingError::Radius {
                got: self.r,
                want: grid.r,
            });
        }
        self.check_injective(grid, g)?;
        self.check_endpoints(grid, g)?;
        self.check_disjoint(grid, g)
    }

    /// Image of a subgrid: branch vertices, path edges and inner vertices.
    pub fn image(&self, grid: &HexGrid, g: &MultiGraph, sub: &SubGraph) -> SubGraph {
        let mut out = SubGraph::new();
        for v in &sub.vertices {
            out.vertices.insert(self.vertex_map[v]);
        }
        for e in &sub.edges {
            for &pe in &self.edge_paths[e] {
                out.add_edge_of(g, pe);
            }
        }
        debug_assert!(grid.graph.edge_count() >= sub.edges.len());
        out
    }

    /// Image of the principal cycle `C_i` (1-based).
    pub fn cycle_image(&self, grid: &HexGrid, g: &MultiGraph, i: usize) -> SubGraph {
        let sub = SubGraph {
            vertices: grid.cycles[i - 1].iter().copied().collect(),
            edges: grid.cycle_edges[i - 1].iter().copied().collect(),
        };
        self.image(grid, g, &sub)
    }
}

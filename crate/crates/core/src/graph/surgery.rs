//! Graph surgeries: crossed pairs, subdivision, contraction and H-components.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{EdgeId, EdgeSet, GraphError, MultiGraph, SubGraph, VertexId};

/// One new edge created by crossing a pair: it joins the dummy vertex to
/// `endpoint`, which was an endpoint of `origin`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedEnd {
    pub edge: EdgeId,
    pub origin: EdgeId,
    pub endpoint: VertexId,
}

/// Provenance of a single `G^{e1×e2}` step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingRecord {
    pub pair: (EdgeId, EdgeId),
    pub first_ends: (VertexId, VertexId),
    pub second_ends: (VertexId, VertexId),
    pub dummy: VertexId,
    /// Ordered as: both ends of the first edge, then both ends of the second.
    pub ends: [CrossedEnd; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedGraph {
    pub graph: MultiGraph,
    pub crossings: Vec<CrossingRecord>,
}

/// `G^{e1×e2}`: deletes `e1` and `e2`, adds a dummy vertex joined to the four
/// endpoint slots of the two edges.
///
/// Adjacent edges are accepted; a shared endpoint then receives two parallel
/// edges from the dummy vertex.
pub fn crossed_pair(g: &MultiGraph, e1: EdgeId, e2: EdgeId) -> Result<CrossedGraph, GraphError> {
    let mut out = g.clone();
    let record = cross_in_place(&mut out, e1, e2)?;
    Ok(CrossedGraph {
        graph: out,
        crossings: vec![record],
    })
}

fn cross_in_place(g: &mut MultiGraph, e1: EdgeId, e2: EdgeId) -> Result<CrossingRecord, GraphError> {
    if e1 == e2 {
        return Err(GraphError::SameEdge(e1));
    }
    let (a, b) = g.endpoints(e1).ok_or(GraphError::UnknownEdge(e1))?;
    let (c, d) = g.endpoints(e2).ok_or(GraphError::UnknownEdge(e2))?;
    // Fresh edge ids are taken before deletion so that e1/e2 are never reused.
    let base = g.next_edge_id().0;
    g.remove_edge(e1)?;
    g.remove_edge(e2)?;
    let x = g.push_vertex();
    let slots = [(e1, a), (e1, b), (e2, c), (e2, d)];
    let mut ends = [CrossedEnd {
        edge: EdgeId(0),
        origin: e1,
        endpoint: a,
    }; 4];
    for (i, &(origin, endpoint)) in slots.iter().enumerate() {
        let edge = EdgeId(base + i as u32);
        g.add_edge(edge, x, endpoint)?;
        ends[i] = CrossedEnd {
            edge,
            origin,
            endpoint,
        };
    }
    Ok(CrossingRecord {
        pair: (e1, e2),
        first_ends: (a, b),
        second_ends: (c, d),
        dummy: x,
        ends,
    })
}

/// `G^{×ē}`: crosses the given pairs one after another.
pub fn crossed_sequence(
    g: &MultiGraph,
    pairs: &[(EdgeId, EdgeId)],
) -> Result<CrossedGraph, GraphError> {
    let mut seen = BTreeSet::new();
    for &(a, b) in pairs {
        if a == b {
            return Err(GraphError::SameEdge(a));
        }
        for e in [a, b] {
            if !g.has_edge(e) {
                return Err(GraphError::UnknownEdge(e));
            }
            if !seen.insert(e) {
                return Err(GraphError::RepeatedEdge(e));
            }
        }
    }
    let mut out = g.clone();
    let mut crossings = Vec::with_capacity(pairs.len());
    for &(a, b) in pairs {
        crossings.push(cross_in_place(&mut out, a, b)?);
    }
    Ok(CrossedGraph {
        graph: out,
        crossings,
    })
}

/// Inverse of one crossing step: removes the dummy vertex and restores the
/// two original edges with their original identifiers.
pub fn uncross(g: &MultiGraph, record: &CrossingRecord) -> Result<MultiGraph, GraphError> {
    let mut out = g.clone();
    out.remove_vertex(record.dummy)?;
    let (e1, e2) = record.pair;
    out.add_edge(e1, record.first_ends.0, record.first_ends.1)?;
    out.add_edge(e2, record.second_ends.0, record.second_ends.1)?;
    Ok(out)
}

/// The path that replaced one original edge, listed from `ends.0` to `ends.1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdividedEdge {
    pub original: EdgeId,
    pub ends: (VertexId, VertexId),
    pub inner: Vec<VertexId>,
    pub pieces: Vec<EdgeId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionMap {
    /// Number of subdivision vertices per edge.
    pub t: usize,
    pub paths: Vec<SubdividedEdge>,
}

impl SubdivisionMap {
    /// Original edge and position along its path for a piece.
    pub fn origin_of(&self, piece: EdgeId) -> Option<(EdgeId, usize)> {
        self.paths.iter().find_map(|p| {
            p.pieces
                .iter()
                .position(|&x| x == piece)
                .map(|i| (p.original, i))
        })
    }

    /// Lookup table from every piece to `(original, position)`.
    pub fn origin_table(&self) -> BTreeMap<EdgeId, (EdgeId, usize)> {
        self.paths
            .iter()
            .flat_map(|p| {
                p.pieces
                    .iter()
                    .enumerate()
                    .map(move |(i, &x)| (x, (p.original, i)))
            })
            .collect()
    }

    pub fn path_of(&self, original: EdgeId) -> Option<&SubdividedEdge> {
        self.paths.iter().find(|p| p.original == original)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub graph: MultiGraph,
    /// `F̃`: every piece of a forbidden edge.
    pub forbidden: EdgeSet,
    pub map: SubdivisionMap,
}

/// Replaces every edge by a path of `t + 1` edges.
///
/// For `t = 0` the graph is returned unchanged. Otherwise all pieces get
/// fresh identifiers, assigned in increasing order of the original edge.
pub fn subdivide(g: &MultiGraph, forbidden: &EdgeSet, t: usize) -> Result<Subdivision, GraphError> {
    forbidden.check(g)?;
    if t == 0 {
        let paths = g
            .edges()
            .map(|(e, u, v)| SubdividedEdge {
                original: e,
                ends: (u, v),
                inner: Vec::new(),
                pieces: vec![e],
            })
            .collect();
        return Ok(Subdivision {
            graph: g.clone(),
            forbidden: forbidden.clone(),
            map: SubdivisionMap { t, paths },
        });
    }
    let mut out = MultiGraph::new();
    for v in g.vertices() {
        out.add_vertex(v)?;
    }
    let mut next_v = g.next_vertex_id().0;
    let mut next_e = g.next_edge_id().0;
    let mut paths = Vec::with_capacity(g.edge_count());
    let mut tilde = EdgeSet::new();
    for (e, u, v) in g.edges() {
        let inner: Vec<VertexId> = (0..t)
            .map(|i| VertexId(next_v + i as u32))
            .collect();
        next_v += t as u32;
        for &w in &inner {
            out.add_vertex(w)?;
        }
        let chain: Vec<VertexId> = std::iter::once(u)
            .chain(inner.iter().copied())
            .chain(std::iter::once(v))
            .collect();
        let mut pieces = Vec::with_capacity(t + 1);
        for w in chain.windows(2) {
            let id = EdgeId(next_e);
            next_e += 1;
            out.add_edge(id, w[0], w[1])?;
            pieces.push(id);
            if forbidden.contains(e) {
                tilde.insert(id);
            }
        }
        paths.push(SubdividedEdge {
            original: e,
            ends: (u, v),
            inner,
            pieces,
        });
    }
    Ok(Subdivision {
        graph: out,
        forbidden: tilde,
        map: SubdivisionMap { t, paths },
    })
}

/// Contracts a connected vertex set to a single new vertex `v_I`.
///
/// Edges inside the set are deleted, edges leaving it are re-attached to the
/// new vertex and keep their identifiers (parallel edges are preserved).
pub fn contract_connected(
    g: &MultiGraph,
    set: &BTreeSet<VertexId>,
) -> Result<(MultiGraph, VertexId), GraphError> {
    if set.is_empty() {
        return Err(GraphError::EmptySet);
    }
    if let Some(&v) = set.iter().find(|&&v| !g.has_vertex(v)) {
        return Err(GraphError::UnknownVertex(v));
    }
    if set.len() == g.vertex_count() {
        return Err(GraphError::WholeGraph);
    }
    let start = *set.iter().next().expect("non-empty");
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if set.contains(&w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    if seen.len() != set.len() {
        return Err(GraphError::NotConnected);
    }

    let merged = g.next_vertex_id();
    let mut out = MultiGraph::new();
    for v in g.vertices().filter(|v| !set.contains(v)) {
        out.add_vertex(v)?;
    }
    out.add_vertex(merged)?;
    for (e, u, v) in g.edges() {
        let u = if set.contains(&u) { merged } else { u };
        let v = if set.contains(&v) { merged } else { v };
        if u != merged || v != merged {
            out.add_edge(e, u, v)?;
        }
    }
    Ok((out, merged))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HComponentKind {
    /// A component of `G∖H` with its edges into `H`.
    Bridge,
    /// A single edge outside `H` joining two vertices of `H`.
    Chord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HComponent {
    pub kind: HComponentKind,
    pub sub: SubGraph,
    /// Vertices of the component that lie in `H`.
    pub attachments: BTreeSet<VertexId>,
}

/// All H-components of `g`: bridges first (by smallest vertex), then chords
/// (by edge identifier).
pub fn h_components(g: &MultiGraph, h: &SubGraph) -> Result<Vec<HComponent>, GraphError> {
    h.check(g)?;
    let in_h = |v: VertexId| h.vertices.contains(&v);
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for start in g.vertices().filter(|&v| !in_h(v)) {
        if !seen.insert(start) {
            continue;
        }
        let mut sub = SubGraph::new();
        let mut attachments = BTreeSet::new();
        sub.vertices.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &e in g.incident(v) {
                let w = g.opposite(e, v).expect("incident edge");
                sub.edges.insert(e);
                sub.vertices.insert(w);
                if in_h(w) {
                    attachments.insert(w);
                } else if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        out.push(HComponent {
            kind: HComponentKind::Bridge,
            sub,
            attachments,
        });
    }
    for (e, u, v) in g.edges() {
        if in_h(u) && in_h(v) && !h.edges.contains(&e) {
            let mut sub = SubGraph::new();
            sub.add_edge_of(g, e);
            out.push(HComponent {
                kind: HComponentKind::Chord,
                attachments: sub.vertices.clone(),
                sub,
            });
        }
    }
    Ok(out)
}

/// Length of a shortest cycle; `None` for forests. Parallel edges form
/// cycles of length 2.
pub fn girth(g: &MultiGraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for root in g.vertices() {
        let mut dist: BTreeMap<VertexId, (usize, Option<EdgeId>)> = BTreeMap::new();
        dist.insert(root, (0, None));
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let (dv, via) = dist[&v];
            if best.is_some_and(|b| 2 * dv >= b) {
                break;
            }
            for &e in g.incident(v) {
                if Some(e) == via {
                    continue;
                }
                let w = g.opposite(e, v).expect("incident edge");
                match dist.get(&w) {
                    None => {
                        dist.insert(w, (dv + 1, Some(e)));
                        queue.push_back(w);
                    }
                    Some(&(dw, _)) => {
                        let len = dv + dw + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
    }
    best
}

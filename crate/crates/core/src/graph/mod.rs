//! Loop-free undirected multigraphs with stable vertex and edge identifiers.
//!
//! Every surgery in [`surgery`] returns a fresh graph; identifiers of
//! untouched vertices and edges are carried over unchanged so that edge sets
//! and witnesses stay meaningful across transformations.

pub mod generators;
pub mod surgery;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use surgery::{
    contract_connected, crossed_pair, crossed_sequence, girth, h_components, subdivide,
    uncross, CrossedEnd, CrossedGraph, CrossingRecord, HComponent, HComponentKind, SubdividedEdge,
    Subdivision, SubdivisionMap,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} would be a loop at {vertex}")]
    Loop { edge: EdgeId, vertex: VertexId },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("vertex {0} already exists")]
    DuplicateVertex(VertexId),
    #[error("edge {0} already exists")]
    DuplicateEdge(EdgeId),
    #[error("cannot cross edge {0} with itself")]
    SameEdge(EdgeId),
    #[error("edge {0} occurs in more than one crossed pair")]
    RepeatedEdge(EdgeId),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set does not induce a connected subgraph")]
    NotConnected,
    #[error("cannot contract the whole vertex set")]
    WholeGraph,
    #[error("not a subgraph: {0}")]
    NotSubgraph(String),
}

/// Finite undirected multigraph without loops.
///
/// Parallel edges are allowed. Iteration order over vertices and edges is by
/// identifier, which keeps every derived computation deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct MultiGraph {
    incidence: BTreeMap<VertexId, Vec<EdgeId>>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
}

/// Serialized form: vertex identifiers and `[id, u, v]` edge triples.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<VertexId>,
    edges: Vec<(EdgeId, VertexId, VertexId)>,
}

impl From<MultiGraph> for GraphRepr {
    fn from(g: MultiGraph) -> Self {
        GraphRepr {
            vertices: g.vertices().collect(),
            edges: g.edges().collect(),
        }
    }
}

impl TryFrom<GraphRepr> for MultiGraph {
    type Error = GraphError;

    fn try_from(r: GraphRepr) -> Result<Self, GraphError> {
        let mut g = MultiGraph::new();
        for v in r.vertices {
            g.add_vertex(v)?;
        }
        for (e, u, v) in r.edges {
            g.add_edge(e, u, v)?;
        }
        Ok(g)
    }
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with edges numbered in the given order.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = MultiGraph::new();
        for v in 0..n {
            g.add_vertex(VertexId(v))?;
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(EdgeId(i as u32), VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        if self.incidence.contains_key(&v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        self.incidence.insert(v, Vec::new());
        Ok(())
    }

    pub fn add_edge(&mut self, e: EdgeId, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if self.edges.contains_key(&e) {
            return Err(GraphError::DuplicateEdge(e));
        }
        if u == v {
            return Err(GraphError::Loop { edge: e, vertex: u });
        }
        for w in [u, v] {
            if !self.incidence.contains_key(&w) {
                return Err(GraphError::UnknownVertex(w));
            }
        }
        self.edges.insert(e, (u, v));
        for w in [u, v] {
            let list = self.incidence.get_mut(&w).expect("checked above");
            let pos = list.partition_point(|&x| x < e);
            list.insert(pos, e);
        }
        Ok(())
    }

    /// Adds a vertex with the next free identifier.
    pub fn push_vertex(&mut self) -> VertexId {
        let v = self.next_vertex_id();
        self.incidence.insert(v, Vec::new());
        v
    }

    /// Adds an edge with the next free identifier.
    pub fn push_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        let e = self.next_edge_id();
        self.add_edge(e, u, v)?;
        Ok(e)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        let (u, v) = self.edges.remove(&e).ok_or(GraphError::UnknownEdge(e))?;
        for w in [u, v] {
            if let Some(list) = self.incidence.get_mut(&w) {
                list.retain(|&x| x != e);
            }
        }
        Ok((u, v))
    }

    /// Removes a vertex together with all incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        let incident = self
            .incidence
            .get(&v)
            .cloned()
            .ok_or(GraphError::UnknownVertex(v))?;
        for e in incident {
            self.remove_edge(e)?;
        }
        self.incidence.remove(&v);
        Ok(())
    }

    pub fn next_vertex_id(&self) -> VertexId {
        self.incidence
            .keys()
            .next_back()
            .map_or(VertexId(0), |v| VertexId(v.0 + 1))
    }

    pub fn next_edge_id(&self) -> EdgeId {
        self.edges
            .keys()
            .next_back()
            .map_or(EdgeId(0), |e| EdgeId(e.0 + 1))
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `|U^G| = |V^G| + |E^G|`.
    pub fn universe_size(&self) -> usize {
        self.vertex_count() + self.edge_count()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + '_ {
        self.incidence.keys().copied()
    }

    pub fn edges(
        &self,
    ) -> impl DoubleEndedIterator<Item = (EdgeId, VertexId, VertexId)> + ExactSizeIterator + '_ {
        self.edges.iter().map(|(&e, &(u, v))| (e, u, v))
    }

    pub fn edge_ids(&self) -> impl DoubleEndedIterator<Item = EdgeId> + ExactSizeIterator + '_ {
        self.edges.keys().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.incidence.contains_key(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    /// Incident edges of `v`, sorted by identifier. Empty for unknown vertices.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.incidence.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn opposite(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v)
            .iter()
            .filter_map(move |&e| self.opposite(e, v))
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.incident(u)
            .iter()
            .any(|&e| self.opposite(e, u) == Some(v))
    }

    /// Two edges are adjacent when they share an endpoint.
    pub fn edges_adjacent(&self, e: EdgeId, f: EdgeId) -> bool {
        match (self.endpoints(e), self.endpoints(f)) {
            (Some((a, b)), Some((c, d))) => a == c || a == d || b == c || b == d,
            _ => false,
        }
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .values()
            .all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The sub-multigraph spanned by a set of edges and their endpoints.
    pub fn edge_subgraph(&self, edges: &BTreeSet<EdgeId>) -> Result<MultiGraph, GraphError> {
        let mut g = MultiGraph::new();
        for &e in edges {
            let (u, v) = self.endpoints(e).ok_or(GraphError::UnknownEdge(e))?;
            for w in [u, v] {
                if !g.has_vertex(w) {
                    g.add_vertex(w)?;
                }
            }
            g.add_edge(e, u, v)?;
        }
        Ok(g)
    }

    /// Induced-by-parts subgraph: the listed vertices plus the listed edges.
    pub fn subgraph(&self, sub: &SubGraph) -> Result<MultiGraph, GraphError> {
        sub.check(self)?;
        let mut g = MultiGraph::new();
        for &v in &sub.vertices {
            g.add_vertex(v)?;
        }
        for &e in &sub.edges {
            let (u, v) = self.endpoints(e).expect("checked");
            g.add_edge(e, u, v)?;
        }
        Ok(g)
    }

    /// The simple graph underlying `self`: for every parallel class only the
    /// edge with the smallest identifier is kept.
    pub fn simple_view(&self) -> MultiGraph {
        let mut seen = BTreeSet::new();
        let mut g = MultiGraph::new();
        for v in self.vertices() {
            g.add_vertex(v).expect("fresh graph");
        }
        for (e, u, v) in self.edges() {
            if seen.insert((u.min(v), u.max(v))) {
                g.add_edge(e, u, v).expect("endpoints exist");
            }
        }
        g
    }

    /// Union of two graphs over a shared identifier space. Elements present in
    /// both must agree.
    pub fn union(&self, other: &MultiGraph) -> Result<MultiGraph, GraphError> {
        let mut g = self.clone();
        for v in other.vertices() {
            if !g.has_vertex(v) {
                g.add_vertex(v)?;
            }
        }
        for (e, u, v) in other.edges() {
            match g.endpoints(e) {
                Some(ends) if ends == (u, v) || ends == (v, u) => {}
                Some(_) => return Err(GraphError::DuplicateEdge(e)),
                None => g.add_edge(e, u, v)?,
            }
        }
        Ok(g)
    }
}

/// A set of edges interpreted relative to one graph (`F ⊆ E^G`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(pub BTreeSet<EdgeId>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn all(g: &MultiGraph) -> Self {
        EdgeSet(g.edge_ids().collect())
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.contains(&e)
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        self.0.insert(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    /// Checks that every member is an edge of `g`.
    pub fn check(&self, g: &MultiGraph) -> Result<(), GraphError> {
        match self.0.iter().find(|&&e| !g.has_edge(e)) {
            Some(&e) => Err(GraphError::UnknownEdge(e)),
            None => Ok(()),
        }
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = EdgeId>>(iter: T) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

/// A sub-multigraph given by vertex and edge identifiers of a host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubGraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl SubGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn whole(g: &MultiGraph) -> Self {
        SubGraph {
            vertices: g.vertices().collect(),
            edges: g.edge_ids().collect(),
        }
    }

    /// Adds an edge of `g` together with its endpoints.
    pub fn add_edge_of(&mut self, g: &MultiGraph, e: EdgeId) {
        if let Some((u, v)) = g.endpoints(e) {
            self.edges.insert(e);
            self.vertices.insert(u);
            self.vertices.insert(v);
        }
    }

    pub fn check(&self, g: &MultiGraph) -> Result<(), GraphError> {
        if let Some(&v) = self.vertices.iter().find(|&&v| !g.has_vertex(v)) {
            return Err(GraphError::NotSubgraph(format!("vertex {v} not in host")));
        }
        for &e in &self.edges {
            let (u, v) = g
                .endpoints(e)
                .ok_or_else(|| GraphError::NotSubgraph(format!("edge {e} not in host")))?;
            if !self.vertices.contains(&u) || !self.vertices.contains(&v) {
                return Err(GraphError::NotSubgraph(format!(
                    "edge {e} has an endpoint outside the vertex set"
                )));
            }
        }
        Ok(())
    }

    pub fn union_with(&mut self, other: &SubGraph) {
        self.vertices.extend(other.vertices.iter().copied());
        self.edges.extend(other.edges.iter().copied());
    }
}

/// Index-based copy of a multigraph used by the inner loops of the
/// planarity test, the solver and the drawing code.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub vid: Vec<VertexId>,
    pub eid: Vec<EdgeId>,
    pub ends: Vec<[usize; 2]>,
}

impl Dense {
    pub fn new(g: &MultiGraph) -> Self {
        let vid: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            vid.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut eid = Vec::with_capacity(g.edge_count());
        let mut ends = Vec::with_capacity(g.edge_count());
        for (e, u, v) in g.edges() {
            eid.push(e);
            ends.push([index[&u], index[&v]]);
        }
        Dense { vid, eid, ends }
    }

    pub fn n(&self) -> usize {
        self.vid.len()
    }
}

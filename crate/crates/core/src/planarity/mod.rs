//! Planarity with certificates: a rotation system when the graph is planar,
//! a Kuratowski subdivision otherwise.
//!
//! The core test is the left-right criterion on the simple graph underlying
//! the input. Parallel edges are re-inserted next to their representative
//! after embedding, and non-planarity witnesses are extracted by deleting
//! edges while the remainder stays non-planar.

mod lr;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{Dense, EdgeId, MultiGraph, VertexId};

/// Cyclic order of incident edges around every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub rotation: BTreeMap<VertexId, Vec<EdgeId>>,
}

/// A dart is an edge traversed away from `tail`.
pub type Dart = (VertexId, EdgeId);

impl RotationSystem {
    /// Traces all faces. Each face is the cyclic list of darts on its
    /// boundary. Isolated vertices contribute no face.
    pub fn faces(&self, g: &MultiGraph) -> Vec<Vec<Dart>> {
        let mut pos: BTreeMap<(VertexId, EdgeId), usize> = BTreeMap::new();
        for (&v, list) in &self.rotation {
            for (i, &e) in list.iter().enumerate() {
                pos.insert((v, e), i);
            }
        }
        let mut used = BTreeSet::new();
        let mut faces = Vec::new();
        for (e, u, v) in g.edges() {
            for start in [(u, e), (v, e)] {
                if used.contains(&start) {
                    continue;
                }
                let mut face = Vec::new();
                let mut dart = start;
                loop {
                    if !used.insert(dart) {
                        break;
                    }
                    face.push(dart);
                    let (tail, edge) = dart;
                    let head = g.opposite(edge, tail).expect("edge of graph");
                    let list = &self.rotation[&head];
                    let i = pos[&(head, edge)];
                    let next = list[(i + 1) % list.len()];
                    dart = (head, next);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Structural check (every edge-end listed exactly once) plus Euler's
    /// formula `n − m + f = 2` on every connected component with an edge.
    pub fn is_planar_embedding_of(&self, g: &MultiGraph) -> bool {
        if self.rotation.len() != g.vertex_count() {
            return false;
        }
        for v in g.vertices() {
            let Some(list) = self.rotation.get(&v) else {
                return false;
            };
            let mut listed: Vec<EdgeId> = list.clone();
            listed.sort();
            if listed != g.incident(v) {
                return false;
            }
        }
        let faces = self.faces(g);
        let comps = g.components();
        let comp_of: BTreeMap<VertexId, usize> = comps
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |&v| (v, i)))
            .collect();
        let mut face_count = vec![0usize; comps.len()];
        for f in &faces {
            face_count[comp_of[&f[0].0]] += 1;
        }
        let mut edge_count = vec![0usize; comps.len()];
        for (_, u, _) in g.edges() {
            edge_count[comp_of[&u]] += 1;
        }
        comps.iter().enumerate().all(|(i, c)| {
            edge_count[i] == 0 || c.len() + face_count[i] == edge_count[i] + 2
        })
    }

    pub fn face_count(&self, g: &MultiGraph) -> usize {
        self.faces(g).len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pattern {
    K5,
    K33,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPath {
    pub from: VertexId,
    pub to: VertexId,
    pub edges: Vec<EdgeId>,
}

/// A subdivision of `K5` or `K_{3,3}` inside a graph.
///
/// For `K33` the first three branch vertices form one side of the
/// bipartition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub pattern: Pattern,
    pub branch: Vec<VertexId>,
    pub paths: Vec<WitnessPath>,
}

impl KuratowskiWitness {
    pub fn edges(&self) -> BTreeSet<EdgeId> {
        self.paths
            .iter()
            .flat_map(|p| p.edges.iter().copied())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar(RotationSystem),
    NonPlanar(KuratowskiWitness),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

/// Simple graph underlying a multigraph, in dense form. `rep[i]` is the
/// representative edge of simple edge `i`; `parallels[i]` lists the others.
struct SimpleCore {
    dense: Dense,
    edges: Vec<[usize; 2]>,
    rep: Vec<EdgeId>,
    parallels: Vec<Vec<EdgeId>>,
}

impl SimpleCore {
    fn new(g: &MultiGraph) -> Self {
        let dense = Dense::new(g);
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut edges = Vec::new();
        let mut rep = Vec::new();
        let mut parallels: Vec<Vec<EdgeId>> = Vec::new();
        for (i, &[u, v]) in dense.ends.iter().enumerate() {
            let key = (u.min(v), u.max(v));
            match index.get(&key) {
                Some(&j) => parallels[j].push(dense.eid[i]),
                None => {
                    index.insert(key, edges.len());
                    edges.push([u, v]);
                    rep.push(dense.eid[i]);
                    parallels.push(Vec::new());
                }
            }
        }
        SimpleCore {
            dense,
            edges,
            rep,
            parallels,
        }
    }
}

/// Boolean planarity test.
pub fn planar(g: &MultiGraph) -> bool {
    let core = SimpleCore::new(g);
    lr::is_planar(core.dense.n(), &core.edges)
}

/// Planarity on an index graph; used by inner search loops.
pub(crate) fn planar_indexed(n: usize, edges: &[[usize; 2]]) -> bool {
    let mut seen = BTreeSet::new();
    let simple: Vec<[usize; 2]> = edges
        .iter()
        .filter(|&&[u, v]| u != v && seen.insert((u.min(v), u.max(v))))
        .copied()
        .collect();
    lr::is_planar(n, &simple)
}

/// Rotation (neighbour order per vertex) of a simple index graph.
pub(crate) fn embed_indexed(n: usize, edges: &[[usize; 2]]) -> Option<Vec<Vec<usize>>> {
    lr::embed(n, edges)
}

/// Decides planarity and returns the matching certificate.
pub fn is_planar(g: &MultiGraph) -> Planarity {
    let core = SimpleCore::new(g);
    let n = core.dense.n();
    match lr::embed(n, &core.edges) {
        Some(rot) => Planarity::Planar(rotation_system(g, &core, &rot)),
        None => {
            let keep = minimal_nonplanar(n, &core.edges, None);
            let edges: Vec<(EdgeId, usize, usize)> = keep
                .iter()
                .map(|&i| (core.rep[i], core.edges[i][0], core.edges[i][1]))
                .collect();
            Planarity::NonPlanar(
                classify(&core.dense, &edges).expect("minimal non-planar graph is a Kuratowski subdivision"),
            )
        }
    }
}

fn rotation_system(g: &MultiGraph, core: &SimpleCore, rot: &lr::Rotation) -> RotationSystem {
    let mut edge_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, &[u, v]) in core.edges.iter().enumerate() {
        edge_of.insert((u, v), i);
        edge_of.insert((v, u), i);
    }
    let mut rotation = BTreeMap::new();
    for (v, nbrs) in rot.iter().enumerate() {
        let mut list = Vec::with_capacity(g.degree(core.dense.vid[v]));
        for &w in nbrs {
            let i = edge_of[&(v, w)];
            let [a, _] = core.edges[i];
            // Parallel edges nest; the order flips between the two ends.
            if a == v {
                list.push(core.rep[i]);
                list.extend(core.parallels[i].iter().copied());
            } else {
                list.extend(core.parallels[i].iter().rev().copied());
                list.push(core.rep[i]);
            }
        }
        rotation.insert(core.dense.vid[v], list);
    }
    RotationSystem { rotation }
}

/// Deletes edges one at a time while the rest stays non-planar. The result
/// is an edge-minimal non-planar subgraph. Edges listed earlier in
/// `order` are tried first, so they are less likely to survive.
pub(crate) fn minimal_nonplanar(
    n: usize,
    edges: &[[usize; 2]],
    order: Option<&[usize]>,
) -> Vec<usize> {
    let mut alive = vec![true; edges.len()];
    let default_order: Vec<usize> = (0..edges.len()).collect();
    let order = order.unwrap_or(&default_order);
    let mut buf = Vec::with_capacity(edges.len());
    for &i in order {
        alive[i] = false;
        buf.clear();
        buf.extend(
            edges
                .iter()
                .enumerate()
                .filter(|&(j, _)| alive[j])
                .map(|(_, &e)| e),
        );
        if lr::is_planar(n, &buf) {
            alive[i] = true;
        }
    }
    (0..edges.len()).filter(|&i| alive[i]).collect()
}

/// Turns the edge set of a Kuratowski subdivision into a witness.
/// `edges` holds `(id, u, v)` with dense endpoints.
pub(crate) fn classify(
    dense: &Dense,
    edges: &[(EdgeId, usize, usize)],
) -> Option<KuratowskiWitness> {
    let mut inc: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &(_, u, v)) in edges.iter().enumerate() {
        inc.entry(u).or_default().push(i);
        inc.entry(v).or_default().push(i);
    }
    let branch: Vec<usize> = inc
        .iter()
        .filter(|(_, l)| l.len() >= 3)
        .map(|(&v, _)| v)
        .collect();
    let is_branch = |v: usize| branch.contains(&v);
    let mut seen_edges = BTreeSet::new();
    let mut paths = Vec::new();
    let mut adjacency: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &b in &branch {
        for &start in &inc[&b] {
            if seen_edges.contains(&start) {
                continue;
            }
            let mut cur = b;
            let mut edge = start;
            let mut list = Vec::new();
            loop {
                seen_edges.insert(edge);
                list.push(edges[edge].0);
                let (_, u, v) = edges[edge];
                let next = if u == cur { v } else { u };
                if is_branch(next) {
                    if next == b {
                        return None;
                    }
                    if !adjacency.insert((b.min(next), b.max(next))) {
                        return None;
                    }
                    paths.push(WitnessPath {
                        from: dense.vid[b],
                        to: dense.vid[next],
                        edges: list,
                    });
                    break;
                }
                let l = &inc[&next];
                if l.len() != 2 {
                    return None;
                }
                edge = if l[0] == edge { l[1] } else { l[0] };
                cur = next;
            }
        }
    }
    if seen_edges.len() != edges.len() {
        return None;
    }
    let deg = |v: usize| adjacency.iter().filter(|&&(a, b)| a == v || b == v).count();
    match (branch.len(), paths.len()) {
        (5, 10) if branch.iter().all(|&v| deg(v) == 4) => Some(KuratowskiWitness {
            pattern: Pattern::K5,
            branch: branch.iter().map(|&v| dense.vid[v]).collect(),
            paths,
        }),
        (6, 9) if branch.iter().all(|&v| deg(v) == 3) => {
            let first = branch[0];
            let mut side_a = vec![first];
            for &v in &branch[1..] {
                if !adjacency.contains(&(first.min(v), first.max(v))) {
                    side_a.push(v);
                }
            }
            let side_b: Vec<usize> = branch
                .iter()
                .copied()
                .filter(|v| !side_a.contains(v))
                .collect();
            if side_a.len() != 3 {
                return None;
            }
            let ordered: Vec<VertexId> = side_a
                .iter()
                .chain(side_b.iter())
                .map(|&v| dense.vid[v])
                .collect();
            Some(KuratowskiWitness {
                pattern: Pattern::K33,
                branch: ordered,
                paths,
            })
        }
        _ => None,
    }
}

/// Audits a witness: every path exists in `g`, the paths are internally
/// disjoint, avoid other branch vertices and realise the claimed pattern.
pub fn verify_witness(g: &MultiGraph, w: &KuratowskiWitness) -> bool {
    let (need_branch, need_paths) = match w.pattern {
        Pattern::K5 => (5, 10),
        Pattern::K33 => (6, 9),
    };
    let branch: BTreeSet<VertexId> = w.branch.iter().copied().collect();
    if w.branch.len() != need_branch || branch.len() != need_branch || w.paths.len() != need_paths
    {
        return false;
    }
    if !branch.iter().all(|&v| g.has_vertex(v)) {
        return false;
    }
    let mut pairs = BTreeSet::new();
    let mut used_edges = BTreeSet::new();
    let mut used_inner = BTreeSet::new();
    for p in &w.paths {
        if !branch.contains(&p.from) || !branch.contains(&p.to) || p.from == p.to {
            return false;
        }
        if p.edges.is_empty() {
            return false;
        }
        let key = (p.from.min(p.to), p.from.max(p.to));
        if !pairs.insert(key) {
            return false;
        }
        if w.pattern == Pattern::K33 {
            let side = |v: VertexId| w.branch[..3].contains(&v);
            if side(p.from) == side(p.to) {
                return false;
            }
        }
        let mut cur = p.from;
        for (i, &e) in p.edges.iter().enumerate() {
            if !used_edges.insert(e) {
                return false;
            }
            let Some(next) = g.opposite(e, cur) else {
                return false;
            };
            let last = i + 1 == p.edges.len();
            if last {
                if next != p.to {
                    return false;
                }
            } else if branch.contains(&next) || !used_inner.insert(next) {
                return false;
            }
            cur = next;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn k4_has_four_faces() {
        let g = generators::complete(4);
        match is_planar(&g) {
            Planarity::Planar(rot) => {
                assert!(rot.is_planar_embedding_of(&g));
                assert_eq!(rot.face_count(&g), 4);
            }
            other => panic!("K4 reported non-planar: {other:?}"),
        }
    }

    #[test]
    fn k5_is_its_own_witness() {
        let g = generators::complete(5);
        match is_planar(&g) {
            Planarity::NonPlanar(w) => {
                assert_eq!(w.pattern, Pattern::K5);
                assert_eq!(w.branch.len(), 5);
                assert!(w.paths.iter().all(|p| p.edges.len() == 1));
                assert!(verify_witness(&g, &w));
            }
            other => panic!("K5 reported planar: {other:?}"),
        }
    }

    #[test]
    fn witness_fails_on_graph_missing_an_edge() {
        let g = generators::complete(5);
        let Planarity::NonPlanar(w) = is_planar(&g) else {
            panic!("K5 planar")
        };
        let mut h = g.clone();
        h.remove_edge(w.paths[3].edges[0]).unwrap();
        assert!(!verify_witness(&h, &w));
    }

    #[test]
    fn subdivided_k33_witness() {
        let mut g = generators::complete_bipartite(3, 3);
        let (u, v) = g.remove_edge(EdgeId(0)).unwrap();
        let x = g.push_vertex();
        g.push_edge(u, x).unwrap();
        g.push_edge(x, v).unwrap();
        let Planarity::NonPlanar(w) = is_planar(&g) else {
            panic!("subdivided K33 planar")
        };
        assert_eq!(w.pattern, Pattern::K33);
        let lengths: Vec<usize> = w.paths.iter().map(|p| p.edges.len()).collect();
        assert_eq!(lengths.iter().filter(|&&l| l == 2).count(), 1);
        assert_eq!(lengths.iter().filter(|&&l| l == 1).count(), 8);
        assert!(verify_witness(&g, &w));
    }

    #[test]
    fn parallel_edges_are_embedded() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (2, 0), (0, 1)]).unwrap();
        let Planarity::Planar(rot) = is_planar(&g) else {
            panic!("planar multigraph rejected")
        };
        assert!(rot.is_planar_embedding_of(&g));
        assert_eq!(rot.face_count(&g), 4);
    }

    #[test]
    fn disconnected_graph_embeds_per_component() {
        let mut g = generators::complete(4);
        for v in 4..8 {
            g.add_vertex(VertexId(v)).unwrap();
        }
        for (i, (u, v)) in [(4, 5), (5, 6), (6, 4)].into_iter().enumerate() {
            g.add_edge(EdgeId(100 + i as u32), VertexId(u), VertexId(v)).unwrap();
        }
        let Planarity::Planar(rot) = is_planar(&g) else {
            panic!("planar graph rejected")
        };
        assert!(rot.is_planar_embedding_of(&g));
    }

    #[test]
    fn petersen_is_nonplanar() {
        let g = generators::petersen();
        let Planarity::NonPlanar(w) = is_planar(&g) else {
            panic!("Petersen planar")
        };
        assert!(verify_witness(&g, &w));
    }

    #[test]
    fn corrupt_rotation_fails_euler() {
        let g = generators::complete(4);
        let Planarity::Planar(mut rot) = is_planar(&g) else {
            panic!()
        };
        let list = rot.rotation.get_mut(&VertexId(0)).unwrap();
        list.swap(0, 1);
        assert!(!rot.is_planar_embedding_of(&g));
    }
}

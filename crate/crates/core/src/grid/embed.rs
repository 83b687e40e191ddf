//! Budgeted backtracking search for a topological `H_r` inside a graph.
//!
//! The grid is first smoothed: its degree-3 vertices become branch vertices
//! and the outer-ring runs of degree-2 vertices become chains. Branch
//! vertices are placed in breadth-first order from the centre; each new one
//! is reached along a free path from an already placed neighbour, and its
//! other placed neighbours are joined by shortest free paths. Chain vertices
//! are spread evenly along the paths at the end.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{hex_grid, GridEmbedding, GridError, HexGrid};
use crate::graph::{Dense, EdgeId, MultiGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EmbedOutcome {
    Found { embedding: GridEmbedding },
    /// Provably no embedding, by counting vertices, degrees or edges.
    Absent { reason: String },
    /// The search finished without success; the finder is incomplete, so
    /// this is not a proof of absence.
    Exhausted,
    BudgetExceeded,
}

/// A chain of the smoothed grid: branch endpoints plus the grid vertices
/// and edges along it.
struct Chain {
    ends: [usize; 2],
    inner: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

struct Smoothed {
    branch: Vec<VertexId>,
    chains: Vec<Chain>,
    /// Chains at each branch vertex.
    at: Vec<Vec<usize>>,
}

fn smooth(grid: &HexGrid) -> Smoothed {
    let g = &grid.graph;
    let mut branch: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    if branch.is_empty() {
        // H_1 is a bare hexagon: split it at two opposite corners.
        branch = vec![grid.cycles[0][0], grid.cycles[0][3]];
    }
    let index: BTreeMap<VertexId, usize> = branch.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut chains = Vec::new();
    let mut used = std::collections::BTreeSet::new();
    for (bi, &b) in branch.iter().enumerate() {
        for &e0 in g.incident(b) {
            if used.contains(&e0) {
                continue;
            }
            let mut inner = Vec::new();
            let mut edges = vec![e0];
            used.insert(e0);
            let mut cur = g.opposite(e0, b).expect("incident");
            let mut last = e0;
            while !index.contains_key(&cur) {
                inner.push(cur);
                let next = g
                    .incident(cur)
                    .iter()
                    .copied()
                    .find(|&e| e != last)
                    .expect("chain vertex has degree 2");
                used.insert(next);
                edges.push(next);
                last = next;
                cur = g.opposite(next, cur).expect("incident");
            }
            chains.push(Chain {
                ends: [bi, index[&cur]],
                inner,
                edges,
            });
        }
    }
    let mut at = vec![Vec::new(); branch.len()];
    for (c, ch) in chains.iter().enumerate() {
        at[ch.ends[0]].push(c);
        if ch.ends[1] != ch.ends[0] {
            at[ch.ends[1]].push(c);
        }
    }
    Smoothed { branch, chains, at }
}

fn eccentricities(n: usize, adj: &[Vec<(usize, usize)>]) -> Vec<usize> {
    let mut out = vec![0; n];
    let mut dist = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        let mut far = 0;
        while let Some(v) = q.pop_front() {
            far = far.max(dist[v]);
            for &(w, _) in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        out[s] = far;
    }
    out
}

struct Search<'a> {
    sm: &'a Smoothed,
    order: Vec<usize>,
    /// Host adjacency: (neighbour, edge index).
    adj: Vec<Vec<(usize, usize)>>,
    /// Normalized eccentricity targets for branch vertices and host vertices.
    want: Vec<f64>,
    have: Vec<f64>,
    image: Vec<usize>,
    used: Vec<bool>,
    routes: Vec<Option<Vec<usize>>>,
    steps: u64,
    limit: u64,
    /// Maximum number of candidates tried per branch vertex.
    width: usize,
}

const FREE: usize = usize::MAX;

impl Search<'_> {
    /// Free degree of a host vertex: neighbours not yet used.
    fn free_degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&(w, _)| !self.used[w]).count()
    }

    /// Shortest path from `from` to `to` whose inner vertices are free,
    /// with at least `min_len` edges. Returns host vertex sequence.
    fn path(&self, from: usize, to: usize, min_len: usize) -> Option<Vec<usize>> {
        let n = self.adj.len();
        let mut prev = vec![FREE; n];
        let mut dist = vec![usize::MAX; n];
        dist[from] = 0;
        let mut q = VecDeque::from([from]);
        while let Some(v) = q.pop_front() {
            for &(w, _) in &self.adj[v] {
                if w == to && v != from || w == to && min_len <= 1 {
                    if dist[v] + 1 >= min_len {
                        let mut seq = vec![to, v];
                        let mut cur = v;
                        while cur != from {
                            cur = prev[cur];
                            seq.push(cur);
                        }
                        seq.reverse();
                        return Some(seq);
                    }
                    continue;
                }
                if w != to && !self.used[w] && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    prev[w] = v;
                    q.push_back(w);
                }
            }
        }
        None
    }

    fn mark(&mut self, seq: &[usize], on: bool) {
        for &v in &seq[1..seq.len() - 1] {
            self.used[v] = on;
        }
    }

    /// Places branch vertex `order[depth]` and recurses.
    fn place(&mut self, depth: usize) -> Option<bool> {
        self.steps += 1;
        if self.steps > self.limit {
            return None;
        }
        if depth == self.order.len() {
            return Some(true);
        }
        let b = self.order[depth];
        let need = self.sm.at[b].len();
        // Chains to already placed neighbours.
        let placed: Vec<usize> = self.sm.at[b]
            .iter()
            .copied()
            .filter(|&c| {
                let [x, y] = self.sm.chains[c].ends;
                let other = if x == b { y } else { x };
                other != b && self.image[other] != FREE
            })
            .collect();
        let candidates = self.candidates(b, &placed, need);
        for (v, first) in candidates {
            self.image[b] = v;
            self.used[v] = true;
            let mut done: Vec<usize> = Vec::new();
            let mut ok = true;
            for (i, &c) in placed.iter().enumerate() {
                let ch = &self.sm.chains[c];
                let [x, y] = ch.ends;
                let other = if x == b { y } else { x };
                let seq = if i == 0 {
                    first.clone()
                } else {
                    match self.path(v, self.image[other], ch.inner.len() + 1) {
                        Some(s) => s,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                };
                // Orient from the chain's first end.
                let seq = if self.image[x] == seq[0] { seq } else { seq.into_iter().rev().collect() };
                self.mark(&seq, true);
                self.routes[c] = Some(seq);
                done.push(c);
            }
            if ok && self.degrees_ok() {
                match self.place(depth + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            for c in done {
                let seq = self.routes[c].take().expect("route");
                self.mark(&seq, false);
            }
            self.used[v] = false;
            self.image[b] = FREE;
        }
        Some(false)
    }

    /// Placed branch vertices must keep enough free neighbours for their
    /// unrouted chains.
    fn degrees_ok(&self) -> bool {
        for (b, &v) in self.image.iter().enumerate() {
            if v == FREE {
                continue;
            }
            let open = self.sm.at[b].iter().filter(|&&c| self.routes[c].is_none()).count();
            if self.free_degree(v) < open {
                return false;
            }
        }
        true
    }

    /// Chains a host vertex can still start: one per free neighbour plus one
    /// per adjacent image of a placed neighbour.
    fn room(&self, w: usize, placed: &[usize]) -> usize {
        let direct = self.adj[w]
            .iter()
            .filter(|&&(x, _)| {
                self.used[x]
                    && placed.iter().any(|&c| self.sm.chains[c].ends.iter().any(|&o| self.image[o] == x))
            })
            .count();
        self.free_degree(w) + direct
    }

    /// Candidate images for `b` with the path from the first placed
    /// neighbour, best first.
    fn candidates(&self, b: usize, placed: &[usize], need: usize) -> Vec<(usize, Vec<usize>)> {
        let n = self.adj.len();
        let score = |v: usize| (self.have[v] - self.want[b]).abs();
        let mut out: Vec<(usize, f64, Vec<usize>)> = Vec::new();
        match placed.first() {
            None => {
                for v in 0..n {
                    if !self.used[v] && self.adj[v].len() >= need {
                        out.push((v, score(v), Vec::new()));
                    }
                }
                out.sort_by(|a, c| a.1.total_cmp(&c.1).then(a.0.cmp(&c.0)));
            }
            Some(&c) => {
                let ch = &self.sm.chains[c];
                let [x, y] = ch.ends;
                let from = self.image[if x == b { y } else { x }];
                let min_len = ch.inner.len() + 1;
                // Breadth-first search through free vertices.
                let mut prev = vec![FREE; n];
                let mut dist = vec![usize::MAX; n];
                dist[from] = 0;
                let mut q = VecDeque::from([from]);
                let mut found: Vec<(usize, usize)> = Vec::new();
                while let Some(v) = q.pop_front() {
                    for &(w, _) in &self.adj[v] {
                        if self.used[w] || dist[w] != usize::MAX {
                            continue;
                        }
                        dist[w] = dist[v] + 1;
                        prev[w] = v;
                        q.push_back(w);
                        if dist[w] >= min_len && self.room(w, placed) >= need {
                            found.push((w, dist[w]));
                        }
                    }
                }
                let best = found.iter().map(|&(_, d)| d).min();
                for (w, d) in found {
                    // Stay near the shortest distance: longer detours rarely
                    // help and blow up the search.
                    if Some(d) > best.map(|b| b + 1) {
                        continue;
                    }
                    let mut seq = vec![w];
                    let mut cur = w;
                    while cur != from {
                        cur = prev[cur];
                        seq.push(cur);
                    }
                    seq.reverse();
                    out.push((w, d as f64 + score(w), seq));
                }
                out.sort_by(|a, c| a.1.total_cmp(&c.1).then(a.0.cmp(&c.0)));
            }
        }
        out.truncate(self.width);
        out.into_iter().map(|(v, _, s)| (v, s)).collect()
    }
}

/// Searches for a topological embedding of `H_r` into `g` within `budget`
/// search steps.
pub fn embed_grid(g: &MultiGraph, r: usize, budget: u64) -> Result<EmbedOutcome, GridError> {
    let grid = hex_grid(r)?;
    let nv = grid.graph.vertex_count();
    let ne = grid.graph.edge_count();
    let deg3 = grid.graph.vertices().filter(|&v| grid.graph.degree(v) >= 3).count();
    let host_deg3 = g.vertices().filter(|&v| g.degree(v) >= 3).count();
    if g.vertex_count() < nv {
        return Ok(EmbedOutcome::Absent {
            reason: format!("graph has {} vertices, H_{r} needs {nv}", g.vertex_count()),
        });
    }
    if g.edge_count() < ne {
        return Ok(EmbedOutcome::Absent {
            reason: format!("graph has {} edges, H_{r} needs {ne}", g.edge_count()),
        });
    }
    if host_deg3 < deg3 {
        return Ok(EmbedOutcome::Absent {
            reason: format!("graph has {host_deg3} vertices of degree at least 3, H_{r} needs {deg3}"),
        });
    }

    let sm = smooth(&grid);
    let d = Dense::new(g);
    let n = d.n();
    let mut adj = vec![Vec::new(); n];
    for (i, &[u, v]) in d.ends.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    // Branch order: breadth-first from the first branch vertex.
    let nb = sm.branch.len();
    let mut order = Vec::with_capacity(nb);
    let mut seen = vec![false; nb];
    let mut q = VecDeque::from([0]);
    seen[0] = true;
    while let Some(b) = q.pop_front() {
        order.push(b);
        for &c in &sm.at[b] {
            let [x, y] = sm.chains[c].ends;
            for o in [x, y] {
                if !seen[o] {
                    seen[o] = true;
                    q.push_back(o);
                }
            }
        }
    }

    // Eccentricity targets, normalized to the maximum within each graph.
    let gecc_grid = {
        let gd = Dense::new(&grid.graph);
        let mut gadj = vec![Vec::new(); gd.n()];
        for (i, &[u, v]) in gd.ends.iter().enumerate() {
            gadj[u].push((v, i));
            gadj[v].push((u, i));
        }
        eccentricities(gd.n(), &gadj)
    };
    let max_grid = *gecc_grid.iter().max().unwrap_or(&1) as f64;
    let want: Vec<f64> = sm
        .branch
        .iter()
        .map(|v| gecc_grid[v.0 as usize] as f64 / max_grid.max(1.0))
        .collect();
    let ecc = eccentricities(n, &adj);
    let max_host = *ecc.iter().max().unwrap_or(&1) as f64;
    let have: Vec<f64> = ecc.iter().map(|&e| e as f64 / max_host.max(1.0)).collect();

    let mut s = Search {
        sm: &sm,
        order,
        adj,
        want,
        have,
        image: vec![FREE; nb],
        used: vec![false; n],
        routes: vec![None; sm.chains.len()],
        steps: 0,
        limit: budget,
        width: 6,
    };
    match s.place(0) {
        None => return Ok(EmbedOutcome::BudgetExceeded),
        Some(false) => return Ok(EmbedOutcome::Exhausted),
        Some(true) => {}
    }

    // Expand chains into grid edges.
    let edge_between = |a: usize, b: usize| -> EdgeId {
        let i = s.adj[a]
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, i)| i)
            .expect("consecutive path vertices are adjacent");
        d.eid[i]
    };
    let mut vertex_map = BTreeMap::new();
    for (b, &v) in sm.branch.iter().enumerate() {
        vertex_map.insert(v, d.vid[s.image[b]]);
    }
    let mut edge_paths = BTreeMap::new();
    for (c, ch) in sm.chains.iter().enumerate() {
        let seq = s.routes[c].as_ref().expect("all chains routed");
        let len = seq.len() - 1;
        let parts = ch.inner.len() + 1;
        let cuts: Vec<usize> = (0..=parts).map(|i| i * len / parts).collect();
        for (j, &gv) in ch.inner.iter().enumerate() {
            vertex_map.insert(gv, d.vid[seq[cuts[j + 1]]]);
        }
        // Grid vertices along the chain, from the first end.
        let first = sm.branch[ch.ends[0]];
        let mut gseq = vec![first];
        gseq.extend(ch.inner.iter().copied());
        gseq.push(sm.branch[ch.ends[1]]);
        for (j, &ge) in ch.edges.iter().enumerate() {
            let piece: Vec<EdgeId> = (cuts[j]..cuts[j + 1])
                .map(|t| edge_between(seq[t], seq[t + 1]))
                .collect();
            let (a, _) = grid.graph.endpoints(ge).expect("grid edge");
            // Paths are listed from the image of the edge's first endpoint.
            let piece = if a == gseq[j] { piece } else { piece.into_iter().rev().collect() };
            edge_paths.insert(ge, piece);
        }
    }
    let embedding = GridEmbedding {
        r,
        vertex_map,
        edge_paths,
    };
    embedding.check(&grid, g)?;
    Ok(EmbedOutcome::Found { embedding })
}

//! Branch-and-bound over crossings of the original edges.
//!
//! A state is a set of crossings between pairs of original edges together
//! with the order in which they occur along every edge. Its planarization
//! replaces each crossing by a dummy vertex, splitting edges into segments.
//! If the planarization is not planar, every completion must put a new
//! crossing on some segment of a Kuratowski subgraph, so we branch on those
//! segments. Segments already tried are excluded in later branches, which
//! makes the branches partition the remaining search space.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use super::bound::lower_bound_indexed;
use super::Budget;
use crate::planarity::{minimal_nonplanar, planar_indexed};

const START: usize = usize::MAX;

/// A solution: crossings as original edge index pairs, plus per-edge order
/// of crossing indices from the first endpoint to the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Solution {
    pub crossings: Vec<[usize; 2]>,
    pub order: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

pub(crate) struct Instance<'a> {
    pub n: usize,
    pub edges: &'a [[usize; 2]],
    pub crossable: &'a [bool],
}

struct Shared<'a> {
    budget: &'a Budget,
    start: Instant,
    nodes: AtomicU64,
    stop: AtomicBool,
    aborted: AtomicBool,
}

impl Shared<'_> {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let over_nodes = self.budget.max_nodes.is_some_and(|m| n > m);
        let over_time = n % 64 == 0
            && self
                .budget
                .max_time
                .is_some_and(|t| self.start.elapsed() > t);
        if over_nodes || over_time {
            self.aborted.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

#[derive(Clone)]
struct State {
    crossings: Vec<[usize; 2]>,
    order: Vec<Vec<usize>>,
    /// Segment keys `(edge, left boundary)` that may not receive crossings.
    excluded: Vec<(usize, usize)>,
}

/// One branching move: new crossing between `e` at segment `i` and `f` at
/// segment `j`, with the `e` segments in `exclude` closed beforehand.
#[derive(Clone, Debug)]
struct Move {
    e: usize,
    i: usize,
    f: usize,
    j: usize,
    exclude: Vec<(usize, usize)>,
}

struct Segment {
    edge: usize,
    pos: usize,
}

impl State {
    fn key(&self, e: usize, pos: usize) -> (usize, usize) {
        (e, if pos == 0 { START } else { self.order[e][pos - 1] })
    }

    fn is_excluded(&self, e: usize, pos: usize) -> bool {
        self.excluded.contains(&self.key(e, pos))
    }

    fn crossed(&self, e: usize, f: usize) -> bool {
        self.crossings
            .iter()
            .any(|&[a, b]| (a == e && b == f) || (a == f && b == e))
    }

    fn planarization(&self, inst: &Instance) -> (usize, Vec<[usize; 2]>, Vec<Segment>) {
        let n = inst.n + self.crossings.len();
        let mut edges = Vec::new();
        let mut segs = Vec::new();
        for (e, &[u, v]) in inst.edges.iter().enumerate() {
            let mut prev = u;
            for (pos, &c) in self.order[e].iter().enumerate() {
                edges.push([prev, inst.n + c]);
                segs.push(Segment { edge: e, pos });
                prev = inst.n + c;
            }
            edges.push([prev, v]);
            segs.push(Segment {
                edge: e,
                pos: self.order[e].len(),
            });
        }
        (n, edges, segs)
    }

    fn apply(&mut self, m: &Move) {
        let c = self.crossings.len();
        self.crossings.push([m.e, m.f]);
        self.order[m.e].insert(m.i, c);
        self.order[m.f].insert(m.j, c);
    }

    fn undo(&mut self, m: &Move) {
        self.order[m.e].remove(m.i);
        self.order[m.f].remove(m.j);
        self.crossings.pop();
    }
}

enum Node {
    Planar,
    Dead,
    Branch(Vec<Move>),
}

fn expand(inst: &Instance, st: &State, remaining: usize) -> Node {
    let (n, edges, segs) = st.planarization(inst);
    if planar_indexed(n, &edges) {
        return Node::Planar;
    }
    if remaining == 0 || lower_bound_indexed(n, &edges) > remaining {
        return Node::Dead;
    }
    // Simple view for witness extraction; crossable segments are offered for
    // deletion first so the witness leans on uncrossable ones.
    let mut seen = BTreeSet::new();
    let mut simple = Vec::new();
    let mut origin = Vec::new();
    for (s, &[u, v]) in edges.iter().enumerate() {
        if seen.insert((u.min(v), u.max(v))) {
            simple.push([u, v]);
            origin.push(s);
        }
    }
    let open = |s: usize| {
        let seg = &segs[s];
        inst.crossable[seg.edge] && !st.is_excluded(seg.edge, seg.pos)
    };
    let mut order: Vec<usize> = (0..simple.len()).filter(|&i| open(origin[i])).collect();
    order.extend((0..simple.len()).filter(|&i| !open(origin[i])));
    let witness = minimal_nonplanar(n, &simple, Some(&order));
    let branch: Vec<usize> = witness
        .into_iter()
        .map(|i| origin[i])
        .filter(|&s| open(s))
        .collect();
    let mut moves = Vec::new();
    let mut closed: Vec<(usize, usize)> = Vec::new();
    for s in branch {
        let Segment { edge: e, pos: i } = segs[s];
        let [a, b] = inst.edges[e];
        for f in 0..inst.edges.len() {
            if f == e || !inst.crossable[f] || st.crossed(e, f) {
                continue;
            }
            let [c, d] = inst.edges[f];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            for j in 0..=st.order[f].len() {
                let key = st.key(f, j);
                if st.excluded.contains(&key) || closed.contains(&key) {
                    continue;
                }
                moves.push(Move {
                    e,
                    i,
                    f,
                    j,
                    exclude: closed.clone(),
                });
            }
        }
        closed.push(st.key(e, i));
    }
    if moves.is_empty() {
        Node::Dead
    } else {
        Node::Branch(moves)
    }
}

fn dfs(inst: &Instance, shared: &Shared, st: &mut State, remaining: usize) -> Outcome {
    if !shared.tick() {
        return Outcome::Aborted;
    }
    match expand(inst, st, remaining) {
        Node::Planar => Outcome::Found,
        Node::Dead => Outcome::Exhausted,
        Node::Branch(moves) => {
            for m in &moves {
                match child(inst, shared, st, m, remaining) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            Outcome::Exhausted
        }
    }
}

fn child(inst: &Instance, shared: &Shared, st: &mut State, m: &Move, remaining: usize) -> Outcome {
    let base = st.excluded.len();
    st.excluded.extend(m.exclude.iter().copied());
    st.apply(m);
    let out = dfs(inst, shared, st, remaining - 1);
    if out != Outcome::Found {
        st.undo(m);
        st.excluded.truncate(base);
    }
    out
}

pub(crate) struct SearchResult {
    pub outcome: Outcome,
    pub solution: Option<Solution>,
    pub nodes: u64,
}

/// Looks for at most `k` crossings making the instance planar.
pub(crate) fn search(inst: &Instance, k: usize, budget: &Budget, workers: usize) -> SearchResult {
    let shared = Shared {
        budget,
        start: Instant::now(),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        aborted: AtomicBool::new(false),
    };
    let root = State {
        crossings: Vec::new(),
        order: vec![Vec::new(); inst.edges.len()],
        excluded: Vec::new(),
    };
    let finish = |outcome: Outcome, st: Option<State>, shared: &Shared| SearchResult {
        outcome,
        solution: st.map(|s| Solution {
            crossings: s.crossings,
            order: s.order,
        }),
        nodes: shared.nodes.load(Ordering::Relaxed),
    };
    if workers <= 1 {
        let mut st = root;
        let out = dfs(inst, &shared, &mut st, k);
        let sol = (out == Outcome::Found).then_some(st);
        return finish(out, sol, &shared);
    }
    if !shared.tick() {
        return finish(Outcome::Aborted, None, &shared);
    }
    let moves = match expand(inst, &root, k) {
        Node::Planar => return finish(Outcome::Found, Some(root), &shared),
        Node::Dead => return finish(Outcome::Exhausted, None, &shared),
        Node::Branch(m) => m,
    };
    let next = AtomicU64::new(0);
    let found: Mutex<Option<(usize, State)>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed) as usize;
                if idx >= moves.len() || shared.stop.load(Ordering::Relaxed) {
                    break;
                }
                let mut st = root.clone();
                if child(inst, &shared, &mut st, &moves[idx], k) == Outcome::Found {
                    let mut slot = found.lock().expect("result lock");
                    if slot.as_ref().map_or(true, |(i, _)| idx < *i) {
                        *slot = Some((idx, st));
                    }
                    shared.stop.store(true, Ordering::Relaxed);
                }
            });
        }
    });
    match found.into_inner().expect("result lock") {
        Some((_, st)) => finish(Outcome::Found, Some(st), &shared),
        None if shared.aborted.load(Ordering::Relaxed) => finish(Outcome::Aborted, None, &shared),
        None => finish(Outcome::Exhausted, None, &shared),
    }
}

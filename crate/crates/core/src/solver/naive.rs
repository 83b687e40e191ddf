//! Exhaustive oracle: try every set of at most `k` pairwise disjoint pairs
//! of non-forbidden edges of `G̃`, smallest sets first.

use std::time::Instant;

use super::{subdivision_count, CrossingWitness, SolveError, SolveOptions, SolveReport, Verdict};
use crate::graph::{subdivide, Dense, EdgeSet, MultiGraph};
use crate::planarity::planar_indexed;

struct Enum<'a> {
    n: usize,
    ends: &'a [[usize; 2]],
    cand: &'a [usize],
    used: Vec<bool>,
    chosen: Vec<[usize; 2]>,
    nodes: u64,
    limit: Option<u64>,
    start: Instant,
    opts: &'a SolveOptions,
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

impl Enum<'_> {
    fn planar_now(&self) -> bool {
        let mut edges = Vec::with_capacity(self.ends.len() + 2 * self.chosen.len());
        for (i, &e) in self.ends.iter().enumerate() {
            if !self.used[i] {
                edges.push(e);
            }
        }
        for (c, &[a, b]) in self.chosen.iter().enumerate() {
            let x = self.n + c;
            for e in [a, b] {
                let [u, v] = self.ends[e];
                edges.push([x, u]);
                edges.push([x, v]);
            }
        }
        planar_indexed(self.n + self.chosen.len(), &edges)
    }

    /// Chooses `left` more pairs whose smaller candidate index is at least
    /// `from`, so every set is visited once.
    fn go(&mut self, from: usize, left: usize) -> Step {
        if left == 0 {
            self.nodes += 1;
            if self.limit.is_some_and(|l| self.nodes > l)
                || self
                    .opts
                    .budget
                    .max_time
                    .is_some_and(|t| self.nodes % 256 == 0 && self.start.elapsed() > t)
            {
                return Step::Aborted;
            }
            return if self.planar_now() {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        for ia in from..self.cand.len() {
            let a = self.cand[ia];
            if self.used[a] {
                continue;
            }
            for ib in ia + 1..self.cand.len() {
                let b = self.cand[ib];
                if self.used[b] {
                    continue;
                }
                self.used[a] = true;
                self.used[b] = true;
                self.chosen.push([a, b]);
                match self.go(ia + 1, left - 1) {
                    Step::Exhausted => {}
                    other => return other,
                }
                self.chosen.pop();
                self.used[a] = false;
                self.used[b] = false;
            }
        }
        Step::Exhausted
    }
}

/// Same contract as [`super::decide_k_good`], by plain enumeration over
/// `G̃`. Only the node budget and time budget of `opts` are honoured.
pub fn decide_naive(
    g: &MultiGraph,
    forbidden: &EdgeSet,
    k: usize,
    opts: &SolveOptions,
) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let sub = subdivide(g, forbidden, subdivision_count(k))?;
    let d = Dense::new(&sub.graph);
    let cand: Vec<usize> = (0..d.eid.len())
        .filter(|&i| !sub.forbidden.contains(d.eid[i]))
        .collect();
    let mut en = Enum {
        n: d.n(),
        ends: &d.ends,
        cand: &cand,
        used: vec![false; d.eid.len()],
        chosen: Vec::new(),
        nodes: 0,
        limit: opts.budget.max_nodes,
        start,
        opts,
    };
    let mut verdict = Verdict::No;
    let mut witness = None;
    for l in 0..=k {
        match en.go(0, l) {
            Step::Found => {
                let mut pairs: Vec<_> = en
                    .chosen
                    .iter()
                    .map(|&[a, b]| (d.eid[a].min(d.eid[b]), d.eid[a].max(d.eid[b])))
                    .collect();
                pairs.sort();
                witness = Some(CrossingWitness {
                    pairs,
                    subdivision: sub.map.clone(),
                });
                verdict = Verdict::Yes;
                break;
            }
            Step::Aborted => {
                verdict = Verdict::Unknown;
                break;
            }
            Step::Exhausted => {}
        }
    }
    Ok(SolveReport {
        verdict,
        witness,
        lower_bound: super::lower_bound(g),
        nodes: en.nodes,
        elapsed: start.elapsed(),
    })
}

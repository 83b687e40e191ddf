//! The generalized k-crossing problem: given `G`, forbidden edges `F` and a
//! bound `k`, decide whether `G` has a drawing with at most `k` crossings in
//! which no edge of `F` is crossed.
//!
//! Answers are certified by a [`CrossingWitness`]: disjoint pairs of edges of
//! the subdivided graph `G̃` whose crossing makes it planar.

mod bound;
mod naive;
mod search;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    crossed_sequence, subdivide, Dense, EdgeId, EdgeSet, GraphError, MultiGraph, SubdivisionMap,
};
use crate::planarity;

pub use naive::decide_naive;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("search budget exhausted; crossing number is at least {lower}")]
    BudgetExceeded { lower: usize },
}

/// Resource limits for a search. `None` means unlimited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max: u64) -> Self {
        Budget {
            max_nodes: Some(max),
            max_time: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: Budget,
    pub workers: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: Budget::unlimited(),
            workers: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Pairs of edges of `G̃` to cross, with the subdivision linking back to `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingWitness {
    pub pairs: Vec<(EdgeId, EdgeId)>,
    pub subdivision: SubdivisionMap,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("witness has {got} pairs but at most {k} are allowed")]
    TooMany { got: usize, k: usize },
    #[error("edge {0} is not an edge of the subdivided graph")]
    UnknownPiece(EdgeId),
    #[error("edge {0} is used more than once")]
    Repeated(EdgeId),
    #[error("forbidden edge {0} is crossed")]
    Forbidden(EdgeId),
    #[error("crossing the pairs does not give a planar graph")]
    NotPlanar,
    #[error("subdivision map does not match the graph")]
    MapMismatch,
    #[error("original edge {0} would cross itself")]
    SelfCrossing(EdgeId),
    #[error("original edges {0} and {1} would cross twice")]
    DoubleCrossing(EdgeId, EdgeId),
}

impl CrossingWitness {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Rebuilds `(G̃, F̃)` for this witness.
    pub fn subdivided(
        &self,
        g: &MultiGraph,
        forbidden: &EdgeSet,
    ) -> Result<(MultiGraph, EdgeSet), WitnessError> {
        let sub = subdivide(g, forbidden, self.subdivision.t)?;
        if sub.map != self.subdivision {
            return Err(WitnessError::MapMismatch);
        }
        Ok((sub.graph, sub.forbidden))
    }

    /// The pairs expressed as original edges of `G`.
    pub fn original_pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        let table = self.subdivision.origin_table();
        self.pairs
            .iter()
            .map(|(a, b)| {
                let a = table.get(a).map_or(*a, |o| o.0);
                let b = table.get(b).map_or(*b, |o| o.0);
                (a, b)
            })
            .collect()
    }

    /// Checks every invariant: at most `k` pairs, all edges distinct and
    /// present in `G̃`, none in `F̃`, and the planarization is planar.
    pub fn validate(&self, g: &MultiGraph, forbidden: &EdgeSet, k: usize) -> Result<(), WitnessError> {
        if self.pairs.len() > k {
            return Err(WitnessError::TooMany {
                got: self.pairs.len(),
                k,
            });
        }
        let (tilde, f_tilde) = self.subdivided(g, forbidden)?;
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.pairs {
            for e in [a, b] {
                if !tilde.has_edge(e) {
                    return Err(WitnessError::UnknownPiece(e));
                }
                if !seen.insert(e) {
                    return Err(WitnessError::Repeated(e));
                }
                if f_tilde.contains(e) {
                    return Err(WitnessError::Forbidden(e));
                }
            }
        }
        let crossed = crossed_sequence(&tilde, &self.pairs)?;
        if !planarity::planar(&crossed.graph) {
            return Err(WitnessError::NotPlanar);
        }
        Ok(())
    }

    /// A witness is drawable as-is when no original edge crosses itself and
    /// no two original edges cross twice. Witnesses from
    /// [`decide_k_good`] always are.
    pub fn check_drawable(&self) -> Result<(), WitnessError> {
        let mut seen = BTreeSet::new();
        for (a, b) in self.original_pairs() {
            if a == b {
                return Err(WitnessError::SelfCrossing(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(WitnessError::DoubleCrossing(a.min(b), a.max(b)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub witness: Option<CrossingWitness>,
    pub lower_bound: usize,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Euler-formula lower bound, summed over biconnected blocks after
/// smoothing degree-2 vertices.
pub fn lower_bound(g: &MultiGraph) -> usize {
    let d = Dense::new(g);
    bound::lower_bound_indexed(d.n(), &d.ends)
}

/// Number of subdivision vertices per edge used for bound `k`.
pub fn subdivision_count(k: usize) -> usize {
    k.saturating_sub(1).max(1)
}

/// Decides whether `G` has a `k`-good drawing with respect to `F`.
pub fn decide_k_good(
    g: &MultiGraph,
    forbidden: &EdgeSet,
    k: usize,
    opts: &SolveOptions,
) -> Result<SolveReport, SolveError> {
    forbidden.check(g)?;
    let start = Instant::now();
    let lb = lower_bound(g);
    let t = subdivision_count(k);
    let mut report = SolveReport {
        verdict: Verdict::No,
        witness: None,
        lower_bound: lb,
        nodes: 0,
        elapsed: Duration::ZERO,
    };
    if lb > k {
        report.elapsed = start.elapsed();
        return Ok(report);
    }
    let d = Dense::new(g);
    let crossable: Vec<bool> = d.eid.iter().map(|&e| !forbidden.contains(e)).collect();
    let inst = search::Instance {
        n: d.n(),
        edges: &d.ends,
        crossable: &crossable,
    };
    let result = search::search(&inst, k, &opts.budget, opts.workers.max(1));
    report.nodes = result.nodes;
    match result.outcome {
        search::Outcome::Found => {
            let sol = result.solution.expect("found outcome carries a solution");
            let sub = subdivide(g, forbidden, t)?;
            report.witness = Some(to_witness(&sol, sub.map));
            report.verdict = Verdict::Yes;
        }
        search::Outcome::Exhausted => report.verdict = Verdict::No,
        search::Outcome::Aborted => report.verdict = Verdict::Unknown,
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// The `i`-th crossing along an original edge lands on its `i`-th piece.
fn to_witness(sol: &search::Solution, map: SubdivisionMap) -> CrossingWitness {
    let mut piece_of = vec![[EdgeId(0); 2]; sol.crossings.len()];
    for (e, list) in sol.order.iter().enumerate() {
        for (pos, &c) in list.iter().enumerate() {
            let slot = if sol.crossings[c][0] == e { 0 } else { 1 };
            piece_of[c][slot] = map.paths[e].pieces[pos];
        }
    }
    let mut pairs: Vec<(EdgeId, EdgeId)> = piece_of
        .into_iter()
        .map(|[a, b]| (a.min(b), a.max(b)))
        .collect();
    pairs.sort();
    CrossingWitness {
        pairs,
        subdivision: map,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingNumber {
    pub value: usize,
    pub witness: CrossingWitness,
    pub lower_bound: usize,
    pub nodes: u64,
}

/// Smallest `k` admitting a `k`-good drawing with no forbidden edges,
/// searched upward from the lower bound.
pub fn crossing_number(g: &MultiGraph, opts: &SolveOptions) -> Result<CrossingNumber, SolveError> {
    let lb = lower_bound(g);
    let mut nodes = 0;
    let mut k = lb;
    loop {
        let report = decide_k_good(g, &EdgeSet::new(), k, opts)?;
        nodes += report.nodes;
        match report.verdict {
            Verdict::Yes => {
                return Ok(CrossingNumber {
                    value: k,
                    witness: report.witness.expect("yes carries a witness"),
                    lower_bound: lb,
                    nodes,
                })
            }
            Verdict::No => k += 1,
            Verdict::Unknown => return Err(SolveError::BudgetExceeded { lower: k }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    #[test]
    fn lower_bounds_of_standard_graphs() {
        assert_eq!(lower_bound(&generators::complete(5)), 1);
        assert_eq!(lower_bound(&generators::complete(6)), 3);
        assert_eq!(lower_bound(&generators::petersen()), 2);
        assert_eq!(lower_bound(&generators::complete_bipartite(3, 3)), 1);
        assert_eq!(lower_bound(&generators::path(6)), 0);
    }

    #[test]
    fn planar_graph_at_zero() {
        let g = generators::complete(4);
        let r = decide_k_good(&g, &EdgeSet::new(), 0, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert!(r.witness.unwrap().is_empty());
    }

    #[test]
    fn k5_all_forbidden_is_no() {
        let g = generators::complete(5);
        for k in 0..4 {
            let r = decide_k_good(&g, &EdgeSet::all(&g), k, &opts()).unwrap();
            assert_eq!(r.verdict, Verdict::No);
        }
    }

    #[test]
    fn k5_one_crossing_of_disjoint_edges() {
        let g = generators::complete(5);
        let r = decide_k_good(&g, &EdgeSet::new(), 1, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        let w = r.witness.unwrap();
        assert_eq!(w.len(), 1);
        w.validate(&g, &EdgeSet::new(), 1).unwrap();
        w.check_drawable().unwrap();
        let (a, b) = w.original_pairs()[0];
        assert!(!g.edges_adjacent(a, b));
    }

    #[test]
    fn small_crossing_numbers() {
        let cases = [
            (generators::complete(5), 1),
            (generators::complete_bipartite(3, 3), 1),
            (generators::complete(4), 0),
            (generators::path(4), 0),
        ];
        for (g, want) in cases {
            let cn = crossing_number(&g, &opts()).unwrap();
            assert_eq!(cn.value, want);
            cn.witness.validate(&g, &EdgeSet::new(), want).unwrap();
        }
    }

    #[test]
    fn forbidden_edges_raise_the_answer() {
        // K5 with the edges of a 5-cycle forbidden still draws with one
        // crossing between two chords.
        let g = generators::complete(5);
        let f: EdgeSet = g
            .edges()
            .filter(|&(_, u, v)| (v.0 + 5 - u.0) % 5 == 1 || (u.0 + 5 - v.0) % 5 == 1)
            .map(|(e, _, _)| e)
            .collect();
        let r = decide_k_good(&g, &f, 1, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        r.witness.unwrap().validate(&g, &f, 1).unwrap();
    }

    #[test]
    fn node_budget_yields_unknown() {
        let g = generators::complete(6);
        let o = SolveOptions {
            budget: Budget::nodes(2),
            workers: 1,
        };
        let r = decide_k_good(&g, &EdgeSet::new(), 3, &o).unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
        assert!(matches!(
            crossing_number(&g, &o),
            Err(SolveError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn forbidden_must_belong_to_graph() {
        let g = generators::complete(3);
        let f: EdgeSet = [EdgeId(99)].into_iter().collect();
        assert!(decide_k_good(&g, &f, 1, &opts()).is_err());
    }

    #[test]
    fn parallel_workers_agree() {
        let g = generators::complete(6);
        let o = SolveOptions {
            budget: Budget::unlimited(),
            workers: 4,
        };
        let r = decide_k_good(&g, &EdgeSet::new(), 3, &o).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        r.witness.unwrap().validate(&g, &EdgeSet::new(), 3).unwrap();
    }
}

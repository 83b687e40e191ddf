use std::time::Instant;

use kcross::graph::{generators, subdivide, EdgeId, EdgeSet, MultiGraph};
use kcross::planarity::planar;
use kcross::solver::{
    crossing_number, decide_k_good, decide_naive, lower_bound, SolveOptions, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opts() -> SolveOptions {
    SolveOptions::default()
}

#[test]
fn hard_instances_reach_their_bounds() {
    for (name, g, want) in [
        ("K6", generators::complete(6), 3),
        ("Petersen", generators::petersen(), 2),
    ] {
        let t = Instant::now();
        let cn = crossing_number(&g, &opts()).unwrap();
        assert_eq!(cn.value, want, "{name}");
        assert_eq!(cn.lower_bound, want, "{name}");
        cn.witness.validate(&g, &EdgeSet::new(), want).unwrap();
        cn.witness.check_drawable().unwrap();
        eprintln!("{name}: {} nodes in {:?}", cn.nodes, t.elapsed());
    }
}

#[test]
fn agrees_with_naive_on_small_connected_graphs() {
    for n in 1..=6 {
        for g in generators::connected_graphs(n) {
            for k in 0..=2 {
                let fast = decide_k_good(&g, &EdgeSet::new(), k, &opts()).unwrap();
                let slow = decide_naive(&g, &EdgeSet::new(), k, &opts()).unwrap();
                assert_eq!(fast.verdict, slow.verdict, "k={k} on {g:?}");
                if let Some(w) = fast.witness {
                    w.validate(&g, &EdgeSet::new(), k).unwrap();
                }
                if let Some(w) = slow.witness {
                    w.validate(&g, &EdgeSet::new(), k).unwrap();
                }
            }
        }
    }
}

fn random_multigraph(rng: &mut ChaCha8Rng, max_edges: usize) -> MultiGraph {
    let n = rng.gen_range(2..=7u32);
    let m = rng.gen_range(0..=max_edges);
    let mut edges = Vec::new();
    while edges.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v));
        }
    }
    MultiGraph::from_edges(n, &edges).unwrap()
}

fn random_forbidden(rng: &mut ChaCha8Rng, g: &MultiGraph) -> EdgeSet {
    g.edge_ids().filter(|_| rng.gen_bool(0.3)).collect()
}

#[test]
fn agrees_with_naive_on_random_multigraphs_with_forbidden_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let g = random_multigraph(&mut rng, 8);
        let f = random_forbidden(&mut rng, &g);
        for k in 0..=2 {
            let fast = decide_k_good(&g, &f, k, &opts()).unwrap();
            let slow = decide_naive(&g, &f, k, &opts()).unwrap();
            assert_eq!(fast.verdict, slow.verdict, "k={k} F={f:?} on {g:?}");
        }
    }
}

#[test]
fn all_forbidden_reduces_to_planarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let g = random_multigraph(&mut rng, 14);
        for k in 0..=3 {
            let r = decide_k_good(&g, &EdgeSet::all(&g), k, &opts()).unwrap();
            assert_eq!(r.verdict == Verdict::Yes, planar(&g));
        }
    }
}

#[test]
fn monotone_in_k() {
    let g = generators::complete(5);
    let r = decide_k_good(&g, &EdgeSet::new(), 1, &opts()).unwrap();
    let w = r.witness.unwrap();
    for k in 2..5 {
        let s = subdivide(&g, &EdgeSet::new(), kcross::solver::subdivision_count(k)).unwrap();
        // The same crossings, re-expressed on the finer subdivision.
        let table = w.subdivision.origin_table();
        let pairs: Vec<(EdgeId, EdgeId)> = w
            .pairs
            .iter()
            .map(|(a, b)| {
                let pa = table[a];
                let pb = table[b];
                let x = s.map.path_of(pa.0).unwrap().pieces[pa.1];
                let y = s.map.path_of(pb.0).unwrap().pieces[pb.1];
                (x.min(y), x.max(y))
            })
            .collect();
        let lifted = kcross::solver::CrossingWitness {
            pairs,
            subdivision: s.map,
        };
        lifted.validate(&g, &EdgeSet::new(), k).unwrap();
        assert_eq!(
            decide_k_good(&g, &EdgeSet::new(), k, &opts()).unwrap().verdict,
            Verdict::Yes
        );
    }
}

#[test]
fn recursion_consistency_on_subdivided_graphs() {
    for g in [generators::complete(5), generators::complete_bipartite(3, 3)] {
        let sub = subdivide(&g, &EdgeSet::new(), 1).unwrap();
        let r = decide_k_good(&g, &EdgeSet::new(), 1, &opts()).unwrap();
        let (e1, e2) = r.witness.unwrap().pairs[0];
        let crossed = kcross::graph::crossed_pair(&sub.graph, e1, e2).unwrap().graph;
        let down = decide_k_good(&crossed, &EdgeSet::new(), 0, &opts()).unwrap();
        assert_eq!(down.verdict, Verdict::Yes);
    }
    let g = generators::complete(6);
    let r = decide_k_good(&g, &EdgeSet::new(), 3, &opts()).unwrap();
    let w = r.witness.unwrap();
    let sub = subdivide(&g, &EdgeSet::new(), 2).unwrap();
    let (e1, e2) = w.pairs[0];
    let crossed = kcross::graph::crossed_pair(&sub.graph, e1, e2).unwrap().graph;
    let down = decide_k_good(&crossed, &EdgeSet::new(), 2, &opts()).unwrap();
    assert_eq!(down.verdict, Verdict::Yes);
}

#[test]
fn lower_bound_never_exceeds_crossing_number() {
    for n in 1..=6 {
        for g in generators::connected_graphs(n) {
            let cn = crossing_number(&g, &opts()).unwrap();
            assert!(lower_bound(&g) <= cn.value);
        }
    }
}

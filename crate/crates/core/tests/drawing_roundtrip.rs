use kcross::drawing::{emit_svg, realize, validate, Drawing};
use kcross::graph::{generators, EdgeSet, MultiGraph};
use kcross::solver::{crossing_number, decide_k_good, SolveOptions, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check(g: &MultiGraph, f: &EdgeSet, k: usize) {
    let r = decide_k_good(g, f, k, &SolveOptions::default()).unwrap();
    if r.verdict != Verdict::Yes {
        return;
    }
    let w = r.witness.unwrap();
    let d = realize(g, &w).unwrap();
    let v = validate(g, f, &d, k);
    assert!(v.is_valid(), "{:?} on {g:?}", v.violations);
    assert_eq!(v.crossing_count, w.len());
    assert!(v.k_good && v.declared_matches);
    assert!(v.forbidden_crossings.is_empty());
}

#[test]
fn every_small_graph_draws_at_its_crossing_number() {
    for n in 1..=6 {
        for g in generators::all_graphs(n) {
            let cn = crossing_number(&g, &SolveOptions::default()).unwrap();
            let d = realize(&g, &cn.witness).unwrap();
            let v = validate(&g, &EdgeSet::new(), &d, cn.value);
            assert!(v.is_valid(), "{:?} on {g:?}", v.violations);
            assert_eq!(v.crossing_count, cn.value);
        }
    }
}

#[test]
fn random_multigraphs_with_forbidden_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..150 {
        let n = rng.gen_range(2..=8u32);
        let m = rng.gen_range(0..=14usize);
        let mut edges = Vec::new();
        while edges.len() < m {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                edges.push((u, v));
            }
        }
        let g = MultiGraph::from_edges(n, &edges).unwrap();
        let f: EdgeSet = g.edge_ids().filter(|_| rng.gen_bool(0.25)).collect();
        for k in 0..=3 {
            check(&g, &f, k);
        }
    }
}

#[test]
fn drawing_json_round_trips() {
    let g = generators::petersen();
    let cn = crossing_number(&g, &SolveOptions::default()).unwrap();
    let d = realize(&g, &cn.witness).unwrap();
    let text = serde_json::to_string(&d).unwrap();
    let back: Drawing = serde_json::from_str(&text).unwrap();
    assert_eq!(back, d);
    assert_eq!(emit_svg(&back), emit_svg(&d));
    let v = validate(&g, &EdgeSet::new(), &back, 2);
    assert!(v.k_good);
    let report = serde_json::to_string(&v).unwrap();
    assert!(report.contains("crossing_count"));
}

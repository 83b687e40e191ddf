//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{formula_pool, is_bipartite, random_formula, random_multigraph};
use kcross::drawing::{realize, validate};
use kcross::graph::{crossed_pair, generators, subdivide, EdgeId, EdgeSet, MultiGraph, VertexId};
use kcross::grid::planted::planted;
use kcross::grid::{f_sets, reduce, ReductionConfig};
use kcross::mso::{eval, interpret_crossed, two_colorable, Assignment, Elem, EvalOptions};
use kcross::planarity::{is_planar, verify_witness, Planarity};
use kcross::solver::{crossing_number, decide_k_good, decide_naive, lower_bound, SolveOptions, Verdict};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: u32, max_edges: usize) -> MultiGraph {
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(0..=max_edges);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v));
        }
    }
    MultiGraph::from_edges(n, &edges).unwrap()
}

/// Draws the witness of a yes-instance and audits it exactly.
fn audit_drawing(g: &MultiGraph, f: &EdgeSet, k: usize) -> Result<bool, String> {
    let r = decide_k_good(g, f, k, &opts()).map_err(|e| e.to_string())?;
    let Some(w) = r.witness else {
        return Ok(false);
    };
    let d = realize(g, &w).map_err(|e| format!("{e} on {g:?}"))?;
    let v = validate(g, f, &d, k);
    ensure(v.is_valid(), || format!("{:?} on {g:?}", v.violations))?;
    ensure(v.crossing_count == w.len(), || format!("{} crossings for {} pairs", v.crossing_count, w.len()))?;
    ensure(v.forbidden_crossings.is_empty() && v.k_good && v.declared_matches, || format!("{g:?} with F={f:?}"))?;
    Ok(true)
}

fn exact_crossing_numbers() -> Check {
    let mut notes = Vec::new();
    for (name, g, want) in [
        ("K5", generators::complete(5), 1),
        ("K3,3", generators::complete_bipartite(3, 3), 1),
        ("K6", generators::complete(6), 3),
        ("Petersen", generators::petersen(), 2),
    ] {
        let t = Instant::now();
        let cn = crossing_number(&g, &opts()).map_err(|e| format!("{name}: {e}"))?;
        let elapsed = t.elapsed();
        ensure(cn.value == want, || format!("{name}: got {}", cn.value))?;
        let lb = lower_bound(&g);
        let d = realize(&g, &cn.witness).map_err(|e| format!("{name}: {e}"))?;
        let v = validate(&g, &EdgeSet::new(), &d, want);
        ensure(v.is_valid() && v.declared_matches, || format!("{name}: {:?}", v.violations))?;
        ensure(lb == v.crossing_count && lb == want, || {
            format!("{name}: lower bound {lb}, drawing has {}", v.crossing_count)
        })?;
        ensure(elapsed < Duration::from_secs(300), || format!("{name}: {elapsed:?}"))?;
        notes.push(format!("{name}={want} ({} ms)", elapsed.as_millis()));
    }
    Ok(notes.join(", "))
}

fn oracle_equivalence() -> Check {
    let mut count = 0;
    for n in 1..=6 {
        for g in generators::connected_graphs(n) {
            for k in 0..=2 {
                let fast = decide_k_good(&g, &EdgeSet::new(), k, &opts()).unwrap();
                let slow = decide_naive(&g, &EdgeSet::new(), k, &opts()).unwrap();
                ensure(fast.verdict == slow.verdict, || format!("k={k} on {g:?}"))?;
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 7, 8);
        let f: EdgeSet = g.edge_ids().filter(|_| rng.gen_bool(0.3)).collect();
        for k in 0..=2 {
            let fast = decide_k_good(&g, &f, k, &opts()).unwrap();
            let slow = decide_naive(&g, &f, k, &opts()).unwrap();
            ensure(fast.verdict == slow.verdict, || format!("k={k} F={f:?} on {g:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} decisions agree"))
}

fn forbidden_semantics() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut planar_count = 0;
    for _ in 0..50 {
        // Dense enough that both answers occur.
        let n = rng.gen_range(5..=7u32);
        let m = rng.gen_range(8..=16usize);
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                edges.push((u, v));
            }
        }
        let g = MultiGraph::from_edges(n, &edges).unwrap();
        let planar = is_planar(&g).is_planar();
        planar_count += planar as usize;
        for k in 0..=3 {
            let r = decide_k_good(&g, &EdgeSet::all(&g), k, &opts()).unwrap();
            ensure((r.verdict == Verdict::Yes) == planar, || format!("k={k} on {g:?}"))?;
        }
    }
    ensure(planar_count > 0 && planar_count < 50, || format!("{planar_count} of 50 planar"))?;
    Ok(format!("50 graphs, {planar_count} planar"))
}

fn subdivision_invariance() -> Check {
    let mut corpus: Vec<MultiGraph> = (1..=6).flat_map(generators::connected_graphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    corpus.shuffle(&mut rng);
    // Every non-planar graph, topped up with planar ones.
    let (hard, easy): (Vec<_>, Vec<_>) = corpus.into_iter().partition(|g| !is_planar(g).is_planar());
    let fill = 60 - hard.len();
    let sample: Vec<MultiGraph> = hard.into_iter().chain(easy.into_iter().take(fill)).collect();
    let mut nonzero = 0;
    for g in &sample {
        let base = crossing_number(g, &opts()).unwrap().value;
        nonzero += (base > 0) as usize;
        for t in [1, 2] {
            let s = subdivide(g, &EdgeSet::new(), t).unwrap().graph;
            let cn = crossing_number(&s, &opts()).unwrap().value;
            ensure(cn == base, || format!("t={t}: {cn} vs {base} on {g:?}"))?;
        }
    }
    ensure(sample.len() >= 50, || format!("only {} graphs", sample.len()))?;
    Ok(format!("{} graphs ({nonzero} with positive crossing number)", sample.len()))
}

fn reduction_preservation() -> Check {
    let cfg = ReductionConfig::new(1);
    let mut yes = 0;
    for seed in 0..20 {
        let p = planted(seed, cfg.r, 0.1).map_err(|e| e.to_string())?;
        let sets = f_sets(&p.embedding, &p.graph).map_err(|e| e.to_string())?;
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                ensure(sets[i].0.is_disjoint(&sets[j].0), || format!("seed {seed}: F_{} meets F_{}", i + 2, j + 2))?;
            }
        }
        let red = reduce(&p.graph, &p.forbidden, &cfg, &p.embedding).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(red.graph.vertex_count() < p.graph.vertex_count(), || format!("seed {seed}: no shrink"))?;
        let before = decide_k_good(&p.graph, &p.forbidden, 1, &opts()).unwrap();
        let after = decide_k_good(&red.graph, &red.forbidden, 1, &opts()).unwrap();
        ensure(before.verdict == after.verdict, || format!("seed {seed}: {:?} vs {:?}", before.verdict, after.verdict))?;
        if let Some(w) = after.witness {
            yes += 1;
            w.validate(&red.graph, &red.forbidden, 1).map_err(|e| format!("seed {seed}: {e}"))?;
            for (a, b) in w.original_pairs() {
                ensure(!red.forbidden.contains(a) && !red.forbidden.contains(b), || {
                    format!("seed {seed}: witness crosses a forbidden edge")
                })?;
            }
        }
    }
    Ok(format!("20 instances, {yes} yes / {} no", 20 - yes))
}

fn drawing_validity() -> Check {
    let mut drawn = 0;
    for n in 1..=6 {
        for g in generators::all_graphs(n) {
            let k = crossing_number(&g, &opts()).unwrap().value;
            drawn += audit_drawing(&g, &EdgeSet::new(), k)? as usize;
        }
    }
    for g in [generators::complete(6), generators::petersen()] {
        drawn += audit_drawing(&g, &EdgeSet::new(), lower_bound(&g))? as usize;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..150 {
        let g = random_graph(&mut rng, 8, 14);
        let f: EdgeSet = g.edge_ids().filter(|_| rng.gen_bool(0.25)).collect();
        for k in 0..=3 {
            drawn += audit_drawing(&g, &f, k)? as usize;
        }
    }
    Ok(format!("{drawn} drawings audited exactly"))
}

fn mso_semantics() -> Check {
    let f = two_colorable();
    let mut count = 0;
    for n in 0..=5 {
        for g in generators::all_graphs(n) {
            let got = eval(&g, &Assignment::new(), &f, &EvalOptions::default()).map_err(|e| e.to_string())?;
            ensure(got == is_bipartite(&g), || format!("{g:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} graphs"))
}

fn interpretation_lemma() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pool = formula_pool();
    let opts = EvalOptions::default();
    let mut truths = 0;
    for i in 0..100 {
        let g = random_multigraph(&mut rng, 12, 2);
        let edges: Vec<EdgeId> = g.edge_ids().collect();
        let pick: Vec<EdgeId> = edges.choose_multiple(&mut rng, 2).copied().collect();
        let y: Vec<Elem> = edges
            .iter()
            .filter(|e| !pick.contains(e) && rng.gen_bool(0.3))
            .map(|&e| Elem::E(e))
            .collect();
        let f = if i % 4 == 3 {
            random_formula(&mut rng, 4, &mut Vec::new(), &mut vec!["Y".into()])
        } else {
            pool[i % pool.len()].clone()
        };
        let star = interpret_crossed(&f, "x1", "x2").map_err(|e| e.to_string())?;
        let a = Assignment::new()
            .with_elem("x1", Elem::E(pick[0]))
            .with_elem("x2", Elem::E(pick[1]))
            .with_set("Y", y.clone());
        let left = eval(&g, &a, &star, &opts).map_err(|e| e.to_string())?;
        let crossed = crossed_pair(&g, pick[0], pick[1]).map_err(|e| e.to_string())?.graph;
        let right = eval(&crossed, &Assignment::new().with_set("Y", y), &f, &opts).map_err(|e| e.to_string())?;
        ensure(left == right, || format!("{f} on {g:?} crossing {pick:?}"))?;
        truths += left as usize;
    }
    Ok(format!("100 triples agree ({truths} true)"))
}

/// Backtracking search for a `K5` or `K_{3,3}` subdivision in a simple graph.
fn has_kuratowski_subdivision(g: &MultiGraph) -> bool {
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    let idx = |v: VertexId| verts.iter().position(|&w| w == v).unwrap();
    let mut adj = vec![Vec::new(); n];
    for (_, u, v) in g.edges() {
        adj[idx(u)].push(idx(v));
        adj[idx(v)].push(idx(u));
    }
    let subsets = |size: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == size).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
    };
    for b in subsets(5) {
        if b.iter().all(|&v| adj[v].len() >= 4) {
            let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).map(|(i, j)| (b[i], b[j])).collect();
            if link(&adj, &pairs, &b) {
                return true;
            }
        }
    }
    for b in subsets(6) {
        if !b.iter().all(|&v| adj[v].len() >= 3) {
            continue;
        }
        // Sides containing b[0], so each split is tried once.
        for rest in 0u32..1 << 5 {
            if rest.count_ones() != 2 {
                continue;
            }
            let side: Vec<usize> = std::iter::once(b[0]).chain((0..5).filter(|i| rest >> i & 1 == 1).map(|i| b[i + 1])).collect();
            let other: Vec<usize> = b.iter().copied().filter(|v| !side.contains(v)).collect();
            let pairs: Vec<(usize, usize)> = side.iter().flat_map(|&a| other.iter().map(move |&c| (a, c))).collect();
            if link(&adj, &pairs, &b) {
                return true;
            }
        }
    }
    false
}

/// Joins every pair by internally disjoint paths avoiding branch vertices.
fn link(adj: &[Vec<usize>], pairs: &[(usize, usize)], branch: &[usize]) -> bool {
    fn go(adj: &[Vec<usize>], pairs: &[(usize, usize)], blocked: &mut Vec<bool>, used_edges: &mut Vec<(usize, usize)>) -> bool {
        let Some(&(a, b)) = pairs.first() else {
            return true;
        };
        let mut path = vec![a];
        walk(adj, a, b, &pairs[1..], blocked, used_edges, &mut path)
    }
    fn walk(
        adj: &[Vec<usize>],
        at: usize,
        target: usize,
        rest: &[(usize, usize)],
        blocked: &mut Vec<bool>,
        used_edges: &mut Vec<(usize, usize)>,
        path: &mut Vec<usize>,
    ) -> bool {
        for &w in &adj[at] {
            if w == target {
                let e = (at.min(w), at.max(w));
                if used_edges.contains(&e) {
                    continue;
                }
                used_edges.push(e);
                if go(adj, rest, blocked, used_edges) {
                    return true;
                }
                used_edges.pop();
            } else if !blocked[w] {
                blocked[w] = true;
                path.push(w);
                if walk(adj, w, target, rest, blocked, used_edges, path) {
                    return true;
                }
                path.pop();
                blocked[w] = false;
            }
        }
        false
    }
    let mut blocked = vec![false; adj.len()];
    for &v in branch {
        blocked[v] = true;
    }
    go(adj, pairs, &mut blocked, &mut Vec::new())
}

fn planarity_certificates() -> Check {
    let mut planar = 0;
    let mut total = 0;
    for n in 1..=7 {
        for g in generators::all_graphs(n) {
            total += 1;
            let ours = match is_planar(&g) {
                Planarity::Planar(rot) => {
                    ensure(rot.is_planar_embedding_of(&g), || format!("embedding fails Euler on {g:?}"))?;
                    if g.is_connected() && g.edge_count() > 0 {
                        let f = rot.face_count(&g);
                        ensure(g.vertex_count() + f == g.edge_count() + 2, || format!("n - m + f != 2 on {g:?}"))?;
                    }
                    planar += 1;
                    true
                }
                Planarity::NonPlanar(w) => {
                    ensure(verify_witness(&g, &w), || format!("witness rejected on {g:?}"))?;
                    false
                }
            };
            ensure(ours == !has_kuratowski_subdivision(&g), || format!("oracle disagrees on {g:?}"))?;
        }
    }
    Ok(format!("{total} graphs, {planar} planar"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("exact crossing numbers with two-sided certificates", exact_crossing_numbers),
        ("oracle equivalence with the naive decider", oracle_equivalence),
        ("forbidden-edge semantics", forbidden_semantics),
        ("subdivision invariance", subdivision_invariance),
        ("reduction preservation on planted flat grids", reduction_preservation),
        ("drawing validity", drawing_validity),
        ("MSO 2-colorability semantics", mso_semantics),
        ("interpretation of crossed pairs", interpretation_lemma),
        ("planarity certificates", planarity_certificates),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let label = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str()) || name.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{label}: PASS  {name}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("{label}: FAIL  {name}: {why} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

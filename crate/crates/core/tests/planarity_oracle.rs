use kcross::graph::{generators, EdgeId, MultiGraph, VertexId};
use kcross::planarity::{is_planar, planar, verify_witness, Planarity};
use proptest::prelude::*;

/// Brute-force Wagner test: does `g` have a `K5` or `K_{3,3}` minor?
/// Tries every assignment of vertices to branch sets (or deletion).
fn has_kuratowski_minor(g: &MultiGraph) -> bool {
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    let idx = |v: VertexId| verts.iter().position(|&w| w == v).unwrap();
    let mut adj = vec![vec![false; n]; n];
    for (_, u, v) in g.edges() {
        adj[idx(u)][idx(v)] = true;
        adj[idx(v)][idx(u)] = true;
    }
    for parts in [5usize, 6] {
        if n < parts {
            continue;
        }
        let mut assign = vec![0usize; n];
        // `parts` means deleted.
        loop {
            if minor_ok(&adj, &assign, parts) {
                return true;
            }
            let mut i = 0;
            while i < n {
                assign[i] += 1;
                if assign[i] <= parts {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    false
}

fn minor_ok(adj: &[Vec<bool>], assign: &[usize], parts: usize) -> bool {
    let n = adj.len();
    for p in 0..parts {
        let members: Vec<usize> = (0..n).filter(|&v| assign[v] == p).collect();
        if members.is_empty() {
            return false;
        }
        let mut seen = vec![members[0]];
        let mut stack = vec![members[0]];
        while let Some(v) = stack.pop() {
            for &w in &members {
                if adj[v][w] && !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        if seen.len() != members.len() {
            return false;
        }
    }
    let touches = |a: usize, b: usize| {
        (0..n).any(|u| assign[u] == a && (0..n).any(|v| assign[v] == b && adj[u][v]))
    };
    for a in 0..parts {
        for b in a + 1..parts {
            let needed = parts == 5 || (a < 3) != (b < 3);
            if needed && !touches(a, b) {
                return false;
            }
        }
    }
    true
}

fn check_certificate(g: &MultiGraph) -> bool {
    match is_planar(g) {
        Planarity::Planar(rot) => {
            assert!(rot.is_planar_embedding_of(g), "bad embedding for {g:?}");
            true
        }
        Planarity::NonPlanar(w) => {
            assert!(verify_witness(g, &w), "bad witness for {g:?}");
            false
        }
    }
}

#[test]
fn agrees_with_minor_oracle_up_to_six_vertices() {
    for n in 1..=6 {
        for g in generators::all_graphs(n) {
            let ours = check_certificate(&g);
            assert_eq!(ours, planar(&g));
            assert_eq!(ours, !has_kuratowski_minor(&g), "disagreement on {g:?}");
        }
    }
}

#[test]
fn planar_graph_counts_on_seven_vertices() {
    let all = generators::all_graphs(7);
    let planar_all = all.iter().filter(|g| check_certificate(g)).count();
    let planar_conn = all
        .iter()
        .filter(|g| g.is_connected() && planar(g))
        .count();
    assert_eq!(planar_all, 822);
    assert_eq!(planar_conn, 646);
}

fn random_graph() -> impl Strategy<Value = MultiGraph> {
    (2u32..14).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..(3 * n as usize + 4)).prop_map(move |pairs| {
            let edges: Vec<(u32, u32)> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            MultiGraph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn certificates_always_verify(g in random_graph()) {
        check_certificate(&g);
    }

    #[test]
    fn deleting_a_witness_edge_from_k5_plus_extras(extra in proptest::collection::vec((0u32..8, 0u32..8), 0..10)) {
        let mut g = generators::complete(5);
        for v in 5..8 {
            g.add_vertex(VertexId(v)).unwrap();
        }
        for (i, (u, v)) in extra.into_iter().enumerate() {
            if u != v {
                g.add_edge(EdgeId(100 + i as u32), VertexId(u), VertexId(v)).unwrap();
            }
        }
        let Planarity::NonPlanar(w) = is_planar(&g) else {
            panic!("supergraph of K5 declared planar");
        };
        prop_assert!(verify_witness(&g, &w));
        let e = *w.edges().iter().next().unwrap();
        let mut h = g.clone();
        h.remove_edge(e).unwrap();
        prop_assert!(!verify_witness(&h, &w));
    }
}

//! Standard graph families and small exhaustive corpora.

use std::collections::BTreeSet;

use super::MultiGraph;

pub fn complete(n: u32) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    MultiGraph::from_edges(n, &edges).expect("valid construction")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: u32, b: u32) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    MultiGraph::from_edges(a + b, &edges).expect("valid construction")
}

pub fn cycle(n: u32) -> MultiGraph {
    assert!(n >= 3, "cycle needs at least three vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MultiGraph::from_edges(n, &edges).expect("valid construction")
}

pub fn path(n: u32) -> MultiGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    MultiGraph::from_edges(n, &edges).expect("valid construction")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    MultiGraph::from_edges(10, &edges).expect("valid construction")
}

const MAX_CORPUS_N: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Adj {
    n: usize,
    rows: [u8; MAX_CORPUS_N],
}

impl Adj {
    fn has(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    fn code(&self, perm: &[usize]) -> u64 {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has(perm[i], perm[j]) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Largest code over all vertex orders that list vertices by
    /// non-decreasing degree. Isomorphic graphs share this value.
    fn canonical(&self) -> u64 {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| self.rows[v].count_ones());
        let mut classes: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=self.n {
            if i == self.n
                || self.rows[order[i]].count_ones() != self.rows[order[start]].count_ones()
            {
                classes.push((start, i));
                start = i;
            }
        }
        let mut best = 0;
        permute_classes(&mut order, &classes, 0, &mut |p| {
            best = best.max(self.code(p));
        });
        best
    }

    fn to_graph(self) -> MultiGraph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has(u, v) {
                    edges.push((u as u32, v as u32));
                }
            }
        }
        MultiGraph::from_edges(self.n as u32, &edges).expect("valid construction")
    }
}

fn permute_classes(
    order: &mut Vec<usize>,
    classes: &[(usize, usize)],
    class: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if class == classes.len() {
        visit(order);
        return;
    }
    let (lo, hi) = classes[class];
    permute_range(order, lo, hi, lo, &mut |o: &mut Vec<usize>| {
        permute_classes(o, classes, class + 1, visit)
    });
}

fn permute_range(
    order: &mut Vec<usize>,
    lo: usize,
    hi: usize,
    k: usize,
    visit: &mut dyn FnMut(&mut Vec<usize>),
) {
    if k + 1 >= hi {
        visit(order);
        return;
    }
    for i in k..hi {
        order.swap(k, i);
        permute_range(order, lo, hi, k + 1, visit);
        order.swap(k, i);
    }
}

/// All simple graphs on `n` vertices up to isomorphism (`n ≤ 8`).
pub fn all_graphs(n: usize) -> Vec<MultiGraph> {
    assert!(n <= MAX_CORPUS_N, "corpus limited to {MAX_CORPUS_N} vertices");
    if n == 0 {
        return vec![MultiGraph::new()];
    }
    let mut level: Vec<Adj> = vec![Adj {
        n: 1,
        rows: [0; MAX_CORPUS_N],
    }];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..(1 << (size - 1)) {
                let mut h = *g;
                h.n = size;
                let new = size - 1;
                for u in 0..new {
                    if mask >> u & 1 == 1 {
                        h.rows[u] |= 1 << new;
                        h.rows[new] |= 1 << u;
                    }
                }
                if seen.insert(h.canonical()) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level.into_iter().map(Adj::to_graph).collect()
}

/// All connected simple graphs on `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<MultiGraph> {
    all_graphs(n)
        .into_iter()
        .filter(MultiGraph::is_connected)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(complete(6).edge_count(), 15);
        assert_eq!(complete_bipartite(3, 3).edge_count(), 9);
        let p = petersen();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!(p.vertices().all(|v| p.degree(v) == 3));
    }

    #[test]
    fn corpus_counts_match_known_sequences() {
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn seven_vertex_corpus() {
        assert_eq!(all_graphs(7).len(), 1044);
        assert_eq!(connected_graphs(7).len(), 853);
    }
}

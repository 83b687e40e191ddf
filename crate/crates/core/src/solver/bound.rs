//! Euler-formula lower bound on the crossing number.
//!
//! The input is reduced first: loops go, parallel edges collapse and
//! degree-2 vertices are smoothed, all of which never increase the crossing
//! number. The bound is then summed over biconnected blocks, each using its
//! own girth.

use std::collections::{BTreeSet, VecDeque};

/// Lower bound for the graph on vertices `0..n` with the given edges.
pub(crate) fn lower_bound_indexed(n: usize, edges: &[[usize; 2]]) -> usize {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &[u, v] in edges {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    smooth(&mut adj);
    blocks(&adj)
        .iter()
        .map(|block| block_bound(&adj, block))
        .sum()
}

fn smooth(adj: &mut [BTreeSet<usize>]) {
    let mut queue: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() == 2).collect();
    while let Some(v) = queue.pop() {
        if adj[v].len() != 2 {
            continue;
        }
        let mut it = adj[v].iter();
        let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
        adj[v].clear();
        adj[a].remove(&v);
        adj[b].remove(&v);
        adj[a].insert(b);
        adj[b].insert(a);
        for w in [a, b] {
            if adj[w].len() == 2 {
                queue.push(w);
            }
        }
    }
}

/// Vertex sets of the biconnected blocks with at least three vertices.
fn blocks(adj: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || adj[root].is_empty() {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // Frames: (vertex, parent, neighbour iterator position).
        let mut stack: Vec<(usize, usize, Vec<usize>, usize)> =
            vec![(root, usize::MAX, adj[root].iter().copied().collect(), 0)];
        while let Some(frame) = stack.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            if frame.3 < frame.2.len() {
                let w = frame.2[frame.3];
                frame.3 += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, adj[w].iter().copied().collect(), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(up) = stack.last() {
                    let p = up.0;
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut verts = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            verts.insert(a);
                            verts.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        if verts.len() >= 3 {
                            out.push(verts.into_iter().collect());
                        }
                    }
                }
            }
        }
    }
    out
}

fn block_bound(adj: &[BTreeSet<usize>], block: &[usize]) -> usize {
    let inside: BTreeSet<usize> = block.iter().copied().collect();
    let n = block.len() as i64;
    let m = block
        .iter()
        .map(|&v| adj[v].iter().filter(|w| inside.contains(w)).count())
        .sum::<usize>() as i64
        / 2;
    let Some(g) = girth(adj, &inside) else {
        return 0;
    };
    let g = g as i64;
    // m − g(n−2)/(g−2), rounded up.
    let num = m * (g - 2) - g * (n - 2);
    if num <= 0 {
        0
    } else {
        ((num + g - 3) / (g - 2)) as usize
    }
}

fn girth(adj: &[BTreeSet<usize>], inside: &BTreeSet<usize>) -> Option<usize> {
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    for &root in inside {
        for &v in inside {
            dist[v] = usize::MAX;
        }
        dist[root] = 0;
        parent[root] = usize::MAX;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] >= best {
                break;
            }
            for &w in adj[v].iter().filter(|w| inside.contains(w)) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

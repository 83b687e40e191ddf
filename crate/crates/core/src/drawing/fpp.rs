//! Straight-line planar drawings on an integer grid.
//!
//! The graph is connected and triangulated by adding helper vertices, a
//! canonical ordering is found by peeling chord-free vertices off the outer
//! face, and the shift method places vertices at integer points of a
//! `(2n−4) × (n−2)` grid.

use crate::planarity::embed_indexed;

/// Coordinates for vertices `0..n` of a simple planar graph. Helper vertices
/// used during triangulation are dropped from the output. Returns `None` if
/// the graph is not planar.
pub(crate) fn straight_line(n: usize, edges: &[[usize; 2]]) -> Option<Vec<(i64, i64)>> {
    if n == 0 {
        return Some(Vec::new());
    }
    let mut edges = edges.to_vec();
    connect(n, &mut edges);
    if n == 1 {
        return Some(vec![(0, 0)]);
    }
    if n == 2 {
        return Some(vec![(0, 0), (2, 0)]);
    }
    let rot = embed_indexed(n, &edges)?;
    let total = triangulate(n, &rot, &mut edges);
    let rot = embed_indexed(total, &edges)?;
    let coords = shift_method(total, &rot)?;
    Some(coords[..n].to_vec())
}

fn connect(n: usize, edges: &mut Vec<[usize; 2]>) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &[u, v] in edges.iter() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    for v in 1..n {
        let (a, b) = (find(&mut parent, 0), find(&mut parent, v));
        if a != b {
            edges.push([0, v]);
            parent[a] = b;
        }
    }
}

fn faces(rot: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let pos = |v: usize, w: usize| rot[v].iter().position(|&x| x == w).expect("dart");
    let mut used: Vec<Vec<bool>> = rot.iter().map(|r| vec![false; r.len()]).collect();
    let mut out = Vec::new();
    for v in 0..rot.len() {
        for i in 0..rot[v].len() {
            if used[v][i] {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut ia) = (v, i);
            while !used[a][ia] {
                used[a][ia] = true;
                face.push(a);
                let b = rot[a][ia];
                let j = pos(b, a);
                let ib = (j + 1) % rot[b].len();
                a = b;
                ia = ib;
            }
            out.push(face);
        }
    }
    out
}

/// Adds vertices and edges until every face is a triangle and the graph
/// stays simple. Returns the new vertex count.
fn triangulate(n: usize, rot: &[Vec<usize>], edges: &mut Vec<[usize; 2]>) -> usize {
    let mut next = n;
    for face in faces(rot) {
        let len = face.len();
        let mut sorted = face.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == len {
            if len == 3 {
                continue;
            }
            let c = next;
            next += 1;
            for &w in &face {
                edges.push([c, w]);
            }
            continue;
        }
        // The boundary walk revisits a vertex: spokes get a middle vertex,
        // and each resulting pentagon gets its own centre.
        let c = next;
        let spokes: Vec<usize> = (0..len).map(|i| c + 1 + i).collect();
        next += 1 + len;
        for i in 0..len {
            edges.push([c, spokes[i]]);
            edges.push([spokes[i], face[i]]);
        }
        for i in 0..len {
            let j = (i + 1) % len;
            let d = next;
            next += 1;
            for w in [c, spokes[i], face[i], face[j], spokes[j]] {
                edges.push([d, w]);
            }
        }
    }
    next
}

/// Shift method on a triangulation with at least three vertices.
fn shift_method(n: usize, rot: &[Vec<usize>]) -> Option<Vec<(i64, i64)>> {
    let outer = faces(rot).into_iter().next()?;
    if outer.len() != 3 {
        return None;
    }
    let (a, b) = (outer[0], outer[1]);
    let peel = canonical_peel(n, rot, a, b, outer[2])?;
    let mut x = vec![0i64; n];
    let mut y = vec![0i64; n];
    let mut shift_set: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let (v3, _, _) = *peel.last()?;
    x[b] = 2;
    x[v3] = 1;
    y[v3] = 1;
    let mut contour = vec![a, v3, b];
    for &(v, wl, wr) in peel.iter().rev().skip(1) {
        let p = contour.iter().position(|&u| u == wl)?;
        let q = contour.iter().position(|&u| u == wr)?;
        if p >= q {
            return None;
        }
        for &c in &contour[p + 1..q] {
            for &u in &shift_set[c] {
                x[u] += 1;
            }
        }
        for &c in &contour[q..] {
            for &u in &shift_set[c] {
                x[u] += 2;
            }
        }
        let (xp, yp, xq, yq) = (x[wl], y[wl], x[wr], y[wr]);
        x[v] = (xp + xq + yq - yp) / 2;
        y[v] = (xq - xp + yq + yp) / 2;
        let mut set = vec![v];
        for &c in &contour[p + 1..q] {
            set.append(&mut shift_set[c]);
        }
        shift_set[v] = set;
        contour.splice(p + 1..q, [v]);
    }
    Some(x.into_iter().zip(y).collect())
}

/// Removes vertices from the outer boundary, keeping `a` and `b`, always
/// choosing a vertex with no chord. Returns `(vertex, left, right)` triples
/// in removal order, where `left` and `right` were its boundary neighbours.
fn canonical_peel(
    n: usize,
    rot: &[Vec<usize>],
    a: usize,
    b: usize,
    c: usize,
) -> Option<Vec<(usize, usize, usize)>> {
    let mut removed = vec![false; n];
    let mut on_boundary = vec![false; n];
    let mut boundary = vec![a, c, b];
    for &v in &boundary {
        on_boundary[v] = true;
    }
    let mut out = Vec::with_capacity(n - 2);
    while boundary.len() > 2 {
        let mut pick = None;
        for i in 1..boundary.len() - 1 {
            let v = boundary[i];
            let (wl, wr) = (boundary[i - 1], boundary[i + 1]);
            let chord = rot[v]
                .iter()
                .any(|&w| !removed[w] && on_boundary[w] && w != wl && w != wr);
            if !chord {
                pick = Some(i);
                break;
            }
        }
        let i = pick?;
        let v = boundary[i];
        let (wl, wr) = (boundary[i - 1], boundary[i + 1]);
        let r = &rot[v];
        let d = r.len();
        let il = r.iter().position(|&w| w == wl)?;
        let ir = r.iter().position(|&w| w == wr)?;
        let forward: Vec<usize> = (1..d).map(|s| r[(il + s) % d]).take_while(|&w| w != wr).collect();
        let backward: Vec<usize> = (1..d).map(|s| r[(ir + s) % d]).take_while(|&w| w != wl).collect();
        let clean = |arc: &[usize]| arc.iter().all(|&w| !removed[w]);
        let inner: Vec<usize> = match (clean(&forward), clean(&backward)) {
            (true, false) => forward,
            (false, true) => backward.into_iter().rev().collect(),
            (true, true) if backward.is_empty() => forward,
            (true, true) if forward.is_empty() => backward.into_iter().rev().collect(),
            _ => return None,
        };
        removed[v] = true;
        on_boundary[v] = false;
        for &w in &inner {
            on_boundary[w] = true;
        }
        boundary.splice(i..=i, inner);
        out.push((v, wl, wr));
    }
    if out.len() != n - 2 {
        return None;
    }
    Some(out)
}

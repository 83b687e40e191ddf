//! Left-right planarity test with embedding construction.
//!
//! Works on simple graphs given by vertex count and an edge list. Each
//! undirected edge is oriented once by the DFS and from then on is referred
//! to by its index.

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct State<'a> {
    adj: &'a [Vec<(usize, usize)>],
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    ordered: Vec<Vec<usize>>,
    reference: Vec<usize>,
    side: Vec<i8>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
    roots: Vec<usize>,
}

/// Clockwise neighbour orders, one list per vertex.
pub(crate) type Rotation = Vec<Vec<usize>>;

impl<'a> State<'a> {
    fn new(n: usize, m: usize, adj: &'a [Vec<(usize, usize)>]) -> Self {
        State {
            adj,
            src: vec![NONE; m],
            dst: vec![NONE; m],
            oriented: vec![false; m],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            ordered: vec![Vec::new(); n],
            reference: vec![NONE; m],
            side: vec![1; m],
            lowpt_edge: vec![NONE; m],
            stack_bottom: vec![0; m],
            stack: Vec::new(),
            roots: Vec::new(),
        }
    }

    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for i in 0..self.adj[v].len() {
            let (w, vw) = self.adj[v][i];
            if self.oriented[vw] {
                continue;
            }
            self.oriented[vw] = true;
            self.src[vw] = v;
            self.dst[vw] = w;
            self.lowpt[vw] = self.height[v];
            self.lowpt2[vw] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = vw;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < self.height[v] {
                self.nesting_depth[vw] += 1;
            }
            if e != NONE {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => unreachable!("empty conflict pair on stack"),
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        for idx in 0..self.ordered[v].len() {
            let ei = self.ordered[v][idx];
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.stack.len();
            if ei == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("constraint stack underflow");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("non-empty right interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.expect("set")] = q.right.high.unwrap_or(NONE);
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(low) = p.right.low {
                self.reference[low] = q.right.high.unwrap_or(NONE);
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(low) = p.left.low {
                self.reference[low] = q.left.high.unwrap_or(NONE);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().expect("non-empty");
            if let Some(low) = p.left.low {
                self.side[low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = opt(self.reference[h]);
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.reference[low] = p.right.low.unwrap_or(NONE);
                    self.side[low] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = opt(self.reference[h]);
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.reference[low] = p.left.low.unwrap_or(NONE);
                    self.side[low] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edge implies a pair");
            let hl = top.left.high;
            let hr = top.right.high;
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => l,
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => l,
                (_, r) => r.unwrap_or(NONE),
            };
        }
    }

    fn sign(&mut self, e: usize) -> i8 {
        // Resolve the reference chain iteratively.
        let mut chain = Vec::new();
        let mut cur = e;
        while self.reference[cur] != NONE {
            chain.push(cur);
            cur = self.reference[cur];
        }
        let mut s = self.side[cur];
        while let Some(x) = chain.pop() {
            self.side[x] *= s;
            self.reference[x] = NONE;
            s = self.side[x];
        }
        self.side[e]
    }
}

fn opt(x: usize) -> Option<usize> {
    (x != NONE).then_some(x)
}

fn adjacency(n: usize, edges: &[[usize; 2]]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n];
    for (i, &[u, v]) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    adj
}

/// Runs orientation and testing. Returns the state for embedding on success.
fn run<'a>(n: usize, edges: &[[usize; 2]], adj: &'a [Vec<(usize, usize)>]) -> Option<State<'a>> {
    let m = edges.len();
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut st = State::new(n, m, adj);
    for v in 0..n {
        if st.height[v] == NONE {
            st.height[v] = 0;
            st.roots.push(v);
            st.orient(v);
        }
    }
    for e in 0..m {
        let s = st.src[e];
        st.ordered[s].push(e);
    }
    for v in 0..n {
        let mut list = std::mem::take(&mut st.ordered[v]);
        list.sort_by_key(|&e| st.nesting_depth[e]);
        st.ordered[v] = list;
    }
    let roots = st.roots.clone();
    for r in roots {
        if !st.test(r) {
            return None;
        }
    }
    Some(st)
}

/// Planarity of a simple graph.
pub(crate) fn is_planar(n: usize, edges: &[[usize; 2]]) -> bool {
    let adj = adjacency(n, edges);
    run(n, edges, &adj).is_some()
}

/// Planar rotation (neighbour vertex indices in cyclic order) of a simple
/// graph, or `None` if it is not planar.
pub(crate) fn embed(n: usize, edges: &[[usize; 2]]) -> Option<Rotation> {
    let adj = adjacency(n, edges);
    let mut st = run(n, edges, &adj)?;
    let m = edges.len();
    for e in 0..m {
        let s = st.sign(e) as i64;
        st.nesting_depth[e] *= s;
    }
    let mut emb = Embedding::new(n);
    for v in 0..n {
        let mut list = std::mem::take(&mut st.ordered[v]);
        list.sort_by_key(|&e| st.nesting_depth[e]);
        let mut prev = None;
        for &e in &list {
            let w = st.dst[e];
            emb.insert_after(v, w, prev);
            prev = Some(w);
        }
        st.ordered[v] = list;
    }
    let mut left_ref = vec![NONE; n];
    let mut right_ref = vec![NONE; n];
    for &r in &st.roots {
        embed_dfs(&st, r, &mut emb, &mut left_ref, &mut right_ref);
    }
    Some(emb.into_rotation())
}

fn embed_dfs(
    st: &State<'_>,
    v: usize,
    emb: &mut Embedding,
    left_ref: &mut [usize],
    right_ref: &mut [usize],
) {
    for &ei in &st.ordered[v] {
        let w = st.dst[ei];
        if ei == st.parent_edge[w] {
            emb.insert_first(w, v);
            left_ref[v] = w;
            right_ref[v] = w;
            embed_dfs(st, w, emb, left_ref, right_ref);
        } else if st.side[ei] == 1 {
            emb.insert_after(w, v, Some(right_ref[w]));
        } else {
            emb.insert_before(w, v, left_ref[w]);
            left_ref[w] = v;
        }
    }
}

/// Cyclic neighbour lists with a designated first element.
struct Embedding {
    lists: Vec<Vec<usize>>,
    first: Vec<usize>,
}

impl Embedding {
    fn new(n: usize) -> Self {
        Embedding {
            lists: vec![Vec::new(); n],
            first: vec![NONE; n],
        }
    }

    fn insert_after(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => {
                self.lists[v].push(w);
                self.first[v] = w;
            }
            Some(r) => {
                let pos = self.position(v, r);
                self.lists[v].insert(pos + 1, w);
            }
        }
    }

    fn insert_before(&mut self, v: usize, w: usize, reference: usize) {
        let pos = self.position(v, reference);
        self.lists[v].insert(pos, w);
        if self.first[v] == reference {
            self.first[v] = w;
        }
    }

    fn insert_first(&mut self, v: usize, w: usize) {
        if self.lists[v].is_empty() {
            self.insert_after(v, w, None);
        } else {
            let f = self.first[v];
            self.insert_before(v, w, f);
        }
    }

    fn position(&self, v: usize, w: usize) -> usize {
        self.lists[v]
            .iter()
            .position(|&x| x == w)
            .expect("reference neighbour present")
    }

    fn into_rotation(self) -> Rotation {
        self.lists
    }
}

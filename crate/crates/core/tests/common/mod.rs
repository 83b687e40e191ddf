#![allow(dead_code)]

use std::collections::VecDeque;

use kcross::graph::{MultiGraph, VertexId};
use kcross::mso::{parse, Formula, Var};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random loop-free multigraph with `|V| + |E| <= max_universe`.
pub fn random_multigraph<R: Rng>(rng: &mut R, max_universe: usize, min_edges: usize) -> MultiGraph {
    let n = rng.gen_range(2..=(max_universe - min_edges).min(6)) as u32;
    let m = rng.gen_range(min_edges..=max_universe - n as usize);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v));
        }
    }
    MultiGraph::from_edges(n, &edges).unwrap()
}

/// Breadth-first 2-coloring.
pub fn is_bipartite(g: &MultiGraph) -> bool {
    let mut color = std::collections::BTreeMap::<VertexId, bool>::new();
    for s in g.vertices() {
        if color.contains_key(&s) {
            continue;
        }
        color.insert(s, false);
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for w in g.neighbors(v) {
                match color.get(&w) {
                    Some(&c) if c == color[&v] => return false,
                    Some(_) => {}
                    None => {
                        color.insert(w, !color[&v]);
                        q.push_back(w);
                    }
                }
            }
        }
    }
    true
}

/// Random well-scoped formula over the given individual and set variables.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, inds: &mut Vec<String>, sets: &mut Vec<String>) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.2);
    if leaf {
        let pick = |rng: &mut R, v: &[String]| v.choose(rng).cloned();
        let x = pick(rng, inds);
        return match (rng.gen_range(0..7), x) {
            (0, _) | (_, None) => {
                if rng.gen_bool(0.5) {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            (1, Some(x)) => Formula::Vertex(x),
            (2, Some(x)) => Formula::Edge(x),
            (3, Some(x)) => Formula::Inc(x, pick(rng, inds).unwrap()),
            (4, Some(x)) => Formula::Eq(x, pick(rng, inds).unwrap()),
            (_, Some(x)) => match pick(rng, sets) {
                Some(s) => Formula::Mem(s, x),
                None => Formula::Vertex(x),
            },
        };
    }
    match rng.gen_range(0..7) {
        0 => random_formula(rng, depth - 1, inds, sets).not(),
        1 => random_formula(rng, depth - 1, inds, sets).and(random_formula(rng, depth - 1, inds, sets)),
        2 => random_formula(rng, depth - 1, inds, sets).or(random_formula(rng, depth - 1, inds, sets)),
        3 => random_formula(rng, depth - 1, inds, sets).implies(random_formula(rng, depth - 1, inds, sets)),
        k => {
            let set = k == 6 && sets.len() < 2;
            let var = if set {
                let name = format!("S{}", sets.len());
                sets.push(name.clone());
                Var::Set(name)
            } else {
                let name = format!("y{}", inds.len());
                inds.push(name.clone());
                Var::Ind(name)
            };
            let body = Box::new(random_formula(rng, depth - 1, inds, sets));
            if set {
                sets.pop();
            } else {
                inds.pop();
            }
            if k == 4 || (set && rng.gen_bool(0.5)) {
                Formula::Exists(var, body)
            } else {
                Formula::Forall(var, body)
            }
        }
    }
}

/// Formulas with free set variable `Y`, mixing quantifier alternation and
/// set quantifiers.
pub fn formula_pool() -> Vec<Formula> {
    [
        "all x. (V x -> ex e. (E e & I x e))",
        "ex x. (V x & all e. (E e -> I x e))",
        "all e. ((E e & ~Y e) -> ex v. ex w. (v != w & I v e & I w e))",
        "ex a. ex b. (a != b & E a & E b & all v. (I v a -> I v b))",
        "all x. ex y. (x = y | I x y | I y x)",
        "ex v. (V v & all a. all b. ((I v a & I v b & ~Y a & ~Y b) -> a = b))",
        "EX S. all e. (E e -> (ex u. (I u e & S u) & ex w. (I w e & ~S w)))",
        "EX S. (ex x. (V x & S x)) & (ex y. (V y & ~S y)) & all e. all u. all w. ((I u e & I w e & S u) -> S w)",
        "EX S. (ex a. S a) & (all a. (S a -> E a & ~Y a)) & all v. ~(ex a. ex b. (a != b & S a & S b & I v a & I v b))",
        "all S. ((all v. (V v -> S v)) -> ex e. (E e & ~S e) | ~ex e. E e)",
        "all X. ex x. (X x -> all y. (Y y -> X y))",
    ]
    .iter()
    .map(|t| parse(t).unwrap())
    .collect()
}

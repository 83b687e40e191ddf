//! Naive evaluation: individual quantifiers range over the universe, set
//! quantifiers over all of its subsets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Formula, MsoError, Var};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, VertexId};

/// An element of `U = V ∪ E`, written `v3` or `e7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Elem {
    V(VertexId),
    E(EdgeId),
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::V(v) => write!(f, "v{}", v.0),
            Elem::E(e) => write!(f, "e{}", e.0),
        }
    }
}

impl FromStr for Elem {
    type Err = MsoError;

    fn from_str(s: &str) -> Result<Self, MsoError> {
        let bad = || MsoError::UnknownElement(s.to_string());
        let (kind, num) = s.split_at_checked(1).ok_or_else(bad)?;
        let n: u32 = num.parse().map_err(|_| bad())?;
        match kind {
            "v" => Ok(Elem::V(VertexId(n))),
            "e" => Ok(Elem::E(EdgeId(n))),
            _ => Err(bad()),
        }
    }
}

impl From<Elem> for String {
    fn from(e: Elem) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for Elem {
    type Error = MsoError;

    fn try_from(s: String) -> Result<Self, MsoError> {
        s.parse()
    }
}

/// Values for free variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    #[serde(default)]
    pub elems: BTreeMap<String, Elem>,
    #[serde(default)]
    pub sets: BTreeMap<String, BTreeSet<Elem>>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_elem(mut self, x: &str, a: Elem) -> Self {
        self.elems.insert(x.into(), a);
        self
    }

    pub fn with_set(mut self, x: &str, a: impl IntoIterator<Item = Elem>) -> Self {
        self.sets.insert(x.into(), a.into_iter().collect());
        self
    }

    pub fn with_edges(self, x: &str, f: &EdgeSet) -> Self {
        self.with_set(x, f.iter().map(Elem::E))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest universe over which set quantifiers are enumerated.
    pub max_set_universe: usize,
    /// Maximum number of evaluation steps.
    pub max_steps: Option<u64>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            max_set_universe: 64,
            max_steps: None,
        }
    }
}

/// The universe of a graph, vertices first, each sort by identifier.
#[derive(Clone, Debug)]
pub struct Universe {
    elems: Vec<Elem>,
    index: BTreeMap<Elem, usize>,
    vertices: usize,
    /// Endpoints (as universe indices) of each edge, by edge position.
    ends: Vec<[usize; 2]>,
}

impl Universe {
    pub fn new(g: &MultiGraph) -> Self {
        let mut elems: Vec<Elem> = g.vertices().map(Elem::V).collect();
        let vertices = elems.len();
        elems.extend(g.edge_ids().map(Elem::E));
        let index: BTreeMap<Elem, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let ends = g
            .edges()
            .map(|(_, u, v)| [index[&Elem::V(u)], index[&Elem::V(v)]])
            .collect();
        Universe {
            elems,
            index,
            vertices,
            ends,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    fn is_vertex(&self, a: usize) -> bool {
        a < self.vertices
    }

    fn incident(&self, x: usize, y: usize) -> bool {
        self.is_vertex(x) && !self.is_vertex(y) && self.ends[y - self.vertices].contains(&x)
    }
}

/// Sets are bit masks over the universe.
type Mask = u128;
const MAX_UNIVERSE: usize = Mask::BITS as usize;

enum Node {
    True,
    False,
    Vertex(usize),
    Edge(usize),
    Inc(usize, usize),
    Mem(usize, usize),
    Eq(usize, usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    ExistsInd(usize, Box<Node>),
    ForallInd(usize, Box<Node>),
    ExistsSet(usize, Box<Node>),
    ForallSet(usize, Box<Node>),
}

/// Variable scopes resolved to slots.
struct Compiler {
    ind: Vec<(String, usize)>,
    set: Vec<(String, usize)>,
    ind_slots: usize,
    set_slots: usize,
}

impl Compiler {
    fn lookup(scope: &[(String, usize)], x: &str) -> usize {
        scope
            .iter()
            .rev()
            .find(|(n, _)| n == x)
            .map(|&(_, s)| s)
            .expect("free variables are bound before compiling")
    }

    fn i(&self, x: &str) -> usize {
        Self::lookup(&self.ind, x)
    }

    fn compile(&mut self, f: &Formula) -> Node {
        let b = |n: Node| Box::new(n);
        match f {
            Formula::True => Node::True,
            Formula::False => Node::False,
            Formula::Vertex(x) => Node::Vertex(self.i(x)),
            Formula::Edge(x) => Node::Edge(self.i(x)),
            Formula::Inc(x, y) => Node::Inc(self.i(x), self.i(y)),
            Formula::Eq(x, y) => Node::Eq(self.i(x), self.i(y)),
            Formula::Mem(s, x) => Node::Mem(Self::lookup(&self.set, s), self.i(x)),
            Formula::Not(a) => Node::Not(b(self.compile(a))),
            Formula::And(x, y) => Node::And(b(self.compile(x)), b(self.compile(y))),
            Formula::Or(x, y) => Node::Or(b(self.compile(x)), b(self.compile(y))),
            Formula::Implies(x, y) => Node::Implies(b(self.compile(x)), b(self.compile(y))),
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let ex = matches!(f, Formula::Exists(..));
                match v {
                    Var::Ind(name) => {
                        let slot = self.ind_slots;
                        self.ind_slots += 1;
                        self.ind.push((name.clone(), slot));
                        let body = b(self.compile(body));
                        self.ind.pop();
                        if ex {
                            Node::ExistsInd(slot, body)
                        } else {
                            Node::ForallInd(slot, body)
                        }
                    }
                    Var::Set(name) => {
                        let slot = self.set_slots;
                        self.set_slots += 1;
                        self.set.push((name.clone(), slot));
                        let body = b(self.compile(body));
                        self.set.pop();
                        if ex {
                            Node::ExistsSet(slot, body)
                        } else {
                            Node::ForallSet(slot, body)
                        }
                    }
                }
            }
        }
    }
}

/// Why a run stopped early.
enum Stop {
    /// Membership of element `bit` in set slot `slot` is still undecided.
    Need(usize, usize),
    Fail(MsoError),
}

/// Set quantifiers decide membership bits lazily: the body runs under a
/// partial set, and only the bits it actually reads are branched on. A
/// value computed under a partial set holds for every completion of it.
struct Machine<'u> {
    u: &'u Universe,
    ind: Vec<usize>,
    set: Vec<Mask>,
    known: Vec<Mask>,
    steps: u64,
    limit: u64,
}

impl Machine<'_> {
    fn run(&mut self, n: &Node) -> Result<bool, Stop> {
        self.steps += 1;
        if self.steps > self.limit {
            return Err(Stop::Fail(MsoError::Budget(self.limit)));
        }
        Ok(match n {
            Node::True => true,
            Node::False => false,
            Node::Vertex(x) => self.u.is_vertex(self.ind[*x]),
            Node::Edge(x) => !self.u.is_vertex(self.ind[*x]),
            Node::Inc(x, y) => self.u.incident(self.ind[*x], self.ind[*y]),
            Node::Eq(x, y) => self.ind[*x] == self.ind[*y],
            Node::Mem(s, x) => {
                let bit = self.ind[*x];
                if self.known[*s] >> bit & 1 == 0 {
                    return Err(Stop::Need(*s, bit));
                }
                self.set[*s] >> bit & 1 == 1
            }
            Node::Not(a) => !self.run(a)?,
            Node::And(a, b) => self.run(a)? && self.run(b)?,
            Node::Or(a, b) => self.run(a)? || self.run(b)?,
            Node::Implies(a, b) => !self.run(a)? || self.run(b)?,
            Node::ExistsInd(s, body) | Node::ForallInd(s, body) => {
                let want = matches!(n, Node::ExistsInd(..));
                let mut result = !want;
                for a in 0..self.u.len() {
                    self.ind[*s] = a;
                    if self.run(body)? == want {
                        result = want;
                        break;
                    }
                }
                result
            }
            Node::ExistsSet(s, body) | Node::ForallSet(s, body) => {
                let want = matches!(n, Node::ExistsSet(..));
                self.known[*s] = 0;
                self.set[*s] = 0;
                self.branch(*s, body, want)?
            }
        })
    }

    fn branch(&mut self, s: usize, body: &Node, want: bool) -> Result<bool, Stop> {
        match self.run(body) {
            Err(Stop::Need(t, bit)) if t == s => {
                let m: Mask = 1 << bit;
                self.known[s] |= m;
                self.set[s] &= !m;
                let mut r = self.branch(s, body, want);
                if matches!(r, Ok(v) if v != want) {
                    self.set[s] |= m;
                    r = self.branch(s, body, want);
                }
                self.known[s] &= !m;
                self.set[s] &= !m;
                r
            }
            other => other,
        }
    }

    fn finish(&mut self, n: &Node) -> Result<bool, MsoError> {
        match self.run(n) {
            Ok(v) => Ok(v),
            Err(Stop::Fail(e)) => Err(e),
            Err(Stop::Need(..)) => unreachable!("every set slot is bound or fully assigned"),
        }
    }
}

/// Prepared evaluation of `f` with the free variables in `extra` left open.
struct Prepared {
    node: Node,
    ind: Vec<usize>,
    set: Vec<Mask>,
    /// Slots of the open variables.
    open: Vec<usize>,
}

fn prepare(
    u: &Universe,
    alpha: &Assignment,
    f: &Formula,
    open: &[&str],
    opts: &EvalOptions,
) -> Result<Prepared, MsoError> {
    if u.len() > MAX_UNIVERSE {
        return Err(MsoError::UniverseTooLarge {
            size: u.len(),
            max: MAX_UNIVERSE,
        });
    }
    if f.set_quantifiers() > 0 && u.len() > opts.max_set_universe {
        return Err(MsoError::UniverseTooLarge {
            size: u.len(),
            max: opts.max_set_universe,
        });
    }
    let mut c = Compiler {
        ind: Vec::new(),
        set: Vec::new(),
        ind_slots: 0,
        set_slots: 0,
    };
    let mut ind = Vec::new();
    let mut set = Vec::new();
    let mut open_slots = Vec::new();
    let free = f.free_vars();
    for x in open {
        if !free.contains(&Var::Ind(x.to_string())) {
            return Err(MsoError::NotFree(x.to_string()));
        }
        c.ind.push((x.to_string(), c.ind_slots));
        open_slots.push(c.ind_slots);
        c.ind_slots += 1;
        ind.push(0);
    }
    let elem = |a: &Elem| u.index.get(a).copied().ok_or_else(|| MsoError::UnknownElement(a.to_string()));
    for v in f.free_vars() {
        match v {
            Var::Ind(x) if open.contains(&x.as_str()) => {}
            Var::Ind(x) => {
                let a = alpha.elems.get(&x).ok_or_else(|| {
                    if alpha.sets.contains_key(&x) {
                        MsoError::Sort(x.clone())
                    } else {
                        MsoError::Unbound(x.clone())
                    }
                })?;
                ind.push(elem(a)?);
                c.ind.push((x, c.ind_slots));
                c.ind_slots += 1;
            }
            Var::Set(x) => {
                let s = alpha.sets.get(&x).ok_or_else(|| {
                    if alpha.elems.contains_key(&x) {
                        MsoError::Sort(x.clone())
                    } else {
                        MsoError::Unbound(x.clone())
                    }
                })?;
                let mut mask: Mask = 0;
                for a in s {
                    mask |= 1 << elem(a)?;
                }
                set.push(mask);
                c.set.push((x, c.set_slots));
                c.set_slots += 1;
            }
        }
    }
    let node = c.compile(f);
    ind.resize(c.ind_slots, 0);
    set.resize(c.set_slots, 0);
    Ok(Prepared {
        node,
        ind,
        set,
        open: open_slots,
    })
}

/// Decides `(G, α) ⊨ φ`.
pub fn eval(g: &MultiGraph, alpha: &Assignment, f: &Formula, opts: &EvalOptions) -> Result<bool, MsoError> {
    let u = Universe::new(g);
    let p = prepare(&u, alpha, f, &[], opts)?;
    let known = vec![Mask::MAX; p.set.len()];
    let mut m = Machine {
        u: &u,
        ind: p.ind,
        set: p.set,
        known,
        steps: 0,
        limit: opts.max_steps.unwrap_or(u64::MAX),
    };
    m.finish(&p.node)
}

/// Finds values for the free individual variables `vars` (unassigned in
/// `alpha`) that make `φ` true; the first in lexicographic universe order.
pub fn eval_witness(
    g: &MultiGraph,
    alpha: &Assignment,
    f: &Formula,
    vars: &[&str],
    opts: &EvalOptions,
) -> Result<Option<BTreeMap<String, Elem>>, MsoError> {
    let u = Universe::new(g);
    let p = prepare(&u, alpha, f, vars, opts)?;
    let known = vec![Mask::MAX; p.set.len()];
    let mut m = Machine {
        u: &u,
        ind: p.ind,
        set: p.set,
        known,
        steps: 0,
        limit: opts.max_steps.unwrap_or(u64::MAX),
    };
    if vars.is_empty() {
        return Ok(m.finish(&p.node)?.then(BTreeMap::new));
    }
    if u.is_empty() {
        return Ok(None);
    }
    let mut tuple = vec![0usize; vars.len()];
    loop {
        for (&slot, &a) in p.open.iter().zip(&tuple) {
            m.ind[slot] = a;
        }
        if m.finish(&p.node)? {
            return Ok(Some(
                vars.iter()
                    .zip(&tuple)
                    .map(|(x, &a)| (x.to_string(), u.elems[a]))
                    .collect(),
            ));
        }
        // Next tuple, last position fastest.
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < u.len() {
                break;
            }
            tuple[i] = 0;
        }
    }
}

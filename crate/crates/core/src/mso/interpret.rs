//! Syntactic interpretation of `G^{e1×e2}` inside `G`.
//!
//! With `x1`, `x2` denoting the crossed edges `e1`, `e2`, every element of
//! the crossed graph is encoded as a pair `(y, y')` of elements of `G`:
//!
//! * an element `a ∉ {e1, e2}` of `G` is `(a, a)`;
//! * the new vertex is `(e1, e2)`;
//! * the new edge joining it to an endpoint `u` of `e_i` is `(u, e_i)`.
//!
//! The cases are disjoint, so the encoding is a bijection from the crossed
//! universe onto the pairs satisfying `dom(y, y')`.
//!
//! A set `S` of the crossed graph is encoded by a set `S` of `G` plus two
//! individual selectors `w1`, `w2`. Original elements and the new vertex
//! (through the bit of `e1`) are read from `S`; the new edges at the ends of
//! `e_i` are read from `w_i`, which takes one of four values: `x1` (both
//! ends), `x2` (neither), or one endpoint `u` of `e_i` (just that end).
//! Using individual selectors instead of further set variables keeps naive
//! evaluation affordable: each set quantifier costs `2^|U|·16` instead of
//! `2^(4|U|)`.
//!
//! Free individual variables denote original elements, encoded as
//! `(z, z)`, and free set variables are read on original elements only, so
//! a free `Y` stands for the same edge set on both sides.

use std::collections::BTreeSet;

use super::{fresh_name, Formula, MsoError, Var};

fn eq(a: &str, b: &str) -> Formula {
    if a == b {
        Formula::True
    } else {
        Formula::eq(a, b)
    }
}

fn neq(a: &str, b: &str) -> Formula {
    if a == b {
        Formula::False
    } else {
        Formula::neq(a, b)
    }
}

fn and(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::True, x) | (x, Formula::True) => x,
        (Formula::False, _) | (_, Formula::False) => Formula::False,
        (a, b) => a.and(b),
    }
}

fn or(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::False, x) | (x, Formula::False) => x,
        (Formula::True, _) | (_, Formula::True) => Formula::True,
        (a, b) => a.or(b),
    }
}

fn ands(parts: impl IntoIterator<Item = Formula>) -> Formula {
    parts.into_iter().fold(Formula::True, and)
}

fn ors(parts: impl IntoIterator<Item = Formula>) -> Formula {
    parts.into_iter().fold(Formula::False, or)
}

#[derive(Clone)]
enum Repr {
    Pair(String, String),
    Set { name: String, w1: String, w2: String },
    FreeSet(String),
}

struct Interp {
    x1: String,
    x2: String,
    taken: BTreeSet<String>,
    scope: Vec<(Var, Repr)>,
}

impl Interp {
    fn pair(&self, p: &str) -> (String, String) {
        let v = Var::Ind(p.to_string());
        match self.scope.iter().rev().find(|(w, _)| *w == v) {
            Some((_, Repr::Pair(a, b))) => (a.clone(), b.clone()),
            _ => (p.to_string(), p.to_string()),
        }
    }

    fn set(&self, s: &str) -> Repr {
        let v = Var::Set(s.to_string());
        self.scope
            .iter()
            .rev()
            .find(|(w, _)| *w == v)
            .map(|(_, r)| r.clone())
            .unwrap_or_else(|| Repr::FreeSet(s.to_string()))
    }

    fn dom(&self, y: &str, y2: &str) -> Formula {
        let (x1, x2) = (self.x1.as_str(), self.x2.as_str());
        ors([
            ands([eq(y, y2), Formula::neq(y, x1), Formula::neq(y, x2)]),
            and(eq(y, x1), eq(y2, x2)),
            ands([Formula::vertex(y), or(eq(y2, x1), eq(y2, x2)), Formula::inc(y, y2)]),
        ])
    }

    fn dom_set(&self, w1: &str, w2: &str) -> Formula {
        let (x1, x2) = (self.x1.as_str(), self.x2.as_str());
        and(
            ors([eq(w1, x1), eq(w1, x2), Formula::inc(w1, x1)]),
            ors([eq(w2, x1), eq(w2, x2), Formula::inc(w2, x2)]),
        )
    }

    fn tr(&mut self, f: &Formula) -> Formula {
        let (x1, x2) = (self.x1.clone(), self.x2.clone());
        match f {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Vertex(p) => {
                let (y, y2) = self.pair(p);
                or(and(eq(&y, &y2), Formula::vertex(&y)), and(eq(&y, &x1), eq(&y2, &x2)))
            }
            Formula::Edge(p) => {
                let (y, y2) = self.pair(p);
                or(
                    and(eq(&y, &y2), Formula::edge(&y)),
                    and(Formula::vertex(&y), neq(&y, &y2)),
                )
            }
            Formula::Inc(p, q) => {
                let (p, p2) = self.pair(p);
                let (q, q2) = self.pair(q);
                // An original edge keeps its original ends; a new edge
                // `(u, e_i)` has ends `u` and the new vertex.
                let original = ands([eq(&q, &q2), Formula::edge(&q), eq(&p, &p2), Formula::inc(&p, &q)]);
                let new = ands([
                    Formula::vertex(&q),
                    neq(&q, &q2),
                    or(and(eq(&p, &x1), eq(&p2, &x2)), and(eq(&p, &p2), eq(&p, &q))),
                ]);
                or(original, new)
            }
            Formula::Eq(p, q) => {
                let (p, p2) = self.pair(p);
                let (q, q2) = self.pair(q);
                and(eq(&p, &q), eq(&p2, &q2))
            }
            Formula::Mem(s, p) => {
                let (y, y2) = self.pair(p);
                match self.set(s) {
                    Repr::FreeSet(name) => and(Formula::mem(&name, &y), eq(&y, &y2)),
                    Repr::Set { name, w1, w2 } => ors([
                        and(
                            Formula::mem(&name, &y),
                            or(eq(&y, &y2), and(eq(&y, &x1), eq(&y2, &x2))),
                        ),
                        ands([eq(&y2, &x1), Formula::vertex(&y), or(eq(&w1, &y), eq(&w1, &x1))]),
                        ands([eq(&y2, &x2), Formula::vertex(&y), or(eq(&w2, &y), eq(&w2, &x2))]),
                    ]),
                    Repr::Pair(..) => unreachable!("set lookups only return set representations"),
                }
            }
            Formula::Not(a) => match self.tr(a) {
                Formula::True => Formula::False,
                Formula::False => Formula::True,
                other => other.not(),
            },
            Formula::And(a, b) => and(self.tr(a), self.tr(b)),
            Formula::Or(a, b) => or(self.tr(a), self.tr(b)),
            Formula::Implies(a, b) => {
                let a = self.tr(a);
                let b = self.tr(b);
                match (a, b) {
                    (Formula::True, b) => b,
                    (Formula::False, _) | (_, Formula::True) => Formula::True,
                    (a, b) => a.implies(b),
                }
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let ex = matches!(f, Formula::Exists(..));
                match v {
                    Var::Ind(p) => {
                        let p2 = fresh_name(p, &mut self.taken);
                        let dom = self.dom(p, &p2);
                        self.scope.push((v.clone(), Repr::Pair(p.clone(), p2.clone())));
                        let body = self.tr(body);
                        self.scope.pop();
                        let inner = if ex { and(dom, body) } else { dom.implies(body) };
                        if ex {
                            Formula::exists(p, Formula::exists(&p2, inner))
                        } else {
                            Formula::forall(p, Formula::forall(&p2, inner))
                        }
                    }
                    Var::Set(s) => {
                        let w1 = fresh_name(&s.to_lowercase(), &mut self.taken);
                        let w2 = fresh_name(&s.to_lowercase(), &mut self.taken);
                        let dom = self.dom_set(&w1, &w2);
                        self.scope.push((
                            v.clone(),
                            Repr::Set {
                                name: s.clone(),
                                w1: w1.clone(),
                                w2: w2.clone(),
                            },
                        ));
                        let body = self.tr(body);
                        self.scope.pop();
                        if ex {
                            Formula::exists_set(s, Formula::exists(&w1, Formula::exists(&w2, and(dom, body))))
                        } else {
                            Formula::forall_set(s, Formula::forall(&w1, Formula::forall(&w2, dom.implies(body))))
                        }
                    }
                }
            }
        }
    }
}

/// Builds `φ*(x1, x2)`: for distinct edges `e1, e2 ∉ F`,
/// `G ⊨ φ*(e1, e2, F)` iff `G^{e1×e2} ⊨ φ(F)`.
pub fn interpret_crossed(f: &Formula, x1: &str, x2: &str) -> Result<Formula, MsoError> {
    for x in [x1, x2] {
        if f.names().contains(x) {
            return Err(MsoError::Capture(x.to_string()));
        }
        if !x.starts_with(|c: char| c.is_lowercase()) {
            return Err(MsoError::Sort(x.to_string()));
        }
    }
    if x1 == x2 {
        return Err(MsoError::Capture(x1.to_string()));
    }
    let mut taken = f.names();
    taken.insert(x1.to_string());
    taken.insert(x2.to_string());
    let mut it = Interp {
        x1: x1.to_string(),
        x2: x2.to_string(),
        taken,
        scope: Vec::new(),
    };
    Ok(it.tr(f))
}

/// The formulas `ψ_1..ψ_l`, `φ_1..φ_l` and `χ_l` over the free variables
/// `x1`, `x2` and `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiFamily {
    pub psi: Vec<Formula>,
    pub phi: Vec<Formula>,
    pub chi: Formula,
}

impl ChiFamily {
    /// Sizes of `ψ_1..ψ_l`.
    pub fn psi_sizes(&self) -> Vec<usize> {
        self.psi.iter().map(Formula::size).collect()
    }
}

/// `x1 ≠ x2 ∧ E x1 ∧ E x2 ∧ ¬Y x1 ∧ ¬Y x2`.
pub(crate) fn guard() -> Formula {
    Formula::all_of([
        Formula::neq("x1", "x2"),
        Formula::edge("x1"),
        Formula::edge("x2"),
        Formula::mem("Y", "x1").not(),
        Formula::mem("Y", "x2").not(),
    ])
}

/// Unfolds `ψ_1 = base*`, `φ_i = ∃x1 ∃x2 (guard ∧ ψ_i)`, `ψ_{i+1} = φ_i*`
/// and `χ_l = guard ∧ ψ_l`.
pub fn build_chi(l: usize, base: &Formula) -> Result<ChiFamily, MsoError> {
    if l == 0 {
        return Err(MsoError::Level);
    }
    if let Some(v) = base.free_vars().into_iter().next() {
        return Err(MsoError::NotSentence(v.name().to_string()));
    }
    let reserved: BTreeSet<String> = ["x1", "x2", "Y"].iter().map(|s| s.to_string()).collect();
    let mut psi = vec![interpret_crossed(&base.rename_bound(&reserved), "x1", "x2")?];
    let mut phi = Vec::with_capacity(l);
    for i in 0..l {
        let body = and(guard(), psi[i].clone());
        let f = Formula::exists("x1", Formula::exists("x2", body));
        if i + 1 < l {
            psi.push(interpret_crossed(&f.rename_bound(&reserved), "x1", "x2")?);
        }
        phi.push(f);
    }
    let chi = and(guard(), psi[l - 1].clone());
    Ok(ChiFamily { psi, phi, chi })
}

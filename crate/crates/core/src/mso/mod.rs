//! Monadic second-order logic over the two-sorted graph structure.
//!
//! The universe of a graph is `U = V ∪ E`. Individual variables range over
//! `U`, set variables over subsets of `U`. Besides the atoms `V x`, `E x`,
//! `I x y` and `X x`, the syntax has `x = y` and the constants `true` and
//! `false`.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! formula := disj ('->' formula)?
//! disj    := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '~' unary | quant | '(' formula ')' | atom
//! quant   := ('ex' | 'all') var '.' formula
//! atom    := 'true' | 'false' | 'V' x | 'E' x | 'I' x y | X x | x '=' y | x '!=' y
//! ```
//!
//! Individual variables start with a lowercase letter, set variables with an
//! uppercase letter (`V`, `E` and `I` are reserved). `EX`/`ALL`, `exists`/
//! `forall` and the symbols `¬ ∧ ∨ → ∃ ∀` are accepted as synonyms. A
//! quantifier's scope extends as far right as possible.

mod eval;
mod interpret;
mod syntax;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use eval::{eval, eval_witness, Assignment, Elem, EvalOptions, Universe};
pub use interpret::{build_chi, interpret_crossed, ChiFamily};
pub use syntax::{parse, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MsoError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("free variable {0} has no value")]
    Unbound(String),
    #[error("variable {0} is assigned a value of the wrong sort")]
    Sort(String),
    #[error("{0} is not an element of the graph")]
    UnknownElement(String),
    #[error("universe has {size} elements; set quantification is limited to {max}")]
    UniverseTooLarge { size: usize, max: usize },
    #[error("evaluation budget of {0} steps exhausted")]
    Budget(u64),
    #[error("variable {0} would be captured")]
    Capture(String),
    #[error("formula must be a sentence, but {0} is free")]
    NotSentence(String),
    #[error("level must be at least 1")]
    Level,
    #[error("{0} is not a free individual variable of the formula")]
    NotFree(String),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "sort", content = "name", rename_all = "snake_case")]
pub enum Var {
    Ind(String),
    Set(String),
}

impl Var {
    pub fn name(&self) -> &str {
        match self {
            Var::Ind(s) | Var::Set(s) => s,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Vertex(String),
    Edge(String),
    /// `I x y`: `x` is a vertex, `y` an edge, and `x` is an endpoint of `y`.
    Inc(String, String),
    /// `X x`.
    Mem(String, String),
    Eq(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn vertex(x: &str) -> Self {
        Formula::Vertex(x.into())
    }

    pub fn edge(x: &str) -> Self {
        Formula::Edge(x.into())
    }

    pub fn inc(x: &str, y: &str) -> Self {
        Formula::Inc(x.into(), y.into())
    }

    pub fn mem(set: &str, x: &str) -> Self {
        Formula::Mem(set.into(), x.into())
    }

    pub fn eq(x: &str, y: &str) -> Self {
        Formula::Eq(x.into(), y.into())
    }

    pub fn neq(x: &str, y: &str) -> Self {
        Formula::eq(x, y).not()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn all_of(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn any_of(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn exists(x: &str, body: Formula) -> Self {
        Formula::Exists(Var::Ind(x.into()), Box::new(body))
    }

    pub fn forall(x: &str, body: Formula) -> Self {
        Formula::Forall(Var::Ind(x.into()), Box::new(body))
    }

    pub fn exists_set(x: &str, body: Formula) -> Self {
        Formula::Exists(Var::Set(x.into()), Box::new(body))
    }

    pub fn forall_set(x: &str, body: Formula) -> Self {
        Formula::Forall(Var::Set(x.into()), Box::new(body))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    /// Number of quantifiers over set variables.
    pub fn set_quantifiers(&self) -> usize {
        match self {
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                usize::from(matches!(v, Var::Set(_))) + a.set_quantifiers()
            }
            Formula::Not(a) => a.set_quantifiers(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.set_quantifiers() + b.set_quantifiers()
            }
            _ => 0,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let ind = |x: &String, out: &mut BTreeSet<Var>| {
            let v = Var::Ind(x.clone());
            if !bound.contains(&v) {
                out.insert(v);
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Vertex(x) | Formula::Edge(x) => ind(x, out),
            Formula::Inc(x, y) | Formula::Eq(x, y) => {
                ind(x, out);
                ind(y, out);
            }
            Formula::Mem(s, x) => {
                ind(x, out);
                let v = Var::Set(s.clone());
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                bound.push(v.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, free or bound.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Vertex(x) | Formula::Edge(x) => {
                out.insert(x.clone());
            }
            Formula::Inc(x, y) | Formula::Eq(x, y) | Formula::Mem(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            Formula::Not(a) => a.collect_names(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                out.insert(v.name().to_string());
                a.collect_names(out);
            }
        }
    }

    /// Renames bound variables whose names are in `avoid` to fresh names.
    pub fn rename_bound(&self, avoid: &BTreeSet<String>) -> Formula {
        let mut taken = self.names();
        taken.extend(avoid.iter().cloned());
        self.rename_inner(avoid, &mut taken, &mut Vec::new())
    }

    fn rename_inner(
        &self,
        avoid: &BTreeSet<String>,
        taken: &mut BTreeSet<String>,
        map: &mut Vec<(String, String)>,
    ) -> Formula {
        let r = |x: &String, map: &Vec<(String, String)>| -> String {
            map.iter()
                .rev()
                .find(|(from, _)| from == x)
                .map(|(_, to)| to.clone())
                .unwrap_or_else(|| x.clone())
        };
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Vertex(x) => Formula::Vertex(r(x, map)),
            Formula::Edge(x) => Formula::Edge(r(x, map)),
            Formula::Inc(x, y) => Formula::Inc(r(x, map), r(y, map)),
            Formula::Eq(x, y) => Formula::Eq(r(x, map), r(y, map)),
            Formula::Mem(s, x) => Formula::Mem(r(s, map), r(x, map)),
            Formula::Not(a) => a.rename_inner(avoid, taken, map).not(),
            Formula::And(a, b) => a.rename_inner(avoid, taken, map).and(b.rename_inner(avoid, taken, map)),
            Formula::Or(a, b) => a.rename_inner(avoid, taken, map).or(b.rename_inner(avoid, taken, map)),
            Formula::Implies(a, b) => a
                .rename_inner(avoid, taken, map)
                .implies(b.rename_inner(avoid, taken, map)),
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                let name = v.name().to_string();
                let renamed = avoid.contains(&name);
                let new_var = if renamed {
                    let fresh = fresh_name(&name, taken);
                    map.push((name, fresh.clone()));
                    match v {
                        Var::Ind(_) => Var::Ind(fresh),
                        Var::Set(_) => Var::Set(fresh),
                    }
                } else {
                    // Shadowing: an inner binder of the same name hides any renaming.
                    map.push((name.clone(), name));
                    v.clone()
                };
                let body = a.rename_inner(avoid, taken, map);
                map.pop();
                match self {
                    Formula::Exists(..) => Formula::Exists(new_var, Box::new(body)),
                    _ => Formula::Forall(new_var, Box::new(body)),
                }
            }
        }
    }
}

/// A name derived from `base` that is not in `taken`; it is added to `taken`.
pub(crate) fn fresh_name(base: &str, taken: &mut BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '_');
    let stem = if stem.is_empty() { base } else { stem };
    (1..)
        .map(|i| format!("{stem}_{i}"))
        .find(|n| !taken.contains(n))
        .map(|n| {
            taken.insert(n.clone());
            n
        })
        .expect("unbounded supply")
}

/// The 2-colorability sentence.
pub fn two_colorable() -> Formula {
    parse(
        "EX X. EX Y. (all x. (V x -> X x | Y x)) & \
         (all x. all y. (x != y & ex z. (E z & I x z & I y z)) -> ~((X x & X y) | (Y x & Y y)))",
    )
    .expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables_respect_binders() {
        let f = parse("ex x. (X x & I x y) | V x").unwrap();
        let free = f.free_vars();
        assert!(free.contains(&Var::Ind("y".into())));
        assert!(free.contains(&Var::Set("X".into())));
        assert!(!free.contains(&Var::Ind("x".into())));
        assert!(two_colorable().is_sentence());
        assert_eq!(two_colorable().set_quantifiers(), 2);
    }

    #[test]
    fn renaming_keeps_free_occurrences() {
        let f = parse("I x1 y & ex x1. (E x1 & all x1. V x1)").unwrap();
        let avoid = BTreeSet::from(["x1".to_string()]);
        let g = f.rename_bound(&avoid);
        assert_eq!(g.free_vars(), f.free_vars());
        assert_eq!(g.to_string(), "(I x1 y & (ex x_1. (E x_1 & (all x_2. V x_2))))");
    }
}

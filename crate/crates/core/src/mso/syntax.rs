use std::fmt;

use thiserror::Error;

use super::{Formula, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Dot,
    Not,
    And,
    Or,
    Arrow,
    Eq,
    Neq,
    Exists,
    Forall,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c == '#' {
            while it.peek().is_some_and(|&(_, c)| c != '\n') {
                it.next();
            }
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_alphanumeric() || c == '_' || c == '\'' {
                    s.push(c);
                    it.next();
                } else {
                    break;
                }
            }
            let tok = match s.as_str() {
                "ex" | "EX" | "exists" => Tok::Exists,
                "all" | "ALL" | "forall" => Tok::Forall,
                _ => Tok::Ident(s),
            };
            out.push((pos, tok));
            continue;
        }
        it.next();
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => Tok::Dot,
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Arrow,
            '=' => Tok::Eq,
            '≠' => Tok::Neq,
            '∃' => Tok::Exists,
            '∀' => Tok::Forall,
            '-' if it.peek().map(|&(_, c)| c) == Some('>') => {
                it.next();
                Tok::Arrow
            }
            '!' if it.peek().map(|&(_, c)| c) == Some('=') => {
                it.next();
                Tok::Neq
            }
            '!' => Tok::Not,
            _ => {
                return Err(ParseError {
                    pos,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

fn is_set_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_uppercase()) && !matches!(s, "V" | "E" | "I")
}

fn is_ind_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_lowercase() || c == '_') && !matches!(s, "true" | "false")
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn ind(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if is_ind_name(s) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.fail("expected an individual variable"),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        if self.eat(&Tok::Arrow) {
            Ok(lhs.implies(self.formula()?))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conj()?;
        while self.eat(&Tok::Or) {
            f = f.or(self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            f = f.and(self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.at += 1;
                Ok(self.unary()?.not())
            }
            Some(Tok::Exists) | Some(Tok::Forall) => {
                let ex = self.peek() == Some(&Tok::Exists);
                self.at += 1;
                let var = match self.peek() {
                    Some(Tok::Ident(s)) if is_set_name(s) => Var::Set(s.clone()),
                    Some(Tok::Ident(s)) if is_ind_name(s) => Var::Ind(s.clone()),
                    _ => return self.fail("expected a variable after quantifier"),
                };
                self.at += 1;
                self.expect(&Tok::Dot, "'.' after quantified variable")?;
                let body = Box::new(self.formula()?);
                Ok(if ex {
                    Formula::Exists(var, body)
                } else {
                    Formula::Forall(var, body)
                })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let f = self.formula()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::Ident(_)) => self.atom(),
            Some(_) => self.fail("expected a formula"),
            None => self.fail("unexpected end of input"),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let Some(Tok::Ident(s)) = self.peek().cloned() else {
            return self.fail("expected an atom");
        };
        self.at += 1;
        match s.as_str() {
            "true" => Ok(Formula::True),
            "false" => Ok(Formula::False),
            "V" => Ok(Formula::Vertex(self.ind()?)),
            "E" => Ok(Formula::Edge(self.ind()?)),
            "I" => {
                let x = self.ind()?;
                Ok(Formula::Inc(x, self.ind()?))
            }
            _ if is_set_name(&s) => Ok(Formula::Mem(s, self.ind()?)),
            _ => {
                if self.eat(&Tok::Eq) {
                    Ok(Formula::Eq(s, self.ind()?))
                } else if self.eat(&Tok::Neq) {
                    Ok(Formula::Eq(s, self.ind()?).not())
                } else {
                    self.fail("expected '=' or '!=' after individual variable")
                }
            }
        }
    }
}

/// Parses a formula in the concrete syntax described in the module docs.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    if p.at != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(f)
}

/// Operands of connectives: quantifiers need parentheses so their scope
/// does not swallow what follows.
struct Operand<'a>(&'a Formula);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Formula::Exists(..) | Formula::Forall(..) => write!(f, "({})", self.0),
            other => write!(f, "{other}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Vertex(x) => write!(f, "V {x}"),
            Formula::Edge(x) => write!(f, "E {x}"),
            Formula::Inc(x, y) => write!(f, "I {x} {y}"),
            Formula::Mem(s, x) => write!(f, "{s} {x}"),
            Formula::Eq(x, y) => write!(f, "{x} = {y}"),
            Formula::Not(a) => match &**a {
                Formula::Eq(x, y) => write!(f, "{x} != {y}"),
                _ => write!(f, "~{}", Operand(a)),
            },
            Formula::And(a, b) => write!(f, "({} & {})", Operand(a), Operand(b)),
            Formula::Or(a, b) => write!(f, "({} | {})", Operand(a), Operand(b)),
            Formula::Implies(a, b) => write!(f, "({} -> {})", Operand(a), Operand(b)),
            Formula::Exists(v, a) => write!(f, "ex {v}. {a}"),
            Formula::Forall(v, a) => write!(f, "all {v}. {a}"),
        }
    }
}

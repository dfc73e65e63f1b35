//! S-expression syntax.
//!
//! Terms: `(Z k)`, `(S)`, `(P i k)`, `(tuple t1 … tr)`, `(comp g f)`,
//! `(primrec base step)`. The empty tuple `ℕ^k → 1` is written `(tuple k)`.
//! On input `(code N)` decodes `N`, and `(name)` looks up a library term.
//! The printer emits single spaces and no trailing whitespace; reading and
//! printing are iterative, so arbitrarily deep terms are supported.

use std::fmt;

use crate::arith::coding;
use crate::error::Error;
use crate::skolem::library::library;
use crate::skolem::{Kind, Nat, Term};

/// A parsed s-expression with the byte offset of each node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    pub fn offset(&self) -> usize {
        match self {
            Sexp::Atom(_, o) | Sexp::List(_, o) => *o,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            Sexp::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Atom(..) => None,
        }
    }

    /// The head symbol of a nonempty list.
    pub fn head(&self) -> Option<&str> {
        self.as_list()?.first()?.as_atom()
    }
}

// Printed terms nest as deep as the term; the default drop would recurse.
impl Drop for Sexp {
    fn drop(&mut self) {
        let Sexp::List(items, _) = self else { return };
        let mut pending = std::mem::take(items);
        while let Some(mut node) = pending.pop() {
            if let Sexp::List(inner, _) = &mut node {
                pending.append(inner);
            }
        }
    }
}

fn perr(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

/// Parse exactly one s-expression (surrounding whitespace allowed).
pub fn parse_sexp(text: &str) -> Result<Sexp, Error> {
    let bytes = text.as_bytes();
    let mut stack: Vec<(Vec<Sexp>, usize)> = Vec::new();
    let mut result: Option<Sexp> = None;
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        if ch.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if result.is_some() {
            return Err(perr(i, "trailing input after expression"));
        }
        match ch {
            b'(' => {
                stack.push((Vec::new(), i));
                i += 1;
            }
            b')' => {
                let (items, start) = stack.pop().ok_or_else(|| perr(i, "unbalanced `)`"))?;
                let node = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => result = Some(node),
                }
                i += 1;
            }
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'('
                    && bytes[i] != b')'
                {
                    i += 1;
                }
                let atom = Sexp::Atom(text[start..i].to_string(), start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(atom),
                    None => result = Some(atom),
                }
            }
        }
    }
    if let Some((_, start)) = stack.last() {
        return Err(perr(*start, "unclosed `(`"));
    }
    result.ok_or_else(|| perr(text.len(), "empty input"))
}

pub(crate) fn atom_usize(s: &Sexp) -> Result<usize, Error> {
    s.as_atom()
        .and_then(|a| a.parse::<usize>().ok())
        .ok_or_else(|| perr(s.offset(), "expected a natural number"))
}

pub(crate) fn atom_nat(s: &Sexp) -> Result<Nat, Error> {
    s.as_atom()
        .and_then(|a| a.parse::<Nat>().ok())
        .ok_or_else(|| perr(s.offset(), "expected a natural number"))
}

fn arity_err(s: &Sexp, head: &str, want: &str) -> Error {
    perr(s.offset(), format!("`{head}` expects {want}"))
}

/// Convert an s-expression into a term.
pub fn term_from_sexp(root: &Sexp) -> Result<Term, Error> {
    enum Task<'a> {
        Visit(&'a Sexp),
        Build(&'a Sexp),
    }
    let mut tasks = vec![Task::Visit(root)];
    let mut out: Vec<Term> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Visit(s) => {
                let items = s.as_list().ok_or_else(|| perr(s.offset(), "expected `(`"))?;
                let head = s.head().ok_or_else(|| perr(s.offset(), "expected a term former"))?;
                let args = &items[1..];
                match head {
                    "Z" | "S" | "P" | "code" => tasks.push(Task::Build(s)),
                    "tuple" if args.len() == 1 && args[0].as_atom().is_some() => {
                        tasks.push(Task::Build(s))
                    }
                    "tuple" | "comp" | "primrec" => {
                        if head != "tuple" && args.len() != 2 {
                            return Err(arity_err(s, head, "two subterms"));
                        }
                        tasks.push(Task::Build(s));
                        for a in args.iter().rev() {
                            tasks.push(Task::Visit(a));
                        }
                    }
                    _ => tasks.push(Task::Build(s)),
                }
            }
            Task::Build(s) => {
                let items = s.as_list().expect("visited lists only");
                let head = s.head().expect("visited heads only");
                let args = &items[1..];
                let at = |e: Error| match e {
                    Error::Parse { .. } => e,
                    other => perr(s.offset(), other.to_string()),
                };
                let t = match head {
                    "Z" => {
                        if args.len() != 1 {
                            return Err(arity_err(s, head, "one arity"));
                        }
                        Term::zero(atom_usize(&args[0])?)
                    }
                    "S" => {
                        if !args.is_empty() {
                            return Err(arity_err(s, head, "no arguments"));
                        }
                        Term::succ()
                    }
                    "P" => {
                        if args.len() != 2 {
                            return Err(arity_err(s, head, "an index and an arity"));
                        }
                        Term::proj(atom_usize(&args[0])?, atom_usize(&args[1])?).map_err(at)?
                    }
                    "code" => {
                        if args.len() != 1 {
                            return Err(arity_err(s, head, "one natural"));
                        }
                        coding::decode(&atom_nat(&args[0])?)
                    }
                    "tuple" if args.len() == 1 && args[0].as_atom().is_some() => {
                        Term::tuple(atom_usize(&args[0])?, Vec::new()).map_err(at)?
                    }
                    "tuple" => {
                        let parts = out.split_off(out.len() - args.len());
                        if parts.is_empty() {
                            Term::tuple(0, parts).map_err(at)?
                        } else {
                            Term::tuple_of(parts).map_err(at)?
                        }
                    }
                    "comp" => {
                        let f = out.pop().expect("inner built");
                        let g = out.pop().expect("outer built");
                        Term::comp(g, f).map_err(at)?
                    }
                    "primrec" => {
                        let st = out.pop().expect("step built");
                        let b = out.pop().expect("base built");
                        Term::primrec(b, st).map_err(at)?
                    }
                    name => {
                        if !args.is_empty() {
                            return Err(perr(s.offset(), format!("library term `{name}` takes no arguments")));
                        }
                        library().lookup(name).map_err(at)?
                    }
                };
                out.push(t);
            }
        }
    }
    Ok(out.pop().expect("root built"))
}

/// Parse a term from its s-expression text.
pub fn parse_term(text: &str) -> Result<Term, Error> {
    term_from_sexp(&parse_sexp(text)?)
}

/// Canonical printed form of a term.
pub fn print_term(t: &Term) -> String {
    enum Tok<'a> {
        Open(&'a Term),
        Close,
        Space,
    }
    let mut out = String::new();
    let mut stack = vec![Tok::Open(t)];
    while let Some(tok) = stack.pop() {
        match tok {
            Tok::Close => out.push(')'),
            Tok::Space => out.push(' '),
            Tok::Open(t) => match t.kind() {
                Kind::Zero(k) => out.push_str(&format!("(Z {k})")),
                Kind::Succ => out.push_str("(S)"),
                Kind::Proj { index, arity } => out.push_str(&format!("(P {index} {arity})")),
                Kind::Tuple { source, parts } if parts.is_empty() => {
                    out.push_str(&format!("(tuple {source})"))
                }
                kind => {
                    let (head, children): (&str, Vec<&Term>) = match kind {
                        Kind::Tuple { parts, .. } => ("tuple", parts.iter().collect()),
                        Kind::Comp { outer, inner } => ("comp", vec![outer, inner]),
                        Kind::PrimRec { base, step } => ("primrec", vec![base, step]),
                        _ => unreachable!("leaves handled above"),
                    };
                    out.push('(');
                    out.push_str(head);
                    stack.push(Tok::Close);
                    for ch in children.into_iter().rev() {
                        stack.push(Tok::Open(ch));
                        stack.push(Tok::Space);
                    }
                }
            },
        }
    }
    out
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

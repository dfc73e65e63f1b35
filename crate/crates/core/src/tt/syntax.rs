//! Types, terms, contexts and judgments, with capture-avoiding
//! substitution and α-equivalence.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A type expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Unit,
    Nat,
    Prod(Box<Type>, Box<Type>),
    Sum(Box<Type>, Box<Type>),
    Id(Box<Type>, Box<Expr>, Box<Expr>),
    /// A closed type declared by a theory.
    Named(String),
}

/// A term expression. Identifiers that are not bound by the context or a
/// binder refer to theory constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Star,
    Zero,
    Succ(Box<Expr>),
    /// `natrec(base, var.step, target)`: `step` sees only the previous value.
    NatRec { base: Box<Expr>, var: String, step: Box<Expr>, target: Box<Expr> },
    Pair(Box<Expr>, Box<Expr>),
    Fst(Box<Expr>),
    Snd(Box<Expr>),
    Inl(Box<Expr>),
    Inr(Box<Expr>),
    Case { scrut: Box<Expr>, left_var: String, left: Box<Expr>, right_var: String, right: Box<Expr> },
    Refl(Box<Expr>),
    /// Application of a declared function constant `f : A -> B`.
    App(String, Box<Expr>),
}

impl Type {
    pub fn prod(a: Type, b: Type) -> Type {
        Type::Prod(Box::new(a), Box::new(b))
    }

    pub fn sum(a: Type, b: Type) -> Type {
        Type::Sum(Box::new(a), Box::new(b))
    }

    pub fn id(a: Type, x: Expr, y: Expr) -> Type {
        Type::Id(Box::new(a), Box::new(x), Box::new(y))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Unit | Type::Nat | Type::Named(_) => {}
            Type::Prod(a, b) | Type::Sum(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Type::Id(a, x, y) => {
                a.collect_free(out);
                out.extend(x.free_vars());
                out.extend(y.free_vars());
            }
        }
    }

    /// Named types occurring in the type.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Type::Unit | Type::Nat => {}
                Type::Named(n) => {
                    out.insert(n.clone());
                }
                Type::Prod(a, b) | Type::Sum(a, b) => stack.extend([&**a, &**b]),
                Type::Id(a, _, _) => stack.push(a),
            }
        }
        out
    }

    pub fn subst(&self, map: &HashMap<String, Expr>) -> Type {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Type::Unit | Type::Nat | Type::Named(_) => self.clone(),
            Type::Prod(a, b) => Type::prod(a.subst(map), b.subst(map)),
            Type::Sum(a, b) => Type::sum(a.subst(map), b.subst(map)),
            Type::Id(a, x, y) => Type::id(a.subst(map), x.subst(map), y.subst(map)),
        }
    }
}

/// A fresh variant of `base` (by priming) avoiding `avoid`.
pub fn fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

impl Expr {
    pub fn var(x: &str) -> Expr {
        Expr::Var(x.to_string())
    }

    pub fn succ(e: Expr) -> Expr {
        Expr::Succ(Box::new(e))
    }

    pub fn pair(a: Expr, b: Expr) -> Expr {
        Expr::Pair(Box::new(a), Box::new(b))
    }

    pub fn natrec(base: Expr, var: &str, step: Expr, target: Expr) -> Expr {
        Expr::NatRec { base: Box::new(base), var: var.to_string(), step: Box::new(step), target: Box::new(target) }
    }

    /// `succ^n 0`.
    pub fn numeral(n: u64) -> Expr {
        let mut e = Expr::Zero;
        for _ in 0..n {
            e = Expr::succ(e);
        }
        e
    }

    /// The value of a closed numeral `succ^n 0`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut e = self;
        loop {
            match e {
                Expr::Zero => return Some(n),
                Expr::Succ(inner) => {
                    n += 1;
                    e = inner;
                }
                _ => return None,
            }
        }
    }

    /// Whether the expression contains a binder.
    pub fn has_binder(&self) -> bool {
        match self {
            Expr::NatRec { .. } | Expr::Case { .. } => true,
            Expr::Var(_) | Expr::Star | Expr::Zero => false,
            Expr::Succ(a) | Expr::Fst(a) | Expr::Snd(a) | Expr::Inl(a) | Expr::Inr(a) | Expr::Refl(a) | Expr::App(_, a) => {
                a.has_binder()
            }
            Expr::Pair(a, b) => a.has_binder() || b.has_binder(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Expr::Star | Expr::Zero => {}
            Expr::Succ(a) | Expr::Fst(a) | Expr::Snd(a) | Expr::Inl(a) | Expr::Inr(a) | Expr::Refl(a) | Expr::App(_, a) => {
                a.collect_free(bound, out)
            }
            Expr::Pair(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Expr::NatRec { base, var, step, target } => {
                base.collect_free(bound, out);
                target.collect_free(bound, out);
                bound.push(var.clone());
                step.collect_free(bound, out);
                bound.pop();
            }
            Expr::Case { scrut, left_var, left, right_var, right } => {
                scrut.collect_free(bound, out);
                bound.push(left_var.clone());
                left.collect_free(bound, out);
                bound.pop();
                bound.push(right_var.clone());
                right.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// `self[v/x]`.
    pub fn subst1(&self, x: &str, v: &Expr) -> Expr {
        self.subst(&HashMap::from([(x.to_string(), v.clone())]))
    }

    /// Simultaneous capture-avoiding substitution.
    pub fn subst(&self, map: &HashMap<String, Expr>) -> Expr {
        if map.is_empty() {
            return self.clone();
        }
        let mut incoming = BTreeSet::new();
        for v in map.values() {
            incoming.extend(v.free_vars());
        }
        self.subst_with(map, &incoming)
    }

    fn subst_with(&self, map: &HashMap<String, Expr>, incoming: &BTreeSet<String>) -> Expr {
        let go = |e: &Expr| Box::new(e.subst_with(map, incoming));
        match self {
            Expr::Var(x) => map.get(x).cloned().unwrap_or_else(|| self.clone()),
            Expr::Star | Expr::Zero => self.clone(),
            Expr::Succ(a) => Expr::Succ(go(a)),
            Expr::Fst(a) => Expr::Fst(go(a)),
            Expr::Snd(a) => Expr::Snd(go(a)),
            Expr::Inl(a) => Expr::Inl(go(a)),
            Expr::Inr(a) => Expr::Inr(go(a)),
            Expr::Refl(a) => Expr::Refl(go(a)),
            Expr::App(f, a) => Expr::App(f.clone(), go(a)),
            Expr::Pair(a, b) => Expr::Pair(go(a), go(b)),
            Expr::NatRec { base, var, step, target } => {
                let (var, step) = under_binder(var, step, map, incoming);
                Expr::NatRec { base: go(base), var, step: Box::new(step), target: go(target) }
            }
            Expr::Case { scrut, left_var, left, right_var, right } => {
                let (left_var, left) = under_binder(left_var, left, map, incoming);
                let (right_var, right) = under_binder(right_var, right, map, incoming);
                Expr::Case { scrut: go(scrut), left_var, left: Box::new(left), right_var, right: Box::new(right) }
            }
        }
    }

    /// Rename the binder `var` of `body` to `to`.
    pub fn rename_bound(var: &str, body: &Expr, to: &str) -> Expr {
        if var == to {
            body.clone()
        } else {
            body.subst1(var, &Expr::var(to))
        }
    }
}

fn under_binder(
    var: &str,
    body: &Expr,
    map: &HashMap<String, Expr>,
    incoming: &BTreeSet<String>,
) -> (String, Expr) {
    let mut inner: HashMap<String, Expr> = map.clone();
    inner.remove(var);
    if inner.is_empty() {
        return (var.to_string(), body.clone());
    }
    if incoming.contains(var) {
        let mut avoid = incoming.clone();
        avoid.extend(body.free_vars());
        avoid.extend(inner.keys().cloned());
        let renamed = fresh(var, &avoid);
        inner.insert(var.to_string(), Expr::Var(renamed.clone()));
        let mut inc = incoming.clone();
        inc.insert(renamed.clone());
        return (renamed, body.subst_with(&inner, &inc));
    }
    (var.to_string(), body.subst_with(&inner, incoming))
}

/// α-equivalence of terms.
pub fn alpha_eq(a: &Expr, b: &Expr) -> bool {
    alpha(a, b, &mut Vec::new())
}

/// α-equivalence of types (their terms compared up to bound names).
pub fn alpha_eq_type(a: &Type, b: &Type) -> bool {
    match (a, b) {
        (Type::Unit, Type::Unit) | (Type::Nat, Type::Nat) => true,
        (Type::Named(x), Type::Named(y)) => x == y,
        (Type::Prod(a1, a2), Type::Prod(b1, b2)) | (Type::Sum(a1, a2), Type::Sum(b1, b2)) => {
            alpha_eq_type(a1, b1) && alpha_eq_type(a2, b2)
        }
        (Type::Id(t, x, y), Type::Id(u, z, w)) => alpha_eq_type(t, u) && alpha_eq(x, z) && alpha_eq(y, w),
        _ => false,
    }
}

fn alpha(a: &Expr, b: &Expr, env: &mut Vec<(String, String)>) -> bool {
    match (a, b) {
        (Expr::Var(x), Expr::Var(y)) => {
            let ix = env.iter().rposition(|(l, _)| l == x);
            let iy = env.iter().rposition(|(_, r)| r == y);
            match (ix, iy) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Expr::Star, Expr::Star) | (Expr::Zero, Expr::Zero) => true,
        (Expr::Succ(x), Expr::Succ(y))
        | (Expr::Fst(x), Expr::Fst(y))
        | (Expr::Snd(x), Expr::Snd(y))
        | (Expr::Inl(x), Expr::Inl(y))
        | (Expr::Inr(x), Expr::Inr(y))
        | (Expr::Refl(x), Expr::Refl(y)) => alpha(x, y, env),
        (Expr::App(f, x), Expr::App(g, y)) => f == g && alpha(x, y, env),
        (Expr::Pair(a1, a2), Expr::Pair(b1, b2)) => alpha(a1, b1, env) && alpha(a2, b2, env),
        (
            Expr::NatRec { base: b1, var: v1, step: s1, target: t1 },
            Expr::NatRec { base: b2, var: v2, step: s2, target: t2 },
        ) => alpha(b1, b2, env) && alpha(t1, t2, env) && binder(v1, s1, v2, s2, env),
        (
            Expr::Case { scrut: s1, left_var: x1, left: l1, right_var: y1, right: r1 },
            Expr::Case { scrut: s2, left_var: x2, left: l2, right_var: y2, right: r2 },
        ) => alpha(s1, s2, env) && binder(x1, l1, x2, l2, env) && binder(y1, r1, y2, r2, env),
        _ => false,
    }
}

fn binder(v1: &str, b1: &Expr, v2: &str, b2: &Expr, env: &mut Vec<(String, String)>) -> bool {
    env.push((v1.to_string(), v2.to_string()));
    let r = alpha(b1, b2, env);
    env.pop();
    r
}

/// An ordered list of typed variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context {
    pub entries: Vec<(String, Type)>,
}

impl Context {
    pub fn empty() -> Context {
        Context::default()
    }

    pub fn new(entries: Vec<(String, Type)>) -> Context {
        Context { entries }
    }

    pub fn lookup(&self, x: &str) -> Option<&Type> {
        self.entries.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.entries.iter().any(|(y, _)| y == x)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.entries.iter().map(|(x, _)| x.clone()).collect()
    }

    pub fn extended(&self, x: &str, t: Type) -> Context {
        let mut entries = self.entries.clone();
        entries.push((x.to_string(), t));
        Context { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same names, α-equivalent types.
    pub fn alpha_eq(&self, other: &Context) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|((x, s), (y, t))| x == y && alpha_eq_type(s, t))
    }
}

/// The judgment forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Judgment {
    /// `Γ ctx`
    Ctx(Context),
    /// `Γ ⊢ A type`
    Type(Context, Type),
    /// `Γ ⊢ A = B type`
    TypeEq(Context, Type, Type),
    /// `Γ ⊢ a : A`
    Term(Context, Expr, Type),
    /// `Γ ⊢ a = b : A`
    TermEq(Context, Expr, Expr, Type),
}

impl Judgment {
    pub fn context(&self) -> &Context {
        match self {
            Judgment::Ctx(g)
            | Judgment::Type(g, _)
            | Judgment::TypeEq(g, _, _)
            | Judgment::Term(g, _, _)
            | Judgment::TermEq(g, _, _, _) => g,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        match self {
            Expr::Var(x) => f.write_str(x),
            Expr::Star => f.write_str("*"),
            Expr::Zero => f.write_str("0"),
            Expr::Succ(a) => write!(f, "succ {a}"),
            Expr::Fst(a) => write!(f, "fst {a}"),
            Expr::Snd(a) => write!(f, "snd {a}"),
            Expr::Inl(a) => write!(f, "inl {a}"),
            Expr::Inr(a) => write!(f, "inr {a}"),
            Expr::Refl(a) => write!(f, "refl {a}"),
            Expr::App(g, a) => write!(f, "{g}({a})"),
            Expr::Pair(a, b) => write!(f, "<{a}, {b}>"),
            Expr::NatRec { base, var, step, target } => write!(f, "natrec({base}, {var}. {step}, {target})"),
            Expr::Case { scrut, left_var, left, right_var, right } => {
                write!(f, "case({scrut}, {left_var}. {left}, {right_var}. {right})")
            }
        }
    }
}

impl Type {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // 0: sum level, 1: product level, 2: atomic
        match self {
            Type::Unit => f.write_str("Unit"),
            Type::Nat => f.write_str("Nat"),
            Type::Named(n) => f.write_str(n),
            Type::Id(a, x, y) => write!(f, "Id({a}, {x}, {y})"),
            Type::Sum(a, b) => {
                if prec > 0 {
                    f.write_str("(")?;
                }
                a.fmt_prec(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_prec(f, 0)?;
                if prec > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Type::Prod(a, b) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                a.fmt_prec(f, 2)?;
                f.write_str(" * ")?;
                b.fmt_prec(f, 1)?;
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, t)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.context();
        if let Judgment::Ctx(_) = self {
            return if g.is_empty() { f.write_str("ctx") } else { write!(f, "{g} ctx") };
        }
        if !g.is_empty() {
            write!(f, "{g} ")?;
        }
        match self {
            Judgment::Ctx(_) => unreachable!("handled above"),
            Judgment::Type(_, a) => write!(f, "|- {a} type"),
            Judgment::TypeEq(_, a, b) => write!(f, "|- {a} = {b} type"),
            Judgment::Term(_, e, a) => write!(f, "|- {e} : {a}"),
            Judgment::TermEq(_, x, y, a) => write!(f, "|- {x} = {y} : {a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_avoids_capture() {
        // natrec(0, y. x, 0)[y/x] must not capture
        let e = Expr::natrec(Expr::Zero, "y", Expr::var("x"), Expr::Zero);
        let r = e.subst1("x", &Expr::var("y"));
        match &r {
            Expr::NatRec { var, step, .. } => {
                assert_ne!(var, "y");
                assert_eq!(**step, Expr::var("y"));
            }
            _ => panic!("shape"),
        }
        assert!(r.free_vars().contains("y"));
    }

    #[test]
    fn alpha_equivalence() {
        let a = Expr::natrec(Expr::Zero, "p", Expr::succ(Expr::var("p")), Expr::var("x"));
        let b = Expr::natrec(Expr::Zero, "q", Expr::succ(Expr::var("q")), Expr::var("x"));
        let c = Expr::natrec(Expr::Zero, "q", Expr::succ(Expr::var("x")), Expr::var("x"));
        assert!(alpha_eq(&a, &b));
        assert!(!alpha_eq(&a, &c));
    }

    #[test]
    fn numerals_print_compactly() {
        assert_eq!(Expr::numeral(3).to_string(), "3");
        assert_eq!(Expr::succ(Expr::var("x")).to_string(), "succ x");
        let t = Type::sum(Type::prod(Type::Nat, Type::sum(Type::Unit, Type::Nat)), Type::Nat);
        assert_eq!(t.to_string(), "Nat * (Unit + Nat) + Nat");
    }
}

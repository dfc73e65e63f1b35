//! Theories: closed types, constants and equations added to the base
//! calculus in order, each admitted only if its prerequisites are derivable
//! from what precedes it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::check::Checker;
use super::syntax::{Context, Expr, Judgment, Type};
use super::TtError;

/// One theory declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    /// `type A`: a new closed type.
    Type(String),
    /// `tyeq A = T`: a type equation, oriented as a definition of `A`.
    TyEq(String, Type),
    /// `const c : A`.
    Const(String, Type),
    /// `const f : A -> B`.
    Fun(String, Type, Type),
    /// `eq Γ |- l = r : A`, used as the rewrite `l ↦ r`.
    Eq(Context, Expr, Expr, Type),
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Type(a) => write!(f, "type {a}"),
            Decl::TyEq(a, t) => write!(f, "tyeq {a} = {t}"),
            Decl::Const(c, a) => write!(f, "const {c} : {a}"),
            Decl::Fun(c, a, b) => write!(f, "const {c} : {a} -> {b}"),
            Decl::Eq(g, l, r, a) => {
                f.write_str("eq ")?;
                if !g.is_empty() {
                    write!(f, "{g} ")?;
                }
                write!(f, "|- {l} = {r} : {a}")
            }
        }
    }
}

/// A left-to-right rewrite with pattern variables `vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub vars: Vec<String>,
    pub lhs: Expr,
    pub rhs: Expr,
}

/// A sealed theory. Extension returns a new value.
#[derive(Clone, Debug, Default)]
pub struct Theory {
    types: BTreeSet<String>,
    definitions: BTreeMap<String, Type>,
    consts: BTreeMap<String, Type>,
    funs: BTreeMap<String, (Type, Type)>,
    rewrites: Vec<Rewrite>,
    decls: Vec<Decl>,
}

fn inadmissible(d: &Decl, reason: impl Into<String>) -> TtError {
    TtError::InadmissibleDeclaration { decl: d.to_string(), reason: reason.into() }
}

impl Theory {
    /// The bare calculus.
    pub fn empty() -> Theory {
        Theory::default()
    }

    pub fn has_type(&self, name: &str) -> bool {
        self.types.contains(name)
    }

    pub fn definition(&self, name: &str) -> Option<&Type> {
        self.definitions.get(name)
    }

    pub fn constant(&self, name: &str) -> Option<&Type> {
        self.consts.get(name)
    }

    pub fn function(&self, name: &str) -> Option<&(Type, Type)> {
        self.funs.get(name)
    }

    pub fn rewrites(&self) -> &[Rewrite] {
        &self.rewrites
    }

    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    fn name_taken(&self, name: &str) -> bool {
        self.types.contains(name) || self.consts.contains_key(name) || self.funs.contains_key(name)
    }

    fn closed_type(&self, d: &Decl, t: &Type) -> Result<(), TtError> {
        Checker::new(self)
            .check(&Judgment::Type(Context::empty(), t.clone()))
            .map(|_| ())
            .map_err(|e| inadmissible(d, format!("`{t}` is not a closed type: {e}")))
    }

    /// The definitions reachable from `t`, failing if `target` is among them.
    fn mentions(&self, t: &Type, target: &str) -> bool {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<String> = t.names().into_iter().collect();
        while let Some(n) = stack.pop() {
            if n == target {
                return true;
            }
            if seen.insert(n.clone()) {
                if let Some(def) = self.definitions.get(&n) {
                    stack.extend(def.names());
                }
            }
        }
        false
    }

    /// Admit one declaration.
    pub fn extend(&self, d: Decl) -> Result<Theory, TtError> {
        let mut next = self.clone();
        match &d {
            Decl::Type(a) => {
                if self.name_taken(a) {
                    return Err(inadmissible(&d, format!("`{a}` is already declared")));
                }
                next.types.insert(a.clone());
            }
            Decl::TyEq(a, t) => {
                if !self.types.contains(a) {
                    return Err(inadmissible(&d, format!("type `{a}` is not declared")));
                }
                if self.definitions.contains_key(a) {
                    return Err(inadmissible(&d, format!("type `{a}` already has an equation")));
                }
                self.closed_type(&d, t)?;
                if self.mentions(t, a) {
                    return Err(inadmissible(&d, format!("equation for `{a}` is circular")));
                }
                next.definitions.insert(a.clone(), t.clone());
            }
            Decl::Const(c, t) => {
                if self.name_taken(c) {
                    return Err(inadmissible(&d, format!("`{c}` is already declared")));
                }
                self.closed_type(&d, t)?;
                next.consts.insert(c.clone(), t.clone());
            }
            Decl::Fun(f, a, b) => {
                if self.name_taken(f) {
                    return Err(inadmissible(&d, format!("`{f}` is already declared")));
                }
                self.closed_type(&d, a)?;
                self.closed_type(&d, b)?;
                next.funs.insert(f.clone(), (a.clone(), b.clone()));
            }
            Decl::Eq(g, l, r, t) => {
                let checker = Checker::new(self);
                for side in [l, r] {
                    checker
                        .check(&Judgment::Term(g.clone(), side.clone(), t.clone()))
                        .map_err(|e| inadmissible(&d, e.to_string()))?;
                }
                if matches!(l, Expr::Var(x) if g.contains(x)) {
                    return Err(inadmissible(&d, "the left-hand side is a bare variable"));
                }
                if l.has_binder() {
                    return Err(inadmissible(&d, "the left-hand side must not contain binders"));
                }
                let lv = l.free_vars();
                if let Some(x) = r.free_vars().into_iter().find(|x| g.contains(x) && !lv.contains(x)) {
                    return Err(inadmissible(&d, format!("`{x}` occurs only on the right-hand side")));
                }
                next.rewrites.push(Rewrite {
                    vars: g.entries.iter().map(|(x, _)| x.clone()).collect(),
                    lhs: l.clone(),
                    rhs: r.clone(),
                });
            }
        }
        next.decls.push(d);
        Ok(next)
    }

    /// Admit declarations in order.
    pub fn extend_all(&self, decls: impl IntoIterator<Item = Decl>) -> Result<Theory, TtError> {
        let mut t = self.clone();
        for d in decls {
            t = t.extend(d)?;
        }
        Ok(t)
    }
}

/// A theory built from the bare calculus by `decls`, in order.
pub fn theory_extend(decls: impl IntoIterator<Item = Decl>) -> Result<Theory, TtError> {
    Theory::empty().extend_all(decls)
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_decl;
    use super::*;

    fn decls(lines: &[&str]) -> Vec<Decl> {
        lines.iter().map(|l| parse_decl(l).unwrap()).collect()
    }

    #[test]
    fn order_is_enforced() {
        assert!(theory_extend(decls(&["type A", "const a : A"])).is_ok());
        let err = theory_extend(decls(&["const a : A", "type A"])).unwrap_err();
        assert!(matches!(err, TtError::InadmissibleDeclaration { .. }));
    }

    #[test]
    fn restrictions() {
        for bad in [
            vec!["type A", "type A"],
            vec!["type A", "tyeq A = A * Nat"],
            vec!["type A", "type B", "tyeq A = B", "tyeq B = A"],
            vec!["eq x:Nat |- x = 0 : Nat"],
            vec!["const f : Nat -> Nat", "eq x:Nat |- f(0) = x : Nat"],
            vec!["const f : Nat -> Nat", "eq x:Nat |- f(x) = * : Nat"],
        ] {
            assert!(
                matches!(theory_extend(decls(&bad)), Err(TtError::InadmissibleDeclaration { .. })),
                "{bad:?}"
            );
        }
    }
}

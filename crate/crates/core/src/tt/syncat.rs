//! The syntactic category of a theory: closed types as objects, terms in
//! one variable as morphisms, composition by substitution and equality by
//! judgmental equality.

use std::fmt;

use super::check::Checker;
use super::normalize::Normalizer;
use super::syntax::{Context, Expr, Judgment, Type};
use super::theory::Theory;
use super::TtError;

/// A morphism `x:A ⊢ t : B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynMorphism {
    pub dom: Type,
    pub cod: Type,
    pub var: String,
    pub body: Expr,
}

impl SynMorphism {
    pub fn judgment(&self) -> Judgment {
        Judgment::Term(Context::new(vec![(self.var.clone(), self.dom.clone())]), self.body.clone(), self.cod.clone())
    }
}

impl fmt::Display for SynMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.judgment())
    }
}

/// A view of a theory as a category.
pub struct SynCategory<'t> {
    checker: Checker<'t>,
}

impl<'t> SynCategory<'t> {
    pub fn new(theory: &'t Theory) -> SynCategory<'t> {
        SynCategory { checker: Checker::new(theory) }
    }

    pub fn is_object(&self, a: &Type) -> bool {
        self.checker.check(&Judgment::Type(Context::empty(), a.clone())).is_ok()
    }

    /// A checked morphism `var:dom ⊢ body : cod`.
    pub fn morphism(&self, dom: Type, cod: Type, var: &str, body: Expr) -> Result<SynMorphism, TtError> {
        let m = SynMorphism { dom, cod, var: var.to_string(), body };
        self.checker.check(&m.judgment())?;
        Ok(m)
    }

    /// `x:A ⊢ x : A`.
    pub fn identity(&self, a: &Type) -> SynMorphism {
        SynMorphism { dom: a.clone(), cod: a.clone(), var: "x".into(), body: Expr::var("x") }
    }

    /// `g ∘ f`, substituting `f`'s body for `g`'s variable.
    pub fn compose(&self, g: &SynMorphism, f: &SynMorphism) -> Result<SynMorphism, TtError> {
        if !Normalizer::new(self.checker.theory(), super::normalize::DEFAULT_BUDGET).types_convertible(&f.cod, &g.dom)? {
            return Err(TtError::IllTyped {
                subgoal: format!("|- {} = {} type", f.cod, g.dom),
                reason: "the morphisms are not composable".into(),
            });
        }
        Ok(SynMorphism { dom: f.dom.clone(), cod: g.cod.clone(), var: f.var.clone(), body: g.body.subst1(&g.var, &f.body) })
    }

    /// Equality of parallel morphisms up to judgmental equality.
    pub fn equal(&self, f: &SynMorphism, g: &SynMorphism) -> Result<bool, TtError> {
        let ctx = Context::new(vec![(f.var.clone(), f.dom.clone())]);
        let gb = g.body.subst1(&g.var, &Expr::var(&f.var));
        self.checker.check_eq(&ctx, &f.body, &gb, &f.cod)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_term;
    use super::*;

    #[test]
    fn category_structure() {
        let th = Theory::empty();
        let cat = SynCategory::new(&th);
        let s = cat.morphism(Type::Nat, Type::Nat, "x", parse_term("succ x").unwrap()).unwrap();
        let ss = cat.compose(&s, &s).unwrap();
        assert_eq!(ss.body, parse_term("succ succ x").unwrap());
        let id = cat.identity(&Type::Nat);
        assert!(cat.equal(&cat.compose(&id, &s).unwrap(), &s).unwrap());
        assert!(cat.equal(&cat.compose(&s, &id).unwrap(), &s).unwrap());
        let d = cat.morphism(Type::Nat, Type::Nat, "y", parse_term("natrec(0, p. succ succ p, y)").unwrap()).unwrap();
        let left = cat.compose(&cat.compose(&d, &s).unwrap(), &s).unwrap();
        let right = cat.compose(&d, &cat.compose(&s, &s).unwrap()).unwrap();
        assert!(cat.equal(&left, &right).unwrap());
        assert!(!cat.equal(&s, &id).unwrap());
    }
}

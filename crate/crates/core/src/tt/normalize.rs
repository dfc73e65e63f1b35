//! Bounded normalization and the conversion check behind judgmental
//! equality.
//!
//! Reduction is innermost: children first, then the computation rules
//! (`fst ⟨a,b⟩ ↦ a`, `snd ⟨a,b⟩ ↦ b`, `case` on an injection, `natrec` on
//! `0` and `succ`), then the theory's equations as left-to-right rewrites in
//! declaration order. Every root step costs one unit of budget; running out
//! is reported as its own verdict. Conversion is type-directed: products
//! compare componentwise, and `Unit` and identity types have a single
//! element up to judgmental equality.

use std::collections::HashMap;

use super::syntax::{alpha_eq, Expr, Type};
use super::theory::Theory;
use super::TtError;

/// Default number of rewrite steps per conversion query.
pub const DEFAULT_BUDGET: u64 = 10_000;

enum Step {
    /// The result is already normal.
    Normal(Expr),
    /// The result still needs normalizing.
    Redex(Expr),
}

/// A normalizer with a step budget.
pub struct Normalizer<'t> {
    theory: &'t Theory,
    budget: u64,
    steps: u64,
}

impl<'t> Normalizer<'t> {
    pub fn new(theory: &'t Theory, budget: u64) -> Normalizer<'t> {
        Normalizer { theory, budget, steps: 0 }
    }

    /// Steps spent so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn tick(&mut self) -> Result<(), TtError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(TtError::RewriteBudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// The normal form of `e`.
    pub fn norm(&mut self, e: &Expr) -> Result<Expr, TtError> {
        let mut cur = self.norm_children(e)?;
        loop {
            match self.root_step(&cur)? {
                None => return Ok(cur),
                Some(Step::Normal(n)) => return Ok(n),
                Some(Step::Redex(r)) => cur = self.norm_children(&r)?,
            }
        }
    }

    fn norm_children(&mut self, e: &Expr) -> Result<Expr, TtError> {
        let mut n = |x: &Expr| -> Result<Box<Expr>, TtError> { Ok(Box::new(self.norm(x)?)) };
        Ok(match e {
            Expr::Var(_) | Expr::Star | Expr::Zero => e.clone(),
            Expr::Succ(a) => Expr::Succ(n(a)?),
            Expr::Fst(a) => Expr::Fst(n(a)?),
            Expr::Snd(a) => Expr::Snd(n(a)?),
            Expr::Inl(a) => Expr::Inl(n(a)?),
            Expr::Inr(a) => Expr::Inr(n(a)?),
            Expr::Refl(a) => Expr::Refl(n(a)?),
            Expr::App(f, a) => Expr::App(f.clone(), n(a)?),
            Expr::Pair(a, b) => Expr::Pair(n(a)?, n(b)?),
            Expr::NatRec { base, var, step, target } => {
                Expr::NatRec { base: n(base)?, var: var.clone(), step: n(step)?, target: n(target)? }
            }
            Expr::Case { scrut, left_var, left, right_var, right } => Expr::Case {
                scrut: n(scrut)?,
                left_var: left_var.clone(),
                left: n(left)?,
                right_var: right_var.clone(),
                right: n(right)?,
            },
        })
    }

    /// One step at the root of a term whose children are normal.
    fn root_step(&mut self, e: &Expr) -> Result<Option<Step>, TtError> {
        match e {
            Expr::Fst(p) => {
                if let Expr::Pair(a, _) = &**p {
                    self.tick()?;
                    return Ok(Some(Step::Normal((**a).clone())));
                }
            }
            Expr::Snd(p) => {
                if let Expr::Pair(_, b) = &**p {
                    self.tick()?;
                    return Ok(Some(Step::Normal((**b).clone())));
                }
            }
            Expr::Case { scrut, left_var, left, right_var, right } => match &**scrut {
                Expr::Inl(a) => {
                    self.tick()?;
                    return Ok(Some(Step::Redex(left.subst1(left_var, a))));
                }
                Expr::Inr(b) => {
                    self.tick()?;
                    return Ok(Some(Step::Redex(right.subst1(right_var, b))));
                }
                _ => {}
            },
            Expr::NatRec { base, var, step, target } => {
                // Iterate the step over the successors instead of recursing.
                let mut k = 0u64;
                let mut t = &**target;
                while let Expr::Succ(inner) = t {
                    k += 1;
                    t = inner;
                }
                let mut acc = match t {
                    Expr::Zero => {
                        self.tick()?;
                        (**base).clone()
                    }
                    _ if k == 0 => return self.rewrite(e),
                    _ => self.norm(&Expr::NatRec {
                        base: base.clone(),
                        var: var.clone(),
                        step: step.clone(),
                        target: Box::new(t.clone()),
                    })?,
                };
                for _ in 0..k {
                    self.tick()?;
                    acc = self.norm(&step.subst1(var, &acc))?;
                }
                return Ok(Some(Step::Normal(acc)));
            }
            _ => {}
        }
        self.rewrite(e)
    }

    fn rewrite(&mut self, e: &Expr) -> Result<Option<Step>, TtError> {
        for rw in self.theory.rewrites() {
            let mut sub = HashMap::new();
            if matches(&rw.lhs, e, &rw.vars, &mut sub) {
                self.tick()?;
                return Ok(Some(Step::Redex(rw.rhs.subst(&sub))));
            }
        }
        Ok(None)
    }

    /// Unfold type equations at the head.
    pub fn whnf_type(&self, t: &Type) -> Type {
        let mut cur = t.clone();
        while let Type::Named(n) = &cur {
            match self.theory.definition(n) {
                Some(def) => cur = def.clone(),
                None => break,
            }
        }
        cur
    }

    /// Type-directed judgmental equality of two terms of type `ty`.
    pub fn convertible(&mut self, a: &Expr, b: &Expr, ty: &Type) -> Result<bool, TtError> {
        match self.whnf_type(ty) {
            Type::Unit | Type::Id(..) => Ok(true),
            Type::Prod(x, y) => {
                let fa = Expr::Fst(Box::new(a.clone()));
                let fb = Expr::Fst(Box::new(b.clone()));
                if !self.convertible(&fa, &fb, &x)? {
                    return Ok(false);
                }
                let sa = Expr::Snd(Box::new(a.clone()));
                let sb = Expr::Snd(Box::new(b.clone()));
                self.convertible(&sa, &sb, &y)
            }
            _ => {
                let na = self.norm(a)?;
                let nb = self.norm(b)?;
                Ok(alpha_eq(&na, &nb))
            }
        }
    }

    /// Judgmental equality of two types.
    pub fn types_convertible(&mut self, s: &Type, t: &Type) -> Result<bool, TtError> {
        match (self.whnf_type(s), self.whnf_type(t)) {
            (Type::Unit, Type::Unit) | (Type::Nat, Type::Nat) => Ok(true),
            (Type::Named(m), Type::Named(n)) => Ok(m == n),
            (Type::Prod(a1, a2), Type::Prod(b1, b2)) | (Type::Sum(a1, a2), Type::Sum(b1, b2)) => {
                Ok(self.types_convertible(&a1, &b1)? && self.types_convertible(&a2, &b2)?)
            }
            (Type::Id(a, x, y), Type::Id(b, z, w)) => Ok(self.types_convertible(&a, &b)?
                && self.convertible(&x, &z, &a)?
                && self.convertible(&y, &w, &a)?),
            _ => Ok(false),
        }
    }
}

/// First-order matching of a binder-free pattern.
fn matches(pat: &Expr, e: &Expr, vars: &[String], sub: &mut HashMap<String, Expr>) -> bool {
    match (pat, e) {
        (Expr::Var(x), _) if vars.contains(x) => match sub.get(x) {
            Some(bound) => alpha_eq(bound, e),
            None => {
                sub.insert(x.clone(), e.clone());
                true
            }
        },
        (Expr::Var(x), Expr::Var(y)) => x == y,
        (Expr::Star, Expr::Star) | (Expr::Zero, Expr::Zero) => true,
        (Expr::Succ(p), Expr::Succ(q))
        | (Expr::Fst(p), Expr::Fst(q))
        | (Expr::Snd(p), Expr::Snd(q))
        | (Expr::Inl(p), Expr::Inl(q))
        | (Expr::Inr(p), Expr::Inr(q))
        | (Expr::Refl(p), Expr::Refl(q)) => matches(p, q, vars, sub),
        (Expr::App(f, p), Expr::App(g, q)) => f == g && matches(p, q, vars, sub),
        (Expr::Pair(p1, p2), Expr::Pair(q1, q2)) => matches(p1, q1, vars, sub) && matches(p2, q2, vars, sub),
        _ => false,
    }
}

/// Normal form with the default budget.
pub fn normalize(e: &Expr, theory: &Theory) -> Result<Expr, TtError> {
    Normalizer::new(theory, DEFAULT_BUDGET).norm(e)
}

#[cfg(test)]
mod tests {
    use super::super::parse::{parse_decl, parse_term};
    use super::super::theory::theory_extend;
    use super::*;

    fn nf(text: &str) -> Expr {
        normalize(&parse_term(text).unwrap(), &Theory::empty()).unwrap()
    }

    #[test]
    fn computation_rules() {
        assert_eq!(nf("fst <1, 2>"), Expr::numeral(1));
        assert_eq!(nf("snd <1, 2>"), Expr::numeral(2));
        assert_eq!(nf("case(inl 3, a. succ a, b. 0)"), Expr::numeral(4));
        assert_eq!(nf("case(inr 3, a. succ a, b. 0)"), Expr::numeral(0));
        assert_eq!(nf("natrec(0, p. succ succ p, 5)"), Expr::numeral(10));
        assert_eq!(nf("natrec(0, p. p, 0)"), Expr::Zero);
        // stuck on a variable target, but successors still unfold
        let e = nf("natrec(0, p. succ p, succ x)");
        assert_eq!(e.to_string(), "succ natrec(0, p. succ p, x)");
    }

    #[test]
    fn budget_is_a_distinct_verdict() {
        let th = theory_extend(
            ["const f : Nat -> Nat", "eq x:Nat |- f(x) = f(succ x) : Nat"].map(|l| parse_decl(l).unwrap()),
        )
        .unwrap();
        let err = Normalizer::new(&th, 100).norm(&parse_term("f(0)").unwrap()).unwrap_err();
        assert_eq!(err, TtError::RewriteBudgetExceeded(100));
        let big = parse_term("natrec(0, p. succ p, 50)").unwrap();
        assert!(Normalizer::new(&Theory::empty(), 10).norm(&big).is_err());
        assert!(Normalizer::new(&Theory::empty(), 60).norm(&big).is_ok());
    }

    #[test]
    fn theory_rewrites() {
        let th = theory_extend(
            ["const f : Nat -> Nat", "const g : Nat -> Nat", "eq x:Nat |- f(x) = g(x) : Nat"]
                .map(|l| parse_decl(l).unwrap()),
        )
        .unwrap();
        let mut n = Normalizer::new(&th, DEFAULT_BUDGET);
        let a = parse_term("f(succ y)").unwrap();
        let b = parse_term("g(succ y)").unwrap();
        assert!(n.convertible(&a, &b, &Type::Nat).unwrap());
    }
}

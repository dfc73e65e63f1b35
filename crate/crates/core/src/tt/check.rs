//! Bidirectional checking that produces derivation trees, and an
//! independent node-by-node validator for them.
//!
//! Judgmental equality is decided by [`Normalizer::convertible`]; the
//! structural rules (reflexivity, symmetry, transitivity, congruence,
//! substitution, weakening) are admissible through it and do not appear as
//! nodes. Equality reflection is restricted to what is decidable: `refl`
//! checks against `Id(A, u, v)` when `u` and `v` are convertible, and any two
//! inhabitants of an identity type are equal. Deriving `a = b` from a
//! hypothesis `p : Id(A, a, b)` is rejected with its own diagnostic.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::normalize::{Normalizer, DEFAULT_BUDGET};
use super::syntax::{alpha_eq, alpha_eq_type, fresh, Context, Expr, Judgment, Type};
use super::theory::Theory;
use super::TtError;

/// The named rules of the calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    CtxEmpty,
    CtxExt,
    UnitForm,
    NatForm,
    ProdForm,
    SumForm,
    IdForm,
    NamedForm,
    Var,
    Const,
    Star,
    Zero,
    Succ,
    NatRec,
    Pair,
    Fst,
    Snd,
    Inl,
    Inr,
    Case,
    Refl,
    App,
    Conv,
    TypeEqNorm,
    TermEqNorm,
    Uip,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::CtxEmpty => "ctx-empty",
            Rule::CtxExt => "ctx-ext",
            Rule::UnitForm => "unit-form",
            Rule::NatForm => "nat-form",
            Rule::ProdForm => "prod-form",
            Rule::SumForm => "sum-form",
            Rule::IdForm => "id-form",
            Rule::NamedForm => "named-form",
            Rule::Var => "var",
            Rule::Const => "const",
            Rule::Star => "unit-intro",
            Rule::Zero => "nat-zero",
            Rule::Succ => "nat-succ",
            Rule::NatRec => "nat-rec",
            Rule::Pair => "prod-intro",
            Rule::Fst => "prod-fst",
            Rule::Snd => "prod-snd",
            Rule::Inl => "sum-inl",
            Rule::Inr => "sum-inr",
            Rule::Case => "sum-case",
            Rule::Refl => "id-refl",
            Rule::App => "app",
            Rule::Conv => "conv",
            Rule::TypeEqNorm => "type-eq",
            Rule::TermEqNorm => "term-eq",
            Rule::Uip => "id-uip",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rule instance with its premises. Shared subderivations (typically of
/// contexts) are stored once.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgment,
    pub premises: Vec<Arc<Derivation>>,
}

impl Derivation {
    /// Number of distinct nodes.
    pub fn size(&self) -> usize {
        let mut seen = HashSet::new();
        let mut stack: Vec<&Derivation> = vec![self];
        while let Some(d) = stack.pop() {
            if seen.insert(d as *const Derivation) {
                stack.extend(d.premises.iter().map(|p| &**p));
            }
        }
        seen.len()
    }

    /// An indented rendering, one rule instance per line, omitting context
    /// derivations below the root.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self, 0usize)];
        while let Some((d, depth)) = stack.pop() {
            out.push_str(&format!("{}{}  [{}]\n", "  ".repeat(depth), d.conclusion, d.rule));
            for p in d.premises.iter().rev() {
                if depth == 0 || !matches!(p.conclusion, Judgment::Ctx(_)) {
                    stack.push((p, depth + 1));
                }
            }
        }
        out
    }
}

fn node(rule: Rule, conclusion: Judgment, premises: Vec<Arc<Derivation>>) -> Arc<Derivation> {
    Arc::new(Derivation { rule, conclusion, premises })
}

fn ill(subgoal: impl fmt::Display, reason: impl Into<String>) -> TtError {
    TtError::IllTyped { subgoal: subgoal.to_string(), reason: reason.into() }
}

/// `Γ |- e : ?`, for goals whose type is being inferred.
fn infer_goal(ctx: &Context, e: &Expr) -> String {
    if ctx.is_empty() {
        format!("|- {e} : ?")
    } else {
        format!("{ctx} |- {e} : ?")
    }
}

#[derive(Clone)]
struct Env {
    ctx: Context,
    deriv: Arc<Derivation>,
}

/// A checker over a theory with a rewrite budget per conversion query.
pub struct Checker<'t> {
    theory: &'t Theory,
    budget: u64,
}

impl<'t> Checker<'t> {
    pub fn new(theory: &'t Theory) -> Checker<'t> {
        Checker { theory, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u64) -> Checker<'t> {
        self.budget = budget;
        self
    }

    pub fn theory(&self) -> &'t Theory {
        self.theory
    }

    fn normalizer(&self) -> Normalizer<'t> {
        Normalizer::new(self.theory, self.budget)
    }

    /// Derive a judgment, or report the first subgoal that fails.
    pub fn check(&self, j: &Judgment) -> Result<Arc<Derivation>, TtError> {
        let env = self.context(j.context())?;
        match j {
            Judgment::Ctx(_) => Ok(env.deriv),
            Judgment::Type(_, a) => self.ty(&env, a),
            Judgment::TypeEq(_, a, b) => {
                let da = self.ty(&env, a)?;
                let db = self.ty(&env, b)?;
                if !self.normalizer().types_convertible(a, b)? {
                    return Err(ill(j, "the types are not judgmentally equal"));
                }
                Ok(node(Rule::TypeEqNorm, j.clone(), vec![da, db]))
            }
            Judgment::Term(_, e, a) => {
                self.ty(&env, a)?;
                self.check_term(&env, e, a)
            }
            Judgment::TermEq(g, x, y, a) => {
                self.ty(&env, a)?;
                let dx = self.check_term(&env, x, a)?;
                let dy = self.check_term(&env, y, a)?;
                let mut n = self.normalizer();
                if matches!(n.whnf_type(a), Type::Id(..)) {
                    return Ok(node(Rule::Uip, j.clone(), vec![dx, dy]));
                }
                if n.convertible(x, y, a)? {
                    return Ok(node(Rule::TermEqNorm, j.clone(), vec![dx, dy]));
                }
                if let Some(h) = self.reflection_hypothesis(g, x, y)? {
                    return Err(TtError::ReflectionUnsupported { subgoal: j.to_string(), hypothesis: h });
                }
                let (nx, ny) = (n.norm(x)?, n.norm(y)?);
                Err(ill(j, format!("normal forms differ: `{nx}` and `{ny}`")))
            }
        }
    }

    /// Decide `Γ ⊢ a = b : A` after checking both sides.
    pub fn check_eq(&self, ctx: &Context, a: &Expr, b: &Expr, ty: &Type) -> Result<bool, TtError> {
        let env = self.context(ctx)?;
        self.ty(&env, ty)?;
        self.check_term(&env, a, ty)?;
        self.check_term(&env, b, ty)?;
        self.normalizer().convertible(a, b, ty)
    }

    /// A hypothesis `p : Id(A, a, b)` (either orientation) in `ctx`.
    fn reflection_hypothesis(&self, ctx: &Context, a: &Expr, b: &Expr) -> Result<Option<String>, TtError> {
        let mut n = self.normalizer();
        for (p, t) in &ctx.entries {
            if let Type::Id(ty, s, u) = n.whnf_type(t) {
                let forward = n.convertible(a, &s, &ty)? && n.convertible(b, &u, &ty)?;
                if forward || (n.convertible(a, &u, &ty)? && n.convertible(b, &s, &ty)?) {
                    return Ok(Some(format!("{p} : {t}")));
                }
            }
        }
        Ok(None)
    }

    fn context(&self, ctx: &Context) -> Result<Env, TtError> {
        let mut env = Env { ctx: Context::empty(), deriv: node(Rule::CtxEmpty, Judgment::Ctx(Context::empty()), vec![]) };
        for (x, t) in &ctx.entries {
            if env.ctx.contains(x) {
                return Err(ill(Judgment::Ctx(env.ctx.extended(x, t.clone())), format!("`{x}` is bound twice")));
            }
            env = self.extend(&env, x, t)?;
        }
        Ok(env)
    }

    fn extend(&self, env: &Env, x: &str, t: &Type) -> Result<Env, TtError> {
        let dt = self.ty(env, t)?;
        let ctx = env.ctx.extended(x, t.clone());
        let deriv = node(Rule::CtxExt, Judgment::Ctx(ctx.clone()), vec![env.deriv.clone(), dt]);
        Ok(Env { ctx, deriv })
    }

    /// Rename a binder away from the context and from constants.
    fn open(&self, env: &Env, var: &str, body: &Expr) -> (String, Expr) {
        if !env.ctx.contains(var) && self.theory.constant(var).is_none() {
            return (var.to_string(), body.clone());
        }
        let mut avoid = env.ctx.vars();
        avoid.extend(body.free_vars());
        let mut y = fresh(var, &avoid);
        while self.theory.constant(&y).is_some() {
            avoid.insert(y.clone());
            y = fresh(var, &avoid);
        }
        let renamed = Expr::rename_bound(var, body, &y);
        (y, renamed)
    }

    fn ty(&self, env: &Env, t: &Type) -> Result<Arc<Derivation>, TtError> {
        let concl = Judgment::Type(env.ctx.clone(), t.clone());
        let premises = match t {
            Type::Unit | Type::Nat => vec![env.deriv.clone()],
            Type::Named(n) => {
                if !self.theory.has_type(n) {
                    return Err(ill(concl, format!("type `{n}` is not declared")));
                }
                vec![env.deriv.clone()]
            }
            Type::Prod(a, b) | Type::Sum(a, b) => vec![self.ty(env, a)?, self.ty(env, b)?],
            Type::Id(a, x, y) => vec![self.ty(env, a)?, self.check_term(env, x, a)?, self.check_term(env, y, a)?],
        };
        let rule = match t {
            Type::Unit => Rule::UnitForm,
            Type::Nat => Rule::NatForm,
            Type::Named(_) => Rule::NamedForm,
            Type::Prod(..) => Rule::ProdForm,
            Type::Sum(..) => Rule::SumForm,
            Type::Id(..) => Rule::IdForm,
        };
        Ok(node(rule, concl, premises))
    }

    /// Turn a derivation of `e : from` into one of `e : to`.
    fn coerce(&self, env: &Env, e: &Expr, d: Arc<Derivation>, from: &Type, to: &Type) -> Result<Arc<Derivation>, TtError> {
        if alpha_eq_type(from, to) {
            return Ok(d);
        }
        let goal = Judgment::Term(env.ctx.clone(), e.clone(), to.clone());
        if !self.normalizer().types_convertible(from, to)? {
            if let (Type::Id(ty, x, y), Type::Id(_, u, v)) = (from, to) {
                let mut n = self.normalizer();
                for (a, b) in [(&**x, &**u), (&**y, &**v)] {
                    if !n.convertible(a, b, ty)? {
                        if let Some(h) = self.reflection_hypothesis(&env.ctx, a, b)? {
                            return Err(TtError::ReflectionUnsupported { subgoal: goal.to_string(), hypothesis: h });
                        }
                    }
                }
            }
            return Err(ill(goal, format!("`{e}` has type `{from}`, which is not judgmentally equal to `{to}`")));
        }
        let eq = node(
            Rule::TypeEqNorm,
            Judgment::TypeEq(env.ctx.clone(), from.clone(), to.clone()),
            vec![self.ty(env, from)?, self.ty(env, to)?],
        );
        Ok(node(Rule::Conv, goal, vec![d, eq]))
    }

    fn infer(&self, env: &Env, e: &Expr) -> Result<(Type, Arc<Derivation>), TtError> {
        let ctx = &env.ctx;
        let done = |rule, t: Type, premises| Ok((t.clone(), node(rule, Judgment::Term(ctx.clone(), e.clone(), t), premises)));
        match e {
            Expr::Var(x) => {
                if let Some(t) = ctx.lookup(x) {
                    return done(Rule::Var, t.clone(), vec![env.deriv.clone()]);
                }
                if let Some(t) = self.theory.constant(x) {
                    return done(Rule::Const, t.clone(), vec![env.deriv.clone()]);
                }
                if self.theory.function(x).is_some() {
                    return Err(ill(infer_goal(ctx, e), format!("function constant `{x}` needs an argument")));
                }
                Err(TtError::UnknownConstant(x.clone()))
            }
            Expr::Star => done(Rule::Star, Type::Unit, vec![env.deriv.clone()]),
            Expr::Zero => done(Rule::Zero, Type::Nat, vec![env.deriv.clone()]),
            Expr::Succ(n) => {
                let dn = self.check_term(env, n, &Type::Nat)?;
                done(Rule::Succ, Type::Nat, vec![dn])
            }
            Expr::NatRec { base, var, step, target } => {
                let (a, db) = self.infer(env, base)?;
                let (ds, dt) = self.natrec_rest(env, var, step, target, &a)?;
                done(Rule::NatRec, a, vec![db, ds, dt])
            }
            Expr::Pair(a, b) => {
                let (ta, da) = self.infer(env, a)?;
                let (tb, db) = self.infer(env, b)?;
                done(Rule::Pair, Type::prod(ta, tb), vec![da, db])
            }
            Expr::Fst(p) | Expr::Snd(p) => {
                let (t, dp) = self.infer(env, p)?;
                let Type::Prod(a, b) = self.normalizer().whnf_type(&t) else {
                    return Err(ill(infer_goal(ctx, e), format!("`{p}` has type `{t}`, not a product")));
                };
                let prod = Type::Prod(a.clone(), b.clone());
                let dp = self.coerce(env, p, dp, &t, &prod)?;
                match e {
                    Expr::Fst(_) => done(Rule::Fst, *a, vec![dp]),
                    _ => done(Rule::Snd, *b, vec![dp]),
                }
            }
            Expr::Inl(_) | Expr::Inr(_) => {
                Err(ill(infer_goal(ctx, e), "the type of an injection must come from its surroundings"))
            }
            Expr::Case { scrut, left_var, left, right_var, right } => {
                let (a, b, ds) = self.scrutinee(env, scrut)?;
                let (x, l) = self.open(env, left_var, left);
                let (c, dl) = self.infer(&self.extend(env, &x, &a)?, &l)?;
                if c.free_vars().contains(&x) {
                    return Err(ill(infer_goal(ctx, e), "the branch type depends on the bound variable"));
                }
                let dc = self.ty(env, &c)?;
                let (y, r) = self.open(env, right_var, right);
                let dr = self.check_term(&self.extend(env, &y, &b)?, &r, &c)?;
                done(Rule::Case, c, vec![ds, dl, dr, dc])
            }
            Expr::Refl(a) => {
                let (t, da) = self.infer(env, a)?;
                done(Rule::Refl, Type::id(t, (**a).clone(), (**a).clone()), vec![da])
            }
            Expr::App(f, a) => {
                let Some((dom, cod)) = self.theory.function(f).cloned() else {
                    return Err(TtError::UnknownConstant(f.clone()));
                };
                let da = self.check_term(env, a, &dom)?;
                done(Rule::App, cod, vec![da])
            }
        }
    }

    fn natrec_rest(
        &self,
        env: &Env,
        var: &str,
        step: &Expr,
        target: &Expr,
        motive: &Type,
    ) -> Result<(Arc<Derivation>, Arc<Derivation>), TtError> {
        let (x, s) = self.open(env, var, step);
        let ds = self.check_term(&self.extend(env, &x, motive)?, &s, motive)?;
        let dt = self.check_term(env, target, &Type::Nat)?;
        Ok((ds, dt))
    }

    fn scrutinee(&self, env: &Env, scrut: &Expr) -> Result<(Type, Type, Arc<Derivation>), TtError> {
        let (t, ds) = self.infer(env, scrut)?;
        let Type::Sum(a, b) = self.normalizer().whnf_type(&t) else {
            return Err(ill(infer_goal(&env.ctx, scrut), format!("`{scrut}` has type `{t}`, not a sum")));
        };
        let sum = Type::Sum(a.clone(), b.clone());
        let ds = self.coerce(env, scrut, ds, &t, &sum)?;
        Ok((*a, *b, ds))
    }

    fn check_term(&self, env: &Env, e: &Expr, t: &Type) -> Result<Arc<Derivation>, TtError> {
        let ctx = &env.ctx;
        let goal = Judgment::Term(ctx.clone(), e.clone(), t.clone());
        let w = self.normalizer().whnf_type(t);
        let intro = matches!(e, Expr::Pair(..) | Expr::Inl(_) | Expr::Inr(_) | Expr::Refl(_));
        if intro && !alpha_eq_type(&w, t) {
            let d = self.check_term(env, e, &w)?;
            return self.coerce(env, e, d, &w, t);
        }
        match (e, &w) {
            (Expr::Pair(a, b), Type::Prod(ta, tb)) => {
                let premises = vec![self.check_term(env, a, ta)?, self.check_term(env, b, tb)?];
                Ok(node(Rule::Pair, goal, premises))
            }
            (Expr::Pair(..), _) => Err(ill(goal, "a pair needs a product type")),
            (Expr::Inl(a), Type::Sum(ta, tb)) => {
                let premises = vec![self.check_term(env, a, ta)?, self.ty(env, tb)?];
                Ok(node(Rule::Inl, goal, premises))
            }
            (Expr::Inr(b), Type::Sum(ta, tb)) => {
                let premises = vec![self.ty(env, ta)?, self.check_term(env, b, tb)?];
                Ok(node(Rule::Inr, goal, premises))
            }
            (Expr::Inl(_) | Expr::Inr(_), _) => Err(ill(goal, "an injection needs a sum type")),
            (Expr::NatRec { base, var, step, target }, _) => {
                let db = self.check_term(env, base, t)?;
                let (ds, dt) = self.natrec_rest(env, var, step, target, t)?;
                Ok(node(Rule::NatRec, goal, vec![db, ds, dt]))
            }
            (Expr::Case { scrut, left_var, left, right_var, right }, _) => {
                let (a, b, ds) = self.scrutinee(env, scrut)?;
                let (x, l) = self.open(env, left_var, left);
                let dl = self.check_term(&self.extend(env, &x, &a)?, &l, t)?;
                let (y, r) = self.open(env, right_var, right);
                let dr = self.check_term(&self.extend(env, &y, &b)?, &r, t)?;
                let dc = self.ty(env, t)?;
                Ok(node(Rule::Case, goal, vec![ds, dl, dr, dc]))
            }
            (Expr::Refl(a), Type::Id(ta, _, _)) => {
                let da = self.check_term(env, a, ta)?;
                let own = Type::id((**ta).clone(), (**a).clone(), (**a).clone());
                let d = node(Rule::Refl, Judgment::Term(ctx.clone(), e.clone(), own.clone()), vec![da]);
                self.coerce(env, e, d, &own, t)
            }
            (Expr::Refl(_), _) => Err(ill(goal, "refl needs an identity type")),
            _ => {
                let (s, d) = self.infer(env, e)?;
                self.coerce(env, e, d, &s, t)
            }
        }
    }

    /// Re-check every node of a derivation against its rule.
    pub fn validate(&self, d: &Derivation) -> Result<(), TtError> {
        let mut seen = HashSet::new();
        let mut stack: Vec<&Derivation> = vec![d];
        while let Some(d) = stack.pop() {
            if !seen.insert(d as *const Derivation) {
                continue;
            }
            self.validate_node(d).map_err(|reason| TtError::InvalidDerivation {
                rule: d.rule.name().to_string(),
                conclusion: d.conclusion.to_string(),
                reason,
            })?;
            stack.extend(d.premises.iter().map(|p| &**p));
        }
        Ok(())
    }

    fn validate_node(&self, d: &Derivation) -> Result<(), String> {
        use Judgment as J;
        let ps: Vec<&Judgment> = d.premises.iter().map(|p| &p.conclusion).collect();
        if ps.len() != premise_count(d.rule) {
            return Err(format!("expected {} premises, found {}", premise_count(d.rule), ps.len()));
        }
        let mut n = self.normalizer();
        let convert = |r: Result<bool, TtError>| r.map_err(|e| e.to_string());
        match (d.rule, &d.conclusion) {
            (Rule::CtxEmpty, J::Ctx(g)) => ensure(g.is_empty(), "the context is not empty"),
            (Rule::CtxExt, J::Ctx(g)) => {
                let Some(((x, a), prefix)) = g.entries.split_last() else {
                    return Err("the context is empty".into());
                };
                let prefix = Context::new(prefix.to_vec());
                ensure(!prefix.contains(x), "the variable is already bound")?;
                ensure(is_ctx(ps[0], &prefix), "first premise must derive the prefix")?;
                ensure(is_type(ps[1], &prefix, a), "second premise must derive the new type")
            }
            (Rule::UnitForm, J::Type(g, Type::Unit)) | (Rule::NatForm, J::Type(g, Type::Nat)) => {
                ensure(is_ctx(ps[0], g), "premise must derive the context")
            }
            (Rule::NamedForm, J::Type(g, Type::Named(a))) => {
                ensure(self.theory.has_type(a), "the type is not declared")?;
                ensure(is_ctx(ps[0], g), "premise must derive the context")
            }
            (Rule::ProdForm, J::Type(g, Type::Prod(a, b))) | (Rule::SumForm, J::Type(g, Type::Sum(a, b))) => {
                ensure(is_type(ps[0], g, a) && is_type(ps[1], g, b), "premises must derive both factors")
            }
            (Rule::IdForm, J::Type(g, Type::Id(a, x, y))) => ensure(
                is_type(ps[0], g, a) && is_term(ps[1], g, x, a) && is_term(ps[2], g, y, a),
                "premises must derive the carrier and both endpoints",
            ),
            (Rule::Var, J::Term(g, Expr::Var(x), a)) => {
                ensure(g.lookup(x).is_some_and(|t| alpha_eq_type(t, a)), "the variable is not bound at this type")?;
                ensure(is_ctx(ps[0], g), "premise must derive the context")
            }
            (Rule::Const, J::Term(g, Expr::Var(c), a)) => {
                ensure(!g.contains(c), "the name is bound by the context")?;
                ensure(
                    self.theory.constant(c).is_some_and(|t| alpha_eq_type(t, a)),
                    "the constant is not declared at this type",
                )?;
                ensure(is_ctx(ps[0], g), "premise must derive the context")
            }
            (Rule::Star, J::Term(g, Expr::Star, Type::Unit)) | (Rule::Zero, J::Term(g, Expr::Zero, Type::Nat)) => {
                ensure(is_ctx(ps[0], g), "premise must derive the context")
            }
            (Rule::Succ, J::Term(g, Expr::Succ(m), Type::Nat)) => {
                ensure(is_term(ps[0], g, m, &Type::Nat), "premise must type the predecessor")
            }
            (Rule::NatRec, J::Term(g, Expr::NatRec { base, var, step, target }, a)) => {
                ensure(is_term(ps[0], g, base, a), "first premise must type the base")?;
                ensure(is_bound_term(ps[1], g, a, var, step, a), "second premise must type the step")?;
                ensure(is_term(ps[2], g, target, &Type::Nat), "third premise must type the target")
            }
            (Rule::Pair, J::Term(g, Expr::Pair(x, y), Type::Prod(a, b))) => {
                ensure(is_term(ps[0], g, x, a) && is_term(ps[1], g, y, b), "premises must type both components")
            }
            (Rule::Fst, J::Term(g, Expr::Fst(p), a)) => match ps[0] {
                J::Term(h, q, Type::Prod(x, _)) if h.alpha_eq(g) && alpha_eq(p, q) && alpha_eq_type(x, a) => Ok(()),
                _ => Err("premise must type the pair at a product with this first factor".into()),
            },
            (Rule::Snd, J::Term(g, Expr::Snd(p), b)) => match ps[0] {
                J::Term(h, q, Type::Prod(_, y)) if h.alpha_eq(g) && alpha_eq(p, q) && alpha_eq_type(y, b) => Ok(()),
                _ => Err("premise must type the pair at a product with this second factor".into()),
            },
            (Rule::Inl, J::Term(g, Expr::Inl(x), Type::Sum(a, b))) => {
                ensure(is_term(ps[0], g, x, a) && is_type(ps[1], g, b), "premises must type the injection")
            }
            (Rule::Inr, J::Term(g, Expr::Inr(y), Type::Sum(a, b))) => {
                ensure(is_type(ps[0], g, a) && is_term(ps[1], g, y, b), "premises must type the injection")
            }
            (Rule::Case, J::Term(g, Expr::Case { scrut, left_var, left, right_var, right }, c)) => match ps[0] {
                J::Term(h, s, Type::Sum(a, b)) if h.alpha_eq(g) && alpha_eq(s, scrut) => {
                    ensure(is_bound_term(ps[1], g, a, left_var, left, c), "second premise must type the left branch")?;
                    ensure(is_bound_term(ps[2], g, b, right_var, right, c), "third premise must type the right branch")?;
                    ensure(is_type(ps[3], g, c), "fourth premise must derive the result type")
                }
                _ => Err("first premise must type the scrutinee at a sum".into()),
            },
            (Rule::Refl, J::Term(g, Expr::Refl(x), Type::Id(a, u, v))) => {
                ensure(alpha_eq(x, u) && alpha_eq(x, v), "both endpoints must be the reflexive term")?;
                ensure(is_term(ps[0], g, x, a), "premise must type the term")
            }
            (Rule::App, J::Term(g, Expr::App(f, x), b)) => {
                let Some((dom, cod)) = self.theory.function(f) else {
                    return Err("the function is not declared".into());
                };
                ensure(alpha_eq_type(cod, b), "the result type is not the declared codomain")?;
                ensure(is_term(ps[0], g, x, dom), "premise must type the argument at the declared domain")
            }
            (Rule::Conv, J::Term(g, e, b)) => match (ps[0], ps[1]) {
                (J::Term(h, e2, a), J::TypeEq(k, a2, b2))
                    if h.alpha_eq(g) && k.alpha_eq(g) && alpha_eq(e, e2) && alpha_eq_type(a, a2) && alpha_eq_type(b, b2) =>
                {
                    Ok(())
                }
                _ => Err("premises must type the term and equate the two types".into()),
            },
            (Rule::TypeEqNorm, J::TypeEq(g, a, b)) => {
                ensure(is_type(ps[0], g, a) && is_type(ps[1], g, b), "premises must derive both types")?;
                ensure(convert(n.types_convertible(a, b))?, "the types are not convertible")
            }
            (Rule::TermEqNorm, J::TermEq(g, x, y, a)) => {
                ensure(is_term(ps[0], g, x, a) && is_term(ps[1], g, y, a), "premises must type both sides")?;
                ensure(convert(n.convertible(x, y, a))?, "the terms are not convertible")
            }
            (Rule::Uip, J::TermEq(g, x, y, a)) => {
                ensure(matches!(n.whnf_type(a), Type::Id(..)), "the type is not an identity type")?;
                ensure(is_term(ps[0], g, x, a) && is_term(ps[1], g, y, a), "premises must type both proofs")
            }
            _ => Err("the conclusion does not have the rule's shape".into()),
        }
    }
}

fn premise_count(rule: Rule) -> usize {
    match rule {
        Rule::CtxEmpty => 0,
        Rule::UnitForm
        | Rule::NatForm
        | Rule::NamedForm
        | Rule::Var
        | Rule::Const
        | Rule::Star
        | Rule::Zero
        | Rule::Succ
        | Rule::Fst
        | Rule::Snd
        | Rule::Refl
        | Rule::App => 1,
        Rule::CtxExt
        | Rule::ProdForm
        | Rule::SumForm
        | Rule::Pair
        | Rule::Inl
        | Rule::Inr
        | Rule::Conv
        | Rule::TypeEqNorm
        | Rule::TermEqNorm
        | Rule::Uip => 2,
        Rule::IdForm | Rule::NatRec => 3,
        Rule::Case => 4,
    }
}

fn ensure(cond: bool, reason: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason.to_string())
    }
}

fn is_ctx(j: &Judgment, g: &Context) -> bool {
    matches!(j, Judgment::Ctx(h) if h.alpha_eq(g))
}

fn is_type(j: &Judgment, g: &Context, a: &Type) -> bool {
    matches!(j, Judgment::Type(h, b) if h.alpha_eq(g) && alpha_eq_type(a, b))
}

fn is_term(j: &Judgment, g: &Context, e: &Expr, a: &Type) -> bool {
    matches!(j, Judgment::Term(h, f, b) if h.alpha_eq(g) && alpha_eq(e, f) && alpha_eq_type(a, b))
}

/// `Γ, y:A ⊢ body[y/var] : C` for some `y` not bound in `Γ`.
fn is_bound_term(j: &Judgment, g: &Context, a: &Type, var: &str, body: &Expr, c: &Type) -> bool {
    let Judgment::Term(h, e, t) = j else { return false };
    let Some(((y, ty), prefix)) = h.entries.split_last() else { return false };
    let prefix = Context::new(prefix.to_vec());
    prefix.alpha_eq(g)
        && !g.contains(y)
        && alpha_eq_type(ty, a)
        && alpha_eq_type(t, c)
        && alpha_eq(e, &Expr::rename_bound(var, body, y))
}

/// Check a judgment against a theory with the default budget.
pub fn check(j: &Judgment, theory: &Theory) -> Result<Arc<Derivation>, TtError> {
    Checker::new(theory).check(j)
}

/// Re-validate a derivation node by node.
pub fn validate(d: &Derivation, theory: &Theory) -> Result<(), TtError> {
    Checker::new(theory).validate(d)
}

/// Judgmental equality of two terms at a type in a context.
pub fn check_eq(ctx: &Context, a: &Expr, b: &Expr, ty: &Type, theory: &Theory) -> Result<bool, TtError> {
    Checker::new(theory).check_eq(ctx, a, b, ty)
}

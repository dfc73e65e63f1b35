//! Interpretation of the `Unit`/`Nat`/product fragment into combinator
//! terms: a context of width `k` and a type of width `m` give a term
//! `ℕ^k → ℕ^m`, where `Nat` has width 1, `Unit` width 0 and products add.
//! `natrec` becomes the recursor with the context carried in its state.

use super::check::check;
use super::normalize::Normalizer;
use super::syntax::{Context, Expr, Judgment, Type};
use super::syncat::SynMorphism;
use super::theory::Theory;
use super::TtError;
use crate::skolem::{identity, Term};

fn slice(from: usize, to: usize, k: usize) -> Result<Term, TtError> {
    let parts = (from..=to).map(|i| Term::proj(i, k)).collect::<Result<Vec<_>, _>>()?;
    Ok(Term::tuple(k, parts)?)
}

/// Width of a type in the fragment.
pub fn width(t: &Type, theory: &Theory) -> Result<usize, TtError> {
    match Normalizer::new(theory, 0).whnf_type(t) {
        Type::Unit => Ok(0),
        Type::Nat => Ok(1),
        Type::Prod(a, b) => Ok(width(&a, theory)? + width(&b, theory)?),
        other => Err(TtError::OutsideFragment(format!("type `{other}`"))),
    }
}

struct Block {
    name: String,
    ty: Type,
    offset: usize,
    width: usize,
}

struct Interp<'t> {
    theory: &'t Theory,
    blocks: Vec<Block>,
    k: usize,
}

impl Interp<'_> {
    fn push(&mut self, name: &str, ty: &Type) -> Result<(), TtError> {
        let w = width(ty, self.theory)?;
        self.blocks.push(Block { name: name.to_string(), ty: ty.clone(), offset: self.k, width: w });
        self.k += w;
        Ok(())
    }

    fn pop(&mut self) {
        let b = self.blocks.pop().expect("pushed");
        self.k -= b.width;
    }

    fn tr(&mut self, e: &Expr) -> Result<(Term, Type), TtError> {
        let k = self.k;
        match e {
            Expr::Var(x) => match self.blocks.iter().rev().find(|b| &b.name == x) {
                Some(b) => Ok((slice(b.offset + 1, b.offset + b.width, k)?, b.ty.clone())),
                None => Err(TtError::OutsideFragment(format!("constant `{x}`"))),
            },
            Expr::Star => Ok((Term::tuple(k, Vec::new())?, Type::Unit)),
            Expr::Zero => Ok((Term::zero(k), Type::Nat)),
            Expr::Succ(n) => {
                let (t, _) = self.tr(n)?;
                Ok((Term::comp(Term::succ(), t)?, Type::Nat))
            }
            Expr::Pair(a, b) => {
                let (ta, ya) = self.tr(a)?;
                let (tb, yb) = self.tr(b)?;
                Ok((Term::tuple(k, vec![ta, tb])?, Type::prod(ya, yb)))
            }
            Expr::Fst(p) | Expr::Snd(p) => {
                let (tp, ty) = self.tr(p)?;
                let Type::Prod(a, b) = Normalizer::new(self.theory, 0).whnf_type(&ty) else {
                    return Err(TtError::OutsideFragment(format!("projection from `{ty}`")));
                };
                let (wa, wb) = (width(&a, self.theory)?, width(&b, self.theory)?);
                let (sel, t) = match e {
                    Expr::Fst(_) => (slice(1, wa, wa + wb)?, *a),
                    _ => (slice(wa + 1, wa + wb, wa + wb)?, *b),
                };
                Ok((Term::comp(sel, tp)?, t))
            }
            Expr::NatRec { base, var, step, target } => {
                let (tb, a) = self.tr(base)?;
                let m = width(&a, self.theory)?;
                self.push(var, &a)?;
                let ts = self.tr(step);
                self.pop();
                let (ts, _) = ts?;
                let (tt, _) = self.tr(target)?;
                // state (γ, acc): base ⟨id, b⟩, step ⟨γ, s(γ, acc)⟩
                let base_st = Term::tuple(k, vec![identity(k), tb])?;
                let step_st = Term::tuple(k + m, vec![slice(1, k, k + m)?, ts])?;
                let rec = Term::primrec(base_st, step_st)?;
                let at = Term::comp(rec, Term::tuple(k, vec![identity(k), tt])?)?;
                Ok((Term::comp(slice(k + 1, k + m, k + m)?, at)?, a))
            }
            Expr::Inl(_) | Expr::Inr(_) | Expr::Case { .. } => Err(TtError::OutsideFragment("sum types".into())),
            Expr::Refl(_) => Err(TtError::OutsideFragment("identity types".into())),
            Expr::App(f, _) => Err(TtError::OutsideFragment(format!("function constant `{f}`"))),
        }
    }
}

/// Interpret `Γ ⊢ e` without re-checking it.
pub fn interpret_term(ctx: &Context, e: &Expr, theory: &Theory) -> Result<Term, TtError> {
    let mut it = Interp { theory, blocks: Vec::new(), k: 0 };
    for (x, t) in &ctx.entries {
        it.push(x, t)?;
    }
    Ok(it.tr(e)?.0)
}

/// Check a typing judgment and interpret it as a term `ℕ^|Γ| → ℕ^|A|`.
pub fn interpret(j: &Judgment, theory: &Theory) -> Result<Term, TtError> {
    let Judgment::Term(ctx, e, a) = j else {
        return Err(TtError::OutsideFragment("only typing judgments are interpreted".into()));
    };
    width(a, theory)?;
    check(j, theory)?;
    interpret_term(ctx, e, theory)
}

pub fn interpret_morphism(m: &SynMorphism, theory: &Theory) -> Result<Term, TtError> {
    interpret(&m.judgment(), theory)
}

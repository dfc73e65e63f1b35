//! The exact/regular completion of the predicate category.
//!
//! Objects are pairs `(A, R)` of a predicate and an equivalence relation on
//! it; a morphism `(A, R) → (B, S)` is a predicate morphism `f` with
//! `R(x, y) ⇒ S(f x, f y)`, and `f ∼ g` iff `S(f x, g x)` for all `x ∈ A`.
//! Quotients are formed by changing the relation, never by normalizing it.
//! All conditions are checked on finite windows.

use std::fmt;

use crate::error::Error;
use crate::pred::{eq_vec, hom_check, mor_parts_from_sexp, pred_from_sexp, PredMorphism, PredObject};
use crate::sexpr::{atom_usize, parse_sexp, term_from_sexp, Sexp};
use crate::skolem::{Evaluator, Nat, Term};

fn proj_block(from: usize, len: usize, k: usize) -> Term {
    Term::tuple(k, (from..from + len).map(|i| Term::proj(i, k).expect("in range")).collect())
        .expect("projections share a source")
}

/// A candidate equivalence relation `R ⊆ A × A`, as a predicate on `ℕ^(2k)`.
#[derive(Clone)]
pub struct EquivRelation {
    pub on: PredObject,
    pub rel: PredObject,
}

impl fmt::Debug for EquivRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(rel {} {})", self.on.arity(), self.rel.raw())
    }
}

/// The first failure of an equivalence-relation law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub witness: Vec<Nat>,
}

/// The window points of `A` and the relation matrix between them.
struct Table {
    points: Vec<Vec<Nat>>,
    rel: Vec<Vec<bool>>,
}

fn table(on: &PredObject, rel: &PredObject, bound: u64) -> Result<Table, Error> {
    let ev = Evaluator::new();
    let points = on.members(bound)?;
    let mut matrix = Vec::with_capacity(points.len());
    for x in &points {
        let mut row = Vec::with_capacity(points.len());
        for y in &points {
            let xy: Vec<Nat> = x.iter().chain(y.iter()).cloned().collect();
            row.push(rel.holds(&ev, &xy)?);
        }
        matrix.push(row);
    }
    Ok(Table { points, rel: matrix })
}

fn concat(parts: &[&Vec<Nat>]) -> Vec<Nat> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// Check reflexivity, symmetry and transitivity over the window points of
/// `A`, in that order; report the first violation lexicographically.
pub fn is_equivalence_relation(on: &PredObject, rel: &PredObject, bound: u64) -> Result<Option<LawViolation>, Error> {
    if rel.arity() != 2 * on.arity() {
        return Err(Error::ArityMismatch { expected: 2 * on.arity(), found: rel.arity() });
    }
    let t = table(on, rel, bound)?;
    let n = t.points.len();
    for i in 0..n {
        if !t.rel[i][i] {
            let p = &t.points[i];
            return Ok(Some(LawViolation { law: "reflexivity", witness: concat(&[p, p]) }));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if t.rel[i][j] && !t.rel[j][i] {
                let w = concat(&[&t.points[i], &t.points[j]]);
                return Ok(Some(LawViolation { law: "symmetry", witness: w }));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !t.rel[i][j] {
                continue;
            }
            for k in 0..n {
                if t.rel[j][k] && !t.rel[i][k] {
                    let w = concat(&[&t.points[i], &t.points[j], &t.points[k]]);
                    return Ok(Some(LawViolation { law: "transitivity", witness: w }));
                }
            }
        }
    }
    Ok(None)
}

impl EquivRelation {
    /// Validate the three laws on the window.
    pub fn new(on: &PredObject, rel: &PredObject, bound: u64) -> Result<EquivRelation, Error> {
        if let Some(v) = is_equivalence_relation(on, rel, bound)? {
            return Err(Error::InvalidRelation { law: v.law, witness: v.witness });
        }
        Ok(EquivRelation { on: on.clone(), rel: rel.clone() })
    }

    /// Equality on `A`.
    pub fn equality(on: &PredObject) -> EquivRelation {
        let k = on.arity();
        let chi = eq_vec(&proj_block(1, k, 2 * k), &proj_block(k + 1, k, 2 * k)).expect("parallel blocks");
        let rel = PredObject::booleanize(&chi).expect("target 1");
        EquivRelation { on: on.clone(), rel }
    }

    pub fn related(&self, ev: &Evaluator, x: &[Nat], y: &[Nat]) -> Result<bool, Error> {
        let xy: Vec<Nat> = x.iter().chain(y.iter()).cloned().collect();
        self.rel.holds(ev, &xy)
    }
}

/// First pair of window points of `A` on which the relations differ.
pub fn relation_disagreement(r: &EquivRelation, s: &EquivRelation, bound: u64) -> Result<Option<Vec<Nat>>, Error> {
    if r.on.arity() != s.on.arity() {
        return Err(Error::ArityMismatch { expected: r.on.arity(), found: s.on.arity() });
    }
    let ev = Evaluator::new();
    let points = r.on.members(bound)?;
    for x in &points {
        for y in &points {
            if r.related(&ev, x, y)? != s.related(&ev, x, y)? {
                return Ok(Some(concat(&[x, y])));
            }
        }
    }
    Ok(None)
}

/// An object `(A, R)`.
#[derive(Clone, Debug)]
pub struct ExObject {
    pub base: PredObject,
    pub rel: EquivRelation,
}

impl ExObject {
    pub fn new(base: &PredObject, rel: &PredObject, bound: u64) -> Result<ExObject, Error> {
        Ok(ExObject { base: base.clone(), rel: EquivRelation::new(base, rel, bound)? })
    }

    /// `(A, =)`, the image of `A` under the embedding.
    pub fn discrete(base: &PredObject) -> ExObject {
        ExObject { base: base.clone(), rel: EquivRelation::equality(base) }
    }

    pub fn to_sexp_string(&self) -> String {
        format!("(exobj {} (rel {} {}))", self.base, self.base.arity(), self.rel.rel.raw())
    }
}

impl fmt::Display for ExObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexp_string())
    }
}

/// A relation-preserving predicate morphism.
#[derive(Clone, Debug)]
pub struct ExMorphism {
    pub dom: ExObject,
    pub cod: ExObject,
    pub carrier: PredMorphism,
}

impl ExMorphism {
    pub fn to_sexp_string(&self) -> String {
        format!("(exmor {} {} {})", self.dom, self.cod, self.carrier.to_sexp_string())
    }
}

/// Check `R(x, y) ⇒ S(f x, f y)` over window points of `A`; the witness is
/// the concatenation `x ++ y`.
pub fn ex_hom_check(dom: &ExObject, cod: &ExObject, f: &Term, bound: u64) -> Result<ExMorphism, Error> {
    let carrier = hom_check(f, &dom.base, &cod.base, bound)?;
    let ev = Evaluator::new();
    let points = dom.base.members(bound)?;
    let images: Vec<Vec<Nat>> = points.iter().map(|x| ev.eval(f, x)).collect::<Result<_, _>>()?;
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            if dom.rel.related(&ev, x, y)? && !cod.rel.related(&ev, &images[i], &images[j])? {
                return Err(Error::RelationNotPreserved { witness: concat(&[x, y]) });
            }
        }
    }
    Ok(ExMorphism { dom: dom.clone(), cod: cod.clone(), carrier })
}

/// The quotient of `A` by `R`: the object `(A, R)` and the map
/// `q : (A, =) → (A, R)` with identity carrier.
pub fn quotient(base: &PredObject, rel: &PredObject, bound: u64) -> Result<(ExObject, ExMorphism), Error> {
    let obj = ExObject::new(base, rel, bound)?;
    let q = ex_hom_check(&ExObject::discrete(base), &obj, &crate::skolem::identity(base.arity()), bound)?;
    Ok((obj, q))
}

/// First window point `x ∈ A` with `¬S(f x, g x)`.
pub fn mor_disagreement_ex(f: &ExMorphism, g: &ExMorphism, bound: u64) -> Result<Option<Vec<Nat>>, Error> {
    if f.dom.base.arity() != g.dom.base.arity() || f.cod.base.arity() != g.cod.base.arity() {
        return Err(Error::DomainMismatch("morphisms are not parallel".into()));
    }
    let ev = Evaluator::new();
    for x in f.dom.base.members(bound)? {
        let fx = ev.eval(&f.carrier.carrier, &x)?;
        let gx = ev.eval(&g.carrier.carrier, &x)?;
        if !f.cod.rel.related(&ev, &fx, &gx)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Morphism equality in the completion: `f ∼ g` on the window.
pub fn mor_eq_ex(f: &ExMorphism, g: &ExMorphism, bound: u64) -> Result<bool, Error> {
    Ok(mor_disagreement_ex(f, g, bound)?.is_none())
}

/// The kernel pair `x ∼ y ⇔ S(f x, f y)` of a morphism, as a relation on its
/// domain.
pub fn kernel_pair(f: &ExMorphism, bound: u64) -> Result<EquivRelation, Error> {
    let k = f.dom.base.arity();
    let carrier = &f.carrier.carrier;
    let fx = Term::comp(carrier.clone(), proj_block(1, k, 2 * k))?;
    let fy = Term::comp(carrier.clone(), proj_block(k + 1, k, 2 * k))?;
    let chi = Term::comp(f.cod.rel.rel.chi().clone(), Term::tuple(2 * k, vec![fx, fy])?)?;
    EquivRelation::new(&f.dom.base, &PredObject::booleanize(&chi)?, bound)
}

/// `(rel k chi)` relative to a base predicate.
fn rel_from_sexp(s: &Sexp, base: &PredObject) -> Result<PredObject, Error> {
    let items = match s.as_list() {
        Some(items) if s.head() == Some("rel") && items.len() == 3 => items,
        _ => return Err(Error::Parse { offset: s.offset(), message: "expected `(rel k term)`".into() }),
    };
    let k = atom_usize(&items[1])?;
    let t = term_from_sexp(&items[2])?;
    if k != base.arity() || t.source() != 2 * k {
        return Err(Error::Parse {
            offset: items[2].offset(),
            message: format!("relation on ℕ^{} needs a term of source {}", base.arity(), 2 * base.arity()),
        });
    }
    PredObject::booleanize(&t).map_err(|e| Error::Parse { offset: s.offset(), message: e.to_string() })
}

/// `(exobj (pred …) (rel k chi))`, validated on the window.
pub fn exobj_from_sexp(s: &Sexp, bound: u64) -> Result<ExObject, Error> {
    let items = match s.as_list() {
        Some(items) if s.head() == Some("exobj") && items.len() == 3 => items,
        _ => return Err(Error::Parse { offset: s.offset(), message: "expected `(exobj (pred …) (rel …))`".into() }),
    };
    let base = pred_from_sexp(&items[1])?;
    let rel = rel_from_sexp(&items[2], &base)?;
    ExObject::new(&base, &rel, bound)
}

pub fn parse_exobj(text: &str, bound: u64) -> Result<ExObject, Error> {
    exobj_from_sexp(&parse_sexp(text)?, bound)
}

/// `(exmor dom cod (mor …))`, validated on the window.
pub fn parse_exmor(text: &str, bound: u64) -> Result<ExMorphism, Error> {
    let s = parse_sexp(text)?;
    let items = match s.as_list() {
        Some(items) if s.head() == Some("exmor") && items.len() == 4 => items,
        _ => return Err(Error::Parse { offset: s.offset(), message: "expected `(exmor dom cod (mor …))`".into() }),
    };
    let dom = exobj_from_sexp(&items[1], bound)?;
    let cod = exobj_from_sexp(&items[2], bound)?;
    let (_, _, f) = mor_parts_from_sexp(&items[3])?;
    ex_hom_check(&dom, &cod, &f, bound)
}

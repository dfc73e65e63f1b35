//! The category of decidable predicates.
//!
//! An object is a subset of `ℕ^k` given by a `{0,1}`-valued characteristic
//! term; a morphism `P → Q` is a term `f` with `P ≤ Q ∘ f`, and two morphisms
//! are equal when they agree on `P`. Both conditions are `Π₁`, so they are
//! checked on finite windows and every verdict records the bound it used.

use std::fmt;

use crate::error::Error;
use crate::sexpr::{atom_usize, parse_sexp, term_from_sexp, Sexp};
use crate::skolem::library::{self, bounded_mu, konst};
use crate::skolem::{Evaluator, Nat, Term, Window};

fn p(i: usize, k: usize) -> Term {
    Term::proj(i, k).expect("projection in range")
}

fn c(g: &Term, f: &Term) -> Result<Term, Error> {
    Term::comp(g.clone(), f.clone())
}

fn tup(k: usize, parts: Vec<Term>) -> Result<Term, Error> {
    Term::tuple(k, parts)
}

/// `⟨P(from,k) … P(to,k)⟩ : ℕ^k → ℕ^(to-from+1)`.
fn slice(from: usize, to: usize, k: usize) -> Term {
    Term::tuple(k, (from..=to).map(|i| p(i, k)).collect()).expect("projections share a source")
}

/// Conjunction of `{0,1}`-valued terms with common source `k`.
pub(crate) fn conj(k: usize, terms: Vec<Term>) -> Result<Term, Error> {
    let mut it = terms.into_iter();
    let Some(mut acc) = it.next() else {
        return Ok(konst(&Nat::from(1u32), k));
    };
    for t in it {
        acc = c(&library::and2(), &tup(k, vec![acc, t])?)?;
    }
    Ok(acc)
}

/// Componentwise equality of two parallel terms `ℕ^k → ℕ^r`.
pub(crate) fn eq_vec(f: &Term, g: &Term) -> Result<Term, Error> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::DomainMismatch("equality of non-parallel terms".into()));
    }
    let (k, r) = (f.source(), f.target());
    let mut parts = Vec::with_capacity(r);
    for i in 1..=r {
        let fi = c(&p(i, r), f)?;
        let gi = c(&p(i, r), g)?;
        parts.push(c(&library::eq(), &tup(k, vec![fi, gi])?)?);
    }
    conj(k, parts)
}

/// A decidable predicate on `ℕ^k`.
#[derive(Clone)]
pub struct PredObject {
    arity: usize,
    raw: Term,
    chi: Term,
}

impl PredObject {
    /// Force a term `ℕ^k → ℕ` into a characteristic term:
    /// `chi = 1 ∸ (1 ∸ t)`, which is 0 where `t` is 0 and 1 elsewhere.
    pub fn booleanize(t: &Term) -> Result<PredObject, Error> {
        if t.target() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: t.target() });
        }
        let not1 = library::not1();
        let chi = c(&not1, &c(&not1, t)?)?;
        Ok(PredObject { arity: t.source(), raw: t.clone(), chi })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The characteristic term; `{0,1}`-valued.
    pub fn chi(&self) -> &Term {
        &self.chi
    }

    /// The term the predicate was built from.
    pub fn raw(&self) -> &Term {
        &self.raw
    }

    pub fn holds(&self, ev: &Evaluator, v: &[Nat]) -> Result<bool, Error> {
        Ok(ev.eval(&self.chi, v)?[0] == Nat::from(1u32))
    }

    /// Window points satisfying the predicate, in lexicographic order.
    pub fn members(&self, bound: u64) -> Result<Vec<Vec<Nat>>, Error> {
        let ev = Evaluator::new();
        let mut out = Vec::new();
        for v in Window::new(self.arity, bound) {
            if self.holds(&ev, &v)? {
                out.push(v);
            }
        }
        Ok(out)
    }

    pub fn to_sexp_string(&self) -> String {
        format!("(pred {} {})", self.arity, self.raw)
    }
}

impl fmt::Debug for PredObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexp_string())
    }
}

impl fmt::Display for PredObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexp_string())
    }
}

/// `⊤` on `ℕ^k`.
pub fn top(k: usize) -> PredObject {
    PredObject::booleanize(&konst(&Nat::from(1u32), k)).expect("constant has target 1")
}

/// `⊥` on `ℕ^k`.
pub fn bottom(k: usize) -> PredObject {
    PredObject::booleanize(&Term::zero(k)).expect("zero has target 1")
}

fn same_arity(a: &PredObject, b: &PredObject) -> Result<(), Error> {
    if a.arity != b.arity {
        return Err(Error::ArityMismatch { expected: a.arity, found: b.arity });
    }
    Ok(())
}

fn binary(op: Term, a: &PredObject, b: &PredObject) -> Result<PredObject, Error> {
    same_arity(a, b)?;
    let t = c(&op, &tup(a.arity, vec![a.chi.clone(), b.chi.clone()])?)?;
    PredObject::booleanize(&t)
}

/// Intersection (`min` of characteristic terms).
pub fn pred_and(a: &PredObject, b: &PredObject) -> Result<PredObject, Error> {
    binary(library::and2(), a, b)
}

/// Union (`max` of characteristic terms).
pub fn pred_or(a: &PredObject, b: &PredObject) -> Result<PredObject, Error> {
    binary(library::or2(), a, b)
}

/// Complement (`1 ∸ χ`).
pub fn pred_not(a: &PredObject) -> Result<PredObject, Error> {
    PredObject::booleanize(&c(&library::not1(), &a.chi)?)
}

/// First window point where the two predicates differ.
pub fn pred_disagreement(a: &PredObject, b: &PredObject, bound: u64) -> Result<Option<Vec<Nat>>, Error> {
    same_arity(a, b)?;
    let ev = Evaluator::new();
    for v in Window::new(a.arity, bound) {
        if a.holds(&ev, &v)? != b.holds(&ev, &v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Window-extensional equality of predicates.
pub fn pred_eq_window(a: &PredObject, b: &PredObject, bound: u64) -> Result<bool, Error> {
    Ok(pred_disagreement(a, b, bound)?.is_none())
}

/// A morphism of decidable predicates, verified on `0..=check_bound`.
#[derive(Clone)]
pub struct PredMorphism {
    pub dom: PredObject,
    pub cod: PredObject,
    pub carrier: Term,
    pub check_bound: u64,
}

impl PredMorphism {
    pub fn to_sexp_string(&self) -> String {
        format!("(mor {} {} {})", self.dom, self.cod, self.carrier)
    }
}

impl fmt::Debug for PredMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [checked ≤ {}]", self.to_sexp_string(), self.check_bound)
    }
}

/// Verify `P ≤ Q ∘ f` on the window; on failure report the least
/// counterexample in lexicographic order.
pub fn hom_check(f: &Term, dom: &PredObject, cod: &PredObject, bound: u64) -> Result<PredMorphism, Error> {
    if f.source() != dom.arity {
        return Err(Error::ArityMismatch { expected: dom.arity, found: f.source() });
    }
    if f.target() != cod.arity {
        return Err(Error::ArityMismatch { expected: cod.arity, found: f.target() });
    }
    let ev = Evaluator::new();
    for v in Window::new(dom.arity, bound) {
        if dom.holds(&ev, &v)? && !cod.holds(&ev, &ev.eval(f, &v)?)? {
            return Err(Error::HomViolation { witness: v });
        }
    }
    Ok(PredMorphism { dom: dom.clone(), cod: cod.clone(), carrier: f.clone(), check_bound: bound })
}

fn parallel(f: &PredMorphism, g: &PredMorphism) -> Result<(), Error> {
    same_arity(&f.dom, &g.dom)?;
    same_arity(&f.cod, &g.cod)
}

/// First window point of the domain where the carriers differ.
pub fn mor_disagreement(f: &PredMorphism, g: &PredMorphism, bound: u64) -> Result<Option<Vec<Nat>>, Error> {
    parallel(f, g)?;
    let ev = Evaluator::new();
    for v in Window::new(f.dom.arity, bound) {
        if f.dom.holds(&ev, &v)? && ev.eval(&f.carrier, &v)? != ev.eval(&g.carrier, &v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Morphism equality: the carriers agree on every window point of the domain.
pub fn mor_eq(f: &PredMorphism, g: &PredMorphism, bound: u64) -> Result<bool, Error> {
    Ok(mor_disagreement(f, g, bound)?.is_none())
}

/// Identity morphism.
pub fn id_mor(a: &PredObject, bound: u64) -> Result<PredMorphism, Error> {
    hom_check(&crate::skolem::identity(a.arity), a, a, bound)
}

/// `g ∘ f`, re-verified on the window.
pub fn compose_mor(g: &PredMorphism, f: &PredMorphism, bound: u64) -> Result<PredMorphism, Error> {
    same_arity(&f.cod, &g.dom)?;
    hom_check(&c(&g.carrier, &f.carrier)?, &f.dom, &g.cod, bound)
}

/// Equalizer of a parallel pair: `E = P ∧ (f = g)` with its inclusion.
pub fn equalizer(f: &PredMorphism, g: &PredMorphism, bound: u64) -> Result<(PredObject, PredMorphism), Error> {
    parallel(f, g)?;
    let k = f.dom.arity;
    let chi = conj(k, vec![f.dom.chi.clone(), eq_vec(&f.carrier, &g.carrier)?])?;
    let e = PredObject::booleanize(&chi)?;
    let incl = hom_check(&crate::skolem::identity(k), &e, &f.dom, bound)?;
    Ok((e, incl))
}

/// The factorization of `h : X → P` through an equalizer inclusion when
/// `f ∘ h = g ∘ h`: the same carrier, with the equalizer as codomain.
pub fn factor_through_equalizer(h: &PredMorphism, e: &PredObject, bound: u64) -> Result<PredMorphism, Error> {
    hom_check(&h.carrier, &h.dom, e, bound)
}

/// Binary product with its projections.
pub fn product(a: &PredObject, b: &PredObject, bound: u64) -> Result<(PredObject, PredMorphism, PredMorphism), Error> {
    let (ka, kb) = (a.arity, b.arity);
    let n = ka + kb;
    let pa = slice(1, ka, n);
    let pb = slice(ka + 1, n, n);
    let chi = conj(n, vec![c(&a.chi, &pa)?, c(&b.chi, &pb)?])?;
    let prod = PredObject::booleanize(&chi)?;
    let p1 = hom_check(&pa, &prod, a, bound)?;
    let p2 = hom_check(&pb, &prod, b, bound)?;
    Ok((prod, p1, p2))
}

/// Pairing `⟨f, g⟩ : X → A × B` into a product built by [`product`].
pub fn pair_mor(f: &PredMorphism, g: &PredMorphism, prod: &PredObject, bound: u64) -> Result<PredMorphism, Error> {
    same_arity(&f.dom, &g.dom)?;
    let carrier = tup(f.dom.arity, vec![f.carrier.clone(), g.carrier.clone()])?;
    hom_check(&carrier, &f.dom, prod, bound)
}

/// Pullback of a cospan `f : A → C ← B : g`, as the equalizer of
/// `f ∘ π₁` and `g ∘ π₂` inside `A × B`.
pub fn pullback(f: &PredMorphism, g: &PredMorphism, bound: u64) -> Result<(PredObject, PredMorphism, PredMorphism), Error> {
    same_arity(&f.cod, &g.cod)?;
    let (_, p1, p2) = product(&f.dom, &g.dom, bound)?;
    let fp = compose_mor(f, &p1, bound)?;
    let gp = compose_mor(g, &p2, bound)?;
    let (pb, incl) = equalizer(&fp, &gp, bound)?;
    let q1 = compose_mor(&p1, &incl, bound)?;
    let q2 = compose_mor(&p2, &incl, bound)?;
    Ok((pb, q1, q2))
}

/// Coproduct: `A × {0} ∪ B × {1}`, the tag being the last coordinate. The
/// smaller side is padded with coordinates that must be zero.
pub fn coproduct(a: &PredObject, b: &PredObject, bound: u64) -> Result<(PredObject, PredMorphism, PredMorphism), Error> {
    let k = a.arity.max(b.arity);
    let n = k + 1;
    let tag = p(n, n);
    let side = |x: &PredObject, tag_test: Term| -> Result<Term, Error> {
        let mut parts = vec![tag_test, c(&x.chi, &slice(1, x.arity, n))?];
        for j in x.arity + 1..=k {
            parts.push(c(&library::not1(), &p(j, n))?);
        }
        conj(n, parts)
    };
    let is0 = c(&library::not1(), &tag)?;
    let is1 = c(&library::eq(), &tup(n, vec![tag.clone(), konst(&Nat::from(1u32), n)])?)?;
    let chi = c(&library::or2(), &tup(n, vec![side(a, is0)?, side(b, is1)?])?)?;
    let sum = PredObject::booleanize(&chi)?;
    let inj = |x: &PredObject, t: u32| -> Result<PredMorphism, Error> {
        let m = x.arity;
        let mut parts: Vec<Term> = (1..=m).map(|i| p(i, m)).collect();
        parts.extend((m..k).map(|_| Term::zero(m)));
        parts.push(konst(&Nat::from(t), m));
        hom_check(&tup(m, parts)?, x, &sum, bound)
    };
    let inl = inj(a, 0)?;
    let inr = inj(b, 1)?;
    Ok((sum, inl, inr))
}

/// Cantor coding `ℕ^k → ℕ` by iterated pairing (`k = 1` is the identity).
pub fn cantor_code(k: usize) -> Term {
    match k {
        0 => Term::zero(0),
        1 => p(1, 1),
        _ => {
            let rest = c(&cantor_code(k - 1), &slice(2, k, k)).expect("arity");
            c(&library::cantor_pair(), &tup(k, vec![p(1, k), rest]).expect("arity")).expect("arity")
        }
    }
}

/// Inverse of [`cantor_code`]: `ℕ → ℕ^k`.
pub fn cantor_decode(k: usize) -> Term {
    match k {
        0 => Term::tuple(1, vec![]).expect("empty tuple"),
        1 => p(1, 1),
        _ => {
            let rest = c(&cantor_decode(k - 1), &library::cantor_unpair_right()).expect("arity");
            tup(1, vec![library::cantor_unpair_left(), rest]).expect("arity")
        }
    }
}

/// Split-epi/mono factorization of a morphism.
#[derive(Debug, Clone)]
pub struct ImageFactorization {
    /// Pairs `(y, m)` with `y = f(x)` and `m` the least code of a preimage.
    pub image: PredObject,
    pub epi: PredMorphism,
    pub mono: PredMorphism,
    /// Right inverse of `epi`: `(y, m) ↦ decode(m)`.
    pub section: PredMorphism,
}

/// Factor `f : P → Q` as `P ↠ im(f) ↣ Q`. With `k = dom arity` and
/// `r = cod arity`, `im(f) ⊆ ℕ^(r+1)` holds `(y, m)` when `m` is the least
/// Cantor code of a point of `P` mapped to `y`. The minimal preimage is
/// found by bounded minimization.
pub fn image_factorize(f: &PredMorphism, bound: u64) -> Result<ImageFactorization, Error> {
    let k = f.dom.arity;
    let r = f.cod.arity;
    let dec = cantor_decode(k);
    let code = cantor_code(k);
    // cond(y, j) = P(dec j) ∧ f(dec j) = y, over ℕ^(r+1)
    let j = p(r + 1, r + 1);
    let x = c(&dec, &j)?;
    let cond = conj(
        r + 1,
        vec![c(&f.dom.chi, &x)?, eq_vec(&c(&f.carrier, &x)?, &slice(1, r, r + 1))?],
    )?;
    let mu = bounded_mu(&cond)?;
    let chi = c(&library::eq(), &tup(r + 1, vec![mu.clone(), j])?)?;
    let image = PredObject::booleanize(&chi)?;

    let fx: Vec<Term> = (1..=r).map(|i| c(&p(i, r), &f.carrier)).collect::<Result<_, _>>()?;
    let mut mu_args = fx.clone();
    mu_args.push(code.clone());
    let least = c(&mu, &tup(k, mu_args)?)?;
    let mut epi_parts = fx;
    epi_parts.push(least);
    let epi = hom_check(&tup(k, epi_parts)?, &f.dom, &image, bound)?;
    let mono = hom_check(&slice(1, r, r + 1), &image, &f.cod, bound)?;
    let section = hom_check(&c(&dec, &p(r + 1, r + 1))?, &image, &f.dom, bound)?;
    Ok(ImageFactorization { image, epi, mono, section })
}

/// `(pred k term)`.
pub fn pred_from_sexp(s: &Sexp) -> Result<PredObject, Error> {
    let items = match s.as_list() {
        Some(items) if s.head() == Some("pred") && items.len() == 3 => items,
        _ => return Err(Error::Parse { offset: s.offset(), message: "expected `(pred k term)`".into() }),
    };
    let k = atom_usize(&items[1])?;
    let t = term_from_sexp(&items[2])?;
    if t.source() != k {
        return Err(Error::Parse {
            offset: items[2].offset(),
            message: format!("predicate term has source {} but the ambient arity is {k}", t.source()),
        });
    }
    PredObject::booleanize(&t).map_err(|e| Error::Parse { offset: items[2].offset(), message: e.to_string() })
}

pub fn parse_pred(text: &str) -> Result<PredObject, Error> {
    pred_from_sexp(&parse_sexp(text)?)
}

/// `(mor dom cod carrier)` → the unchecked parts.
pub fn mor_parts_from_sexp(s: &Sexp) -> Result<(PredObject, PredObject, Term), Error> {
    let items = match s.as_list() {
        Some(items) if s.head() == Some("mor") && items.len() == 4 => items,
        _ => return Err(Error::Parse { offset: s.offset(), message: "expected `(mor dom cod carrier)`".into() }),
    };
    Ok((pred_from_sexp(&items[1])?, pred_from_sexp(&items[2])?, term_from_sexp(&items[3])?))
}

/// Parse `(mor dom cod carrier)` and verify it on `0..=bound`.
pub fn parse_mor(text: &str, bound: u64) -> Result<PredMorphism, Error> {
    let (dom, cod, f) = mor_parts_from_sexp(&parse_sexp(text)?)?;
    hom_check(&f, &dom, &cod, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skolem::{identity, nats};

    fn evens() -> PredObject {
        PredObject::booleanize(&library::is_even()).unwrap()
    }

    #[test]
    fn booleanize_values() {
        let add = PredObject::booleanize(&library::add()).unwrap();
        let ev = Evaluator::new();
        assert!(add.holds(&ev, &nats(&[2, 3])).unwrap());
        assert!(!add.holds(&ev, &nats(&[0, 0])).unwrap());
        assert_eq!(ev.eval(add.chi(), &nats(&[2, 3])).unwrap(), nats(&[1]));
    }

    #[test]
    fn hom_condition() {
        assert!(hom_check(&Term::succ(), &top(1), &top(1), 10).is_ok());
        assert_eq!(
            hom_check(&identity(1), &top(1), &evens(), 10).unwrap_err(),
            Error::HomViolation { witness: nats(&[1]) }
        );
        assert!(hom_check(&library::double(), &top(1), &evens(), 10).is_ok());
    }

    #[test]
    fn equalizer_examples() {
        let id = id_mor(&top(1), 10).unwrap();
        let zero = hom_check(&Term::zero(1), &top(1), &top(1), 10).unwrap();
        let succ = hom_check(&Term::succ(), &top(1), &top(1), 10).unwrap();
        let (e, _) = equalizer(&id, &zero, 10).unwrap();
        assert_eq!(e.members(10).unwrap(), vec![nats(&[0])]);
        let (e, _) = equalizer(&succ, &zero, 10).unwrap();
        assert!(pred_eq_window(&e, &bottom(1), 10).unwrap());
    }

    #[test]
    fn coproduct_tags() {
        let (sum, inl, inr) = coproduct(&top(1), &top(1), 5).unwrap();
        let ev = Evaluator::new();
        assert_eq!(ev.eval(&inl.carrier, &nats(&[3])).unwrap(), nats(&[3, 0]));
        assert_eq!(ev.eval(&inr.carrier, &nats(&[3])).unwrap(), nats(&[3, 1]));
        assert!(sum.holds(&ev, &nats(&[3, 0])).unwrap());
        assert!(!sum.holds(&ev, &nats(&[3, 2])).unwrap());
    }

    #[test]
    fn image_of_constant() {
        let f = hom_check(&Term::zero(1), &top(1), &top(1), 10).unwrap();
        let im = image_factorize(&f, 10).unwrap();
        assert_eq!(im.image.members(10).unwrap(), vec![nats(&[0, 0])]);
    }

    #[test]
    fn cantor_codes_invert() {
        let ev = Evaluator::new();
        for k in 0..4 {
            for v in Window::new(k, 4) {
                let code = ev.eval(&cantor_code(k), &v).unwrap();
                assert_eq!(ev.eval(&cantor_decode(k), &code).unwrap(), v);
            }
        }
    }

    #[test]
    fn printing_and_parsing() {
        let e = evens();
        let back = parse_pred(&e.to_sexp_string()).unwrap();
        assert!(pred_eq_window(&e, &back, 10).unwrap());
        let m = parse_mor("(mor (pred 1 (const-one)) (pred 1 (is-even)) (double))", 8).unwrap();
        assert_eq!(m.check_bound, 8);
        assert!(parse_mor("(mor (pred 1 (const-one)) (pred 1 (is-even)) (S))", 8).is_err());
    }
}

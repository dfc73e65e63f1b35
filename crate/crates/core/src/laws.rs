//! Seeded law suites for the predicate and quotient categories and the
//! natural numbers object, each checked on a window.
//!
//! Every suite samples its corpus from a fixed pool of library terms and
//! their composites with a seeded generator, so a report is reproducible
//! from `(bound, seed)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exreg::{kernel_pair, quotient, relation_disagreement};
use crate::pred::{
    compose_mor, coproduct, equalizer, factor_through_equalizer, hom_check, id_mor, image_factorize, mor_disagreement,
    pred_and, pred_disagreement, pred_not, pred_or, top, bottom, PredMorphism, PredObject,
};
use crate::sexpr::parse_term;
use crate::skolem::{Evaluator, Nat, Term, Window};

/// The outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub suite: &'static str,
    pub checks: usize,
    /// Descriptions of the first violations found.
    pub violations: Vec<String>,
}

impl LawReport {
    fn new(suite: &'static str) -> LawReport {
        LawReport { suite, checks: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.violations.len() < 10 {
            self.violations.push(what());
        }
    }

    fn record_witness(&mut self, witness: Option<Vec<Nat>>, what: impl FnOnce() -> String) {
        self.record(witness.is_none(), || format!("{} at {}", what(), crate::error::fmt_vec(&witness.unwrap_or_default())));
    }
}

/// Names of the suites, in reporting order.
pub const SUITES: [&str; 7] = ["category", "boolean", "nno", "equalizer", "coproduct", "image", "quotient"];

fn term(text: &str) -> Term {
    parse_term(text).expect("corpus term parses")
}

/// Unary maps whose iterates stay small.
fn tame_unary() -> Vec<Term> {
    let mut v: Vec<Term> = ["(S)", "(P 1 1)", "(double)", "(pred)", "(half)", "(parity)", "(sg)", "(not1)", "(is_even)"]
        .iter()
        .map(|t| term(t))
        .collect();
    v.push(term("(comp (S) (S))"));
    v.push(term("(comp (monus) (tuple (P 1 1) (comp (S) (comp (S) (comp (S) (Z 1))))))"));
    v
}

fn unary_pool() -> Vec<Term> {
    let mut v = tame_unary();
    v.extend(["(tri)", "(bitlen)", "(const_one)", "(Z 1)"].iter().map(|t| term(t)));
    v
}

/// A random composite of up to three pool maps.
fn sample_map(rng: &mut ChaCha8Rng, pool: &[Term]) -> Term {
    let depth = rng.gen_range(1..=3);
    let mut t = pool.choose(rng).expect("nonempty pool").clone();
    for _ in 1..depth {
        let g = pool.choose(rng).expect("nonempty pool").clone();
        t = Term::comp(g, t).expect("unary maps compose");
    }
    t
}

fn unary_predicates() -> Vec<PredObject> {
    let raw = [
        "(is_even)",
        "(parity)",
        "(sg)",
        "(not1)",
        "(comp (leq) (tuple (P 1 1) (comp (S) (comp (S) (comp (S) (Z 1))))))",
        "(comp (eq) (tuple (P 1 1) (comp (S) (comp (S) (Z 1)))))",
        "(comp (rem) (tuple (P 1 1) (comp (S) (comp (S) (comp (S) (Z 1))))))",
    ];
    let mut v: Vec<PredObject> = raw.iter().map(|t| PredObject::booleanize(&term(t)).expect("target 1")).collect();
    v.push(top(1));
    v.push(bottom(1));
    v
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, pool: &'a [T]) -> &'a T {
    pool.choose(rng).expect("nonempty pool")
}

fn endo(t: &Term, bound: u64) -> Result<PredMorphism, Error> {
    hom_check(t, &top(1), &top(1), bound)
}

fn category(bound: u64, rng: &mut ChaCha8Rng) -> Result<LawReport, Error> {
    let mut r = LawReport::new("category");
    let pool = unary_pool();
    let id = id_mor(&top(1), bound)?;
    for _ in 0..30 {
        let f = endo(&sample_map(rng, &pool), bound)?;
        let g = endo(&sample_map(rng, &pool), bound)?;
        let h = endo(&sample_map(rng, &pool), bound)?;
        r.record_witness(mor_disagreement(&compose_mor(&id, &f, bound)?, &f, bound)?, || format!("id ∘ {}", f.carrier));
        r.record_witness(mor_disagreement(&compose_mor(&f, &id, bound)?, &f, bound)?, || format!("{} ∘ id", f.carrier));
        let left = compose_mor(&compose_mor(&h, &g, bound)?, &f, bound)?;
        let right = compose_mor(&h, &compose_mor(&g, &f, bound)?, bound)?;
        r.record_witness(mor_disagreement(&left, &right, bound)?, || {
            format!("associativity for {}, {}, {}", h.carrier, g.carrier, f.carrier)
        });
    }
    // identities on proper subobjects
    for a in unary_predicates() {
        let ida = id_mor(&a, bound)?;
        let twice = compose_mor(&ida, &ida, bound)?;
        r.record_witness(mor_disagreement(&twice, &ida, bound)?, || format!("id ∘ id on {a}"));
    }
    Ok(r)
}

fn boolean(bound: u64, rng: &mut ChaCha8Rng) -> Result<LawReport, Error> {
    let mut r = LawReport::new("boolean");
    let preds = unary_predicates();
    let (t, f) = (top(1), bottom(1));
    for _ in 0..30 {
        let a = pick(rng, &preds).clone();
        let b = pick(rng, &preds).clone();
        let c = pick(rng, &preds).clone();
        let mut law = |name: &str, x: PredObject, y: PredObject| -> Result<(), Error> {
            let w = pred_disagreement(&x, &y, bound)?;
            r.record_witness(w, || format!("{name} for {a}, {b}, {c}"));
            Ok(())
        };
        law("∧ commutative", pred_and(&a, &b)?, pred_and(&b, &a)?)?;
        law("∨ commutative", pred_or(&a, &b)?, pred_or(&b, &a)?)?;
        law("∧ associative", pred_and(&pred_and(&a, &b)?, &c)?, pred_and(&a, &pred_and(&b, &c)?)?)?;
        law("∨ associative", pred_or(&pred_or(&a, &b)?, &c)?, pred_or(&a, &pred_or(&b, &c)?)?)?;
        law(
            "distributivity",
            pred_and(&a, &pred_or(&b, &c)?)?,
            pred_or(&pred_and(&a, &b)?, &pred_and(&a, &c)?)?,
        )?;
        law("absorption", pred_and(&a, &pred_or(&a, &b)?)?, a.clone())?;
        law("∧ unit", pred_and(&a, &t)?, a.clone())?;
        law("∨ unit", pred_or(&a, &f)?, a.clone())?;
        law("complement ∧", pred_and(&a, &pred_not(&a)?)?, f.clone())?;
        law("complement ∨", pred_or(&a, &pred_not(&a)?)?, t.clone())?;
        law("De Morgan", pred_not(&pred_and(&a, &b)?)?, pred_or(&pred_not(&a)?, &pred_not(&b)?)?)?;
        law("double negation", pred_not(&pred_not(&a)?)?, a.clone())?;
    }
    Ok(r)
}

fn nno(bound: u64, rng: &mut ChaCha8Rng) -> Result<LawReport, Error> {
    let mut r = LawReport::new("nno");
    let ev = Evaluator::new();
    let tame = tame_unary();
    let mut cases: Vec<(Term, Term)> = (0..20).map(|_| (sample_map(rng, &unary_pool()), pick(rng, &tame).clone())).collect();
    // a two-dimensional state
    cases.push((term("(tuple (P 1 1) (S))"), term("(tuple (P 2 2) (P 1 2))")));
    for (a, g) in &cases {
        let rec = Term::primrec(a.clone(), g.clone())?;
        let k = a.source();
        for v in Window::new(k, bound) {
            let mut x0 = v.clone();
            x0.push(Nat::from(0u32));
            let at0 = ev.eval(&rec, &x0)?;
            r.record(at0 == ev.eval(a, &v)?, || format!("R({a}, {g})(x, 0) = a(x) at x = {v:?}"));
            let mut prev = at0;
            for n in 1..=bound {
                let mut xn = v.clone();
                xn.push(Nat::from(n));
                let now = ev.eval(&rec, &xn)?;
                let stepped = ev.eval(g, &prev)?;
                r.record(now == stepped, || format!("R({a}, {g})(x, n+1) = g(R(x, n)) at x = {v:?}, n = {}", n - 1));
                prev = now;
            }
        }
    }
    // uniqueness: terms satisfying the same equations agree with the recursor
    let known = [
        ("(P 1 1)", "(S)", "(add)"),
        ("(Z 1)", "(comp (S) (S))", "(comp (double) (P 2 2))"),
        ("(Z 1)", "(not1)", "(comp (parity) (P 2 2))"),
    ];
    for (a, g, h) in known {
        let rec = Term::primrec(term(a), term(g))?;
        let h = term(h);
        for v in Window::new(2, bound) {
            r.record(ev.eval(&rec, &v)? == ev.eval(&h, &v)?, || format!("{h} agrees with R({a}, {g}) at {v:?}"));
        }
    }
    Ok(r)
}

fn equalizers(bound: u64, rng: &mut ChaCha8Rng) -> Result<LawReport, Error> {
    let mut r = LawReport::new("equalizer");
    let pool = unary_pool();
    for _ in 0..20 {
        let f = endo(&sample_map(rng, &pool), bound)?;
        let g = endo(&sample_map(rng, &pool), bound)?;
        let (e, incl) = equalizer(&f, &g, bound)?;
        let fe = compose_mor(&f, &incl, bound)?;
        let ge = compose_mor(&g, &incl, bound)?;
        r.record_witness(mor_disagreement(&fe, &ge, bound)?, || format!("f ∘ e = g ∘ e for {}, {}", f.carrier, g.carrier));
        // every point where f and g agree factors through e
        let ev = Evaluator::new();
        for v in Window::new(1, bound) {
            if ev.eval(&f.carrier, &v)? != ev.eval(&g.carrier, &v)? {
                continue;
            }
            let h = endo(&crate::skolem::konst(&v[0], 1), bound)?;
            let factored = factor_through_equalizer(&h, &e, bound);
            r.record(factored.is_ok(), || format!("constant {} factors through the equalizer", v[0]));
            if let Ok(u) = factored {
                let back = compose_mor(&incl, &u, bound)?;
                r.record_witness(mor_disagreement(&back, &h, bound)?, || format!("e ∘ u = h for constant {}", v[0]));
            }
        }
    }
    Ok(r)
}

fn coproducts(bound: u64, rng: &mut ChaCha8Rng) -> Result<LawReport, Error> {
    let mut r = LawReport::new("coproduct");
    let preds = unary_predicates();
    let mut pairs: Vec<(PredObject, PredObject)> =
        (0..5).map(|_| (pick(rng, &preds).clone(), pick(rng, &preds).clone())).collect();
    pairs.push((pick(rng, &preds).clone(), top(2)));
    pairs.push((top(2), pick(rng, &preds).clone()));
    let small = bound.min(6);
    let ev = Evaluator::new();
    for (a, b) in pairs {
        let (sum, inl, inr) = coproduct(&a, &b, bound)?;
        let left: Vec<Vec<Nat>> = a.members(small)?.iter().map(|x| ev.eval(&inl.carrier, x)).collect::<Result<_, _>>()?;
        let right: Vec<Vec<Nat>> = b.members(small)?.iter().map(|y| ev.eval(&inr.carrier, y)).collect::<Result<_, _>>()?;
        for (i, x) in left.iter().enumerate() {
            r.record(!right.contains(x), || format!("inl and inr meet at {x:?} for {a} + {b}"));
            r.record(!left[..i].contains(x), || format!("inl is not injective at {x:?}"));
        }
        for (i, y) in right.iter().enumerate() {
            r.record(!right[..i].contains(y), || format!("inr is not injective at {y:?}"));
        }
        // the injections cover the sum
        for z in sum.members(small)? {
            r.record(left.contains(&z) || right.contains(&z), || format!("{z:?} is in neither injection for {a} + {b}"));
        }
    }
    Ok(r)
}

fn images(bound: u64, rng: &mut ChaCha8Rng) -> Result<LawReport, Error> {
    let mut r = LawReport::new("image");
    let pool = tame_unary();
    let ev = Evaluator::new();
    for _ in 0..12 {
        let f = endo(&sample_map(rng, &pool), bound)?;
        let fact = image_factorize(&f, bound)?;
        let me = compose_mor(&fact.mono, &fact.epi, bound)?;
        r.record_witness(mor_disagreement(&me, &f, bound)?, || format!("mono ∘ epi = f for {}", f.carrier));
        let es = compose_mor(&fact.epi, &fact.section, bound)?;
        let id = id_mor(&fact.image, bound)?;
        r.record_witness(mor_disagreement(&es, &id, bound)?, || format!("epi ∘ section = id for {}", f.carrier));
        let members = fact.image.members(bound)?;
        let images: Vec<Vec<Nat>> = members.iter().map(|z| ev.eval(&fact.mono.carrier, z)).collect::<Result<_, _>>()?;
        for (i, y) in images.iter().enumerate() {
            r.record(!images[..i].contains(y), || format!("mono is not injective at {:?} for {}", members[i], f.carrier));
        }
    }
    Ok(r)
}

fn relation_pool() -> Vec<PredObject> {
    let same = |f: &str| {
        let t = term(&format!("(comp (eq) (tuple (comp {f} (P 1 2)) (comp {f} (P 2 2))))"));
        PredObject::booleanize(&t).expect("target 1")
    };
    vec![
        same("(P 1 1)"),
        same("(parity)"),
        same("(comp (rem) (tuple (P 1 1) (comp (S) (comp (S) (comp (S) (Z 1))))))"),
        same("(half)"),
        same("(sg)"),
        same("(bitlen)"),
        top(2),
    ]
}

fn quotients(bound: u64) -> Result<LawReport, Error> {
    let mut r = LawReport::new("quotient");
    for rel in relation_pool() {
        let (obj, q) = quotient(&top(1), &rel, bound)?;
        let kp = kernel_pair(&q, bound)?;
        r.record_witness(relation_disagreement(&kp, &obj.rel, bound)?, || format!("kernel pair of the quotient by {rel}"));
    }
    Ok(r)
}

/// Run one suite by name.
pub fn run_suite(name: &str, bound: u64, seed: u64) -> Result<LawReport, Error> {
    let index = SUITES.iter().position(|s| *s == name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
    match name {
        "category" => category(bound, &mut rng),
        "boolean" => boolean(bound, &mut rng),
        "nno" => nno(bound, &mut rng),
        "equalizer" => equalizers(bound, &mut rng),
        "coproduct" => coproducts(bound, &mut rng),
        "image" => images(bound, &mut rng),
        _ => quotients(bound),
    }
}

/// Run every suite.
pub fn run_all(bound: u64, seed: u64) -> Result<Vec<LawReport>, Error> {
    SUITES.iter().map(|s| run_suite(s, bound, seed)).collect()
}

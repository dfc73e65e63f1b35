//! The type-theory checker against the golden corpus, derivation
//! re-validation, and the interpretation into the combinator kernel against
//! a host evaluator.

mod common;

use std::collections::HashMap;

use au_kernel::skolem::{first_disagreement, Evaluator, Window};
use au_kernel::tt::{
    self, interpret, interpret_morphism, normalize, parse_document, parse_judgment, Context, Expr, Item, Judgment,
    SynCategory, Theory, TtError, Type,
};
use common::tt::{corpus, host_eval, nat_projections, shapes, term_of, Entry, Expect, TermGen, Value};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn golden_corpus_verdicts() {
    let mut theory = Theory::empty();
    let (mut judgments, mut rejections) = (0, 0);
    for (line, entry) in corpus() {
        match entry {
            Entry::Decl(d, expect) => match (theory.extend(d.clone()), expect) {
                (Ok(t), Expect::Accept) => theory = t,
                (Err(TtError::InadmissibleDeclaration { .. }), Expect::Reject) => {}
                (r, e) => panic!("line {line}: `{d}` expected {e:?}, got {:?}", r.map(|_| ())),
            },
            Entry::Judgment(j, expect) => {
                judgments += 1;
                let result = tt::check(&j, &theory);
                match (&result, expect) {
                    (Ok(d), Expect::Accept) => {
                        tt::validate(d, &theory).unwrap_or_else(|e| panic!("line {line}: derivation invalid: {e}"));
                    }
                    (Err(TtError::RewriteBudgetExceeded(_)), _) => panic!("line {line}: undecided"),
                    (Err(_), Expect::Reject) => rejections += 1,
                    (r, e) => panic!("line {line}: `{j}` expected {e:?}, got {:?}", r.as_ref().map(|d| d.size())),
                }
            }
        }
    }
    assert!(judgments >= 60 && rejections >= 20, "{judgments} judgments, {rejections} rejections");
}

#[test]
fn diagnostics_name_the_failing_subgoal() {
    let err = tt::check(&parse_judgment("|- <succ *, 0> : Nat * Nat").unwrap(), &Theory::empty()).unwrap_err();
    match err {
        TtError::IllTyped { subgoal, .. } => assert_eq!(subgoal, "|- * : Nat"),
        other => panic!("unexpected {other}"),
    }
    let err = tt::check(&parse_judgment("x:Nat, y:Nat, p:Id(Nat, x, y) |- x = y : Nat").unwrap(), &Theory::empty())
        .unwrap_err();
    assert!(matches!(err, TtError::ReflectionUnsupported { .. }), "{err}");
    let TtError::Syntax { line, column, .. } = parse_document("type A\nconst a : A\n|- a : (A\n").unwrap_err() else {
        panic!("expected a syntax error");
    };
    assert_eq!(line, 3);
    assert!(column > 1);
}

#[test]
fn tampered_derivations_are_rejected() {
    let th = Theory::empty();
    let good = tt::check(&parse_judgment("|- natrec(0, p. succ p, 2) = 2 : Nat").unwrap(), &th).unwrap();
    tt::validate(&good, &th).unwrap();
    let mut bad = (*good).clone();
    bad.conclusion = parse_judgment("|- natrec(0, p. succ p, 2) = 3 : Nat").unwrap();
    assert!(matches!(tt::validate(&bad, &th), Err(TtError::InvalidDerivation { .. })));
    let mut pruned = (*good).clone();
    pruned.premises.clear();
    assert!(tt::validate(&pruned, &th).is_err());
}

#[test]
fn budget_exhaustion_is_undecided_not_rejected() {
    let doc = "const f : Nat -> Nat\neq x:Nat |- f(x) = f(succ x) : Nat\n|- f(0) = 0 : Nat\n";
    let items = parse_document(doc).unwrap();
    let mut theory = Theory::empty();
    let mut last = None;
    for (_, item) in items {
        match item {
            Item::Decl(d) => theory = theory.extend(d).unwrap(),
            Item::Judgment(j) => last = Some(tt::Checker::new(&theory).with_budget(500).check(&j)),
        }
    }
    assert!(matches!(last, Some(Err(TtError::RewriteBudgetExceeded(500)))));
}

fn flat(v: &Value) -> Vec<u64> {
    let mut out = Vec::new();
    v.flatten(&mut out);
    out
}

#[test]
fn closed_terms_interpret_to_their_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let th = Theory::empty();
    for _ in 0..60 {
        let mut gen = TermGen::new(&mut rng);
        let e = gen.nat(&[], 4);
        let expected = host_eval(&e, &HashMap::new());
        let j = Judgment::Term(Context::empty(), e.clone(), Type::Nat);
        let t = interpret(&j, &th).unwrap_or_else(|err| panic!("{e}: {err}"));
        let got: Vec<u64> = Evaluator::new().eval(&t, &[]).unwrap().iter().map(|n| n.to_u64().unwrap()).collect();
        assert_eq!(got, flat(&expected), "{e}");
        assert_eq!(normalize(&e, &th).unwrap().as_numeral(), Some(flat(&expected)[0]), "{e}");
    }
}

#[test]
fn open_terms_interpret_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let th = Theory::empty();
    for i in 0..30 {
        let shapes = shapes();
        let dom = shapes[i % shapes.len()].clone();
        let cod = shapes[(i / 3) % shapes.len()].clone();
        let atoms = nat_projections(Expr::var("x"), &dom);
        let mut gen = TermGen::new(&mut rng);
        let body = term_of(&mut gen, &cod, &atoms, 3);
        let j = Judgment::Term(Context::new(vec![("x".into(), dom.clone())]), body.clone(), cod.clone());
        let t = interpret(&j, &th).unwrap_or_else(|err| panic!("{j}: {err}"));
        let width = atoms.len();
        assert_eq!(t.source(), width);
        for v in Window::new(width, 4) {
            let xs: Vec<u64> = v.iter().map(|n| n.to_u64().unwrap()).collect();
            let env = HashMap::from([("x".to_string(), rebuild(&dom, &mut xs.iter().copied()))]);
            let got: Vec<u64> = Evaluator::new().eval(&t, &v).unwrap().iter().map(|n| n.to_u64().unwrap()).collect();
            assert_eq!(got, flat(&host_eval(&body, &env)), "{j} at {xs:?}");
        }
    }
}

/// A value of shape `ty` from a flat list of naturals.
fn rebuild(ty: &Type, xs: &mut impl Iterator<Item = u64>) -> Value {
    match ty {
        Type::Unit => Value::Unit,
        Type::Nat => Value::Nat(xs.next().unwrap()),
        Type::Prod(a, b) => {
            let a = rebuild(a, xs);
            Value::Pair(Box::new(a), Box::new(rebuild(b, xs)))
        }
        other => panic!("no values of {other}"),
    }
}

#[test]
fn interpretation_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let th = Theory::empty();
    let cat = SynCategory::new(&th);
    let shapes = shapes();
    for _ in 0..25 {
        let a = shapes[rng.gen_range(0..shapes.len())].clone();
        let b = shapes[rng.gen_range(0..shapes.len())].clone();
        let c = shapes[rng.gen_range(0..shapes.len())].clone();
        let mut gen = TermGen::new(&mut rng);
        let fb = term_of(&mut gen, &b, &nat_projections(Expr::var("x"), &a), 2);
        let gb = term_of(&mut gen, &c, &nat_projections(Expr::var("y"), &b), 2);
        let f = cat.morphism(a.clone(), b.clone(), "x", fb).unwrap();
        let g = cat.morphism(b.clone(), c.clone(), "y", gb).unwrap();
        let gf = cat.compose(&g, &f).unwrap();
        let lhs = interpret_morphism(&gf, &th).unwrap();
        let rhs = au_kernel::skolem::compose(&interpret_morphism(&g, &th).unwrap(), &interpret_morphism(&f, &th).unwrap())
            .unwrap();
        assert_eq!(first_disagreement(&Evaluator::new(), &lhs, &rhs, 6).unwrap(), None, "{g} after {f}");
        let id = interpret_morphism(&cat.identity(&a), &th).unwrap();
        assert_eq!(first_disagreement(&Evaluator::new(), &id, &au_kernel::skolem::identity(id.source()), 6).unwrap(), None);
        assert!(cat.equal(&cat.compose(&cat.identity(&b), &f).unwrap(), &f).unwrap());
    }
}

#[test]
fn theories_extend_the_interpretation_only_inside_the_fragment() {
    let doc = "type A\ntyeq A = Nat * Nat\nconst a : A\n|- fst a : Nat\n";
    let mut theory = Theory::empty();
    let mut judgment = None;
    for (_, item) in parse_document(doc).unwrap() {
        match item {
            Item::Decl(d) => theory = theory.extend(d).unwrap(),
            Item::Judgment(j) => judgment = Some(j),
        }
    }
    let err = interpret(&judgment.unwrap(), &theory).unwrap_err();
    assert!(matches!(err, TtError::OutsideFragment(_)), "{err}");
    let j = parse_judgment("x:Nat |- inl x : Nat + Unit").unwrap();
    assert!(matches!(interpret(&j, &Theory::empty()), Err(TtError::OutsideFragment(_))));
}

//! Decidable predicates and their limits, checked against host-side
//! set comprehensions over the window.

mod common;

use au_kernel::pred::{
    bottom, compose_mor, coproduct, equalizer, hom_check, id_mor, image_factorize, mor_disagreement, parse_mor,
    parse_pred, pred_and, pred_not, pred_or, product, pullback, top, PredMorphism, PredObject,
};
use au_kernel::skolem::library::library;
use au_kernel::skolem::{Evaluator, Nat, Term, Window};
use au_kernel::Error;
use common::nats;
use num_traits::ToPrimitive;

const BOUND: u64 = 12;

fn pred(text: &str) -> PredObject {
    parse_pred(text).unwrap()
}

fn to_u64(v: &[Nat]) -> Vec<u64> {
    v.iter().map(|x| x.to_u64().unwrap()).collect()
}

/// Window members as host vectors.
fn members(p: &PredObject, bound: u64) -> Vec<Vec<u64>> {
    p.members(bound).unwrap().iter().map(|v| to_u64(v)).collect()
}

fn comprehension(arity: usize, bound: u64, f: impl Fn(&[u64]) -> bool) -> Vec<Vec<u64>> {
    Window::new(arity, bound).map(|v| to_u64(&v)).filter(|v| f(v)).collect()
}

#[test]
fn connectives_match_host_boolean_operations() {
    let even = pred("(pred 1 (is_even))");
    let small = pred("(pred 1 (comp (leq) (tuple (P 1 1) (comp (S) (comp (S) (comp (S) (Z 1)))))))");
    assert_eq!(members(&even, BOUND), comprehension(1, BOUND, |v| v[0] % 2 == 0));
    assert_eq!(members(&small, BOUND), comprehension(1, BOUND, |v| v[0] <= 3));
    let and = pred_and(&even, &small).unwrap();
    let or = pred_or(&even, &small).unwrap();
    let not = pred_not(&even).unwrap();
    assert_eq!(members(&and, BOUND), comprehension(1, BOUND, |v| v[0] % 2 == 0 && v[0] <= 3));
    assert_eq!(members(&or, BOUND), comprehension(1, BOUND, |v| v[0] % 2 == 0 || v[0] <= 3));
    assert_eq!(members(&not, BOUND), comprehension(1, BOUND, |v| v[0] % 2 == 1));
    assert_eq!(members(&top(2), 4).len(), 25);
    assert!(members(&bottom(2), 4).is_empty());
}

#[test]
fn any_term_is_booleanized() {
    // nonzero values count as true
    let p = pred("(pred 2 (add))");
    assert_eq!(members(&p, 5), comprehension(2, 5, |v| v[0] + v[1] != 0));
    assert!(parse_pred("(pred 2 (S))").is_err());
}

#[test]
fn hom_check_reports_a_witness() {
    let nat = top(1);
    let even = pred("(pred 1 (is_even))");
    assert!(hom_check(library().get("double").unwrap(), &nat, &even, BOUND).is_ok());
    let err = hom_check(&Term::succ(), &even, &even, BOUND).unwrap_err();
    match err {
        Error::HomViolation { witness, .. } => assert_eq!(witness, nats(&[0])),
        other => panic!("unexpected {other}"),
    }
}

fn mor(text: &str) -> PredMorphism {
    parse_mor(text, BOUND).unwrap()
}

fn apply(f: &PredMorphism, v: &[u64]) -> Vec<u64> {
    to_u64(&Evaluator::new().eval(&f.carrier, &nats(v)).unwrap())
}

#[test]
fn equalizer_is_the_agreement_set() {
    let f = mor("(mor (pred 1 (const-one)) (pred 1 (const-one)) (half))");
    let g = mor("(mor (pred 1 (const-one)) (pred 1 (const-one)) (parity))");
    let (e, incl) = equalizer(&f, &g, BOUND).unwrap();
    assert_eq!(members(&e, BOUND), comprehension(1, BOUND, |v| v[0] / 2 == v[0] % 2));
    assert!(mor_disagreement(&compose_mor(&f, &incl, BOUND).unwrap(), &compose_mor(&g, &incl, BOUND).unwrap(), BOUND)
        .unwrap()
        .is_none());
}

#[test]
fn product_and_pullback_membership() {
    let even = pred("(pred 1 (is_even))");
    let odd = pred_not(&even).unwrap();
    let (prod, p1, p2) = product(&even, &odd, 6).unwrap();
    assert_eq!(members(&prod, 6), comprehension(2, 6, |v| v[0] % 2 == 0 && v[1] % 2 == 1));
    assert_eq!(apply(&p1, &[4, 5]), vec![4]);
    assert_eq!(apply(&p2, &[4, 5]), vec![5]);

    let f = mor("(mor (pred 1 (const-one)) (pred 1 (const-one)) (parity))");
    let g = mor("(mor (pred 1 (const-one)) (pred 1 (const-one)) (half))");
    let (pb, q1, q2) = pullback(&f, &g, 6).unwrap();
    assert_eq!(members(&pb, 6), comprehension(2, 6, |v| v[0] % 2 == v[1] / 2));
    let fq = compose_mor(&f, &q1, 6).unwrap();
    let gq = compose_mor(&g, &q2, 6).unwrap();
    assert!(mor_disagreement(&fq, &gq, 6).unwrap().is_none());
}

#[test]
fn coproduct_tags_and_pads() {
    let even = pred("(pred 1 (is_even))");
    let pairs = pred("(pred 2 (leq))");
    let (sum, inl, inr) = coproduct(&even, &pairs, 4).unwrap();
    assert_eq!(sum.arity(), 3);
    let expected = comprehension(3, 4, |v| match v[2] {
        0 => v[0] % 2 == 0 && v[1] == 0,
        1 => v[0] <= v[1],
        _ => false,
    });
    assert_eq!(members(&sum, 4), expected);
    assert_eq!(apply(&inl, &[6]), vec![6, 0, 0]);
    assert_eq!(apply(&inr, &[2, 3]), vec![2, 3, 1]);
}

#[test]
fn image_factorization_laws_on_several_maps() {
    let bound = 8;
    for text in [
        "(mor (pred 1 (const-one)) (pred 1 (const-one)) (half))",
        "(mor (pred 1 (is_even)) (pred 1 (const-one)) (parity))",
        "(mor (pred 2 (comp (const-one) (P 1 2))) (pred 1 (const-one)) (add))",
        "(mor (pred 1 (const-one)) (pred 2 (comp (const-one) (P 1 2))) (tuple (parity) (half)))",
    ] {
        let f = parse_mor(text, bound).unwrap();
        let fact = image_factorize(&f, bound).unwrap();
        let me = compose_mor(&fact.mono, &fact.epi, bound).unwrap();
        assert!(mor_disagreement(&me, &f, bound).unwrap().is_none(), "{text}");
        let es = compose_mor(&fact.epi, &fact.section, bound).unwrap();
        assert!(mor_disagreement(&es, &id_mor(&fact.image, bound).unwrap(), bound).unwrap().is_none(), "{text}");
        // the image projects onto the host-computed range
        let mut range: Vec<Vec<u64>> = Window::new(f.dom.arity(), bound)
            .filter(|v| f.dom.holds(&Evaluator::new(), v).unwrap())
            .map(|v| apply(&f, &to_u64(&v)))
            .collect();
        range.sort();
        range.dedup();
        let mut epi_range: Vec<Vec<u64>> = Window::new(f.dom.arity(), bound)
            .filter(|v| f.dom.holds(&Evaluator::new(), v).unwrap())
            .map(|v| {
                let mut y = apply(&fact.epi, &to_u64(&v));
                y.pop();
                y
            })
            .collect();
        epi_range.sort();
        epi_range.dedup();
        assert_eq!(range, epi_range, "{text}");
    }
}

#[test]
fn composition_checks_domains() {
    let f = mor("(mor (pred 1 (const-one)) (pred 1 (is_even)) (double))");
    let g = mor("(mor (pred 2 (comp (const-one) (P 1 2))) (pred 1 (const-one)) (add))");
    assert!(matches!(compose_mor(&g, &f, BOUND), Err(Error::DomainMismatch(_)) | Err(Error::ArityMismatch { .. })));
}

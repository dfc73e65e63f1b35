//! Equivalence relations, quotients and kernel pairs against host-side
//! relation tables.

mod common;

use au_kernel::exreg::{
    ex_hom_check, is_equivalence_relation, kernel_pair, parse_exmor, parse_exobj, quotient, relation_disagreement,
    EquivRelation, ExObject,
};
use au_kernel::pred::parse_pred;
use au_kernel::skolem::library::library;
use au_kernel::skolem::{identity, Evaluator, Term, Window};
use au_kernel::Error;
use common::nats;
use num_traits::ToPrimitive;

const BOUND: u64 = 10;

/// `(x, y) ↦ [f x = f y]` for a unary library term `f`.
fn kernel_of(f: &str) -> String {
    format!("(comp (eq) (tuple (comp ({f}) (P 1 2)) (comp ({f}) (P 2 2))))")
}

fn host_table(rel: &EquivRelation, bound: u64) -> Vec<(u64, u64)> {
    let ev = Evaluator::new();
    let mut out = Vec::new();
    for v in Window::new(2, bound) {
        if rel.related(&ev, &v[..1], &v[1..]).unwrap() {
            out.push((v[0].to_u64().unwrap(), v[1].to_u64().unwrap()));
        }
    }
    out
}

fn expected_table(bound: u64, f: impl Fn(u64, u64) -> bool) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for x in 0..=bound {
        for y in 0..=bound {
            if f(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

#[test]
fn law_checks_find_the_first_violation() {
    let nat = parse_pred("(pred 1 (const-one))").unwrap();
    for (rel, law) in [("(pred 2 (leq))", Some("symmetry")), ("(pred 2 (Z 2))", Some("reflexivity"))] {
        let r = parse_pred(rel).unwrap();
        let v = is_equivalence_relation(&nat, &r, BOUND).unwrap();
        assert_eq!(v.map(|v| v.law), law, "{rel}");
    }
    // |x - y| <= 1 is reflexive and symmetric but not transitive
    let near = parse_pred("(pred 2 (comp (leq) (tuple (comp (add) (tuple (monus) (comp (monus) (tuple (P 2 2) (P 1 2))))) (comp (S) (Z 2)))))")
        .unwrap();
    let v = is_equivalence_relation(&nat, &near, BOUND).unwrap().unwrap();
    assert_eq!(v.law, "transitivity");
    let w: Vec<u64> = v.witness.iter().map(|x| x.to_u64().unwrap()).collect();
    assert!(w[0].abs_diff(w[1]) <= 1 && w[1].abs_diff(w[2]) <= 1 && w[0].abs_diff(w[2]) > 1, "{w:?}");
    let rel = parse_pred(&format!("(pred 2 {})", kernel_of("parity"))).unwrap();
    assert!(is_equivalence_relation(&nat, &rel, BOUND).unwrap().is_none());
    assert!(matches!(EquivRelation::new(&nat, &near, BOUND), Err(Error::InvalidRelation { .. })));
}

#[test]
fn kernel_pairs_match_host_fibres() {
    let nat = "(exobj (pred 1 (const-one)) (rel 1 (eq)))";
    for (f, host) in [
        ("parity", (|x: u64, y: u64| x % 2 == y % 2) as fn(u64, u64) -> bool),
        ("half", |x, y| x / 2 == y / 2),
        ("sg", |x, y| (x == 0) == (y == 0)),
        ("S", |x, y| x == y),
    ] {
        let m = parse_exmor(&format!("(exmor {nat} {nat} (mor (pred 1 (const-one)) (pred 1 (const-one)) ({f})))"), BOUND)
            .unwrap();
        let kp = kernel_pair(&m, BOUND).unwrap();
        assert_eq!(host_table(&kp, BOUND), expected_table(BOUND, host), "{f}");
    }
}

#[test]
fn quotients_are_effective() {
    let base = parse_pred("(pred 1 (const-one))").unwrap();
    for f in ["parity", "half", "sg", "is_even"] {
        let rel = parse_pred(&format!("(pred 2 {})", kernel_of(f))).unwrap();
        let (obj, q) = quotient(&base, &rel, BOUND).unwrap();
        let kp = kernel_pair(&q, BOUND).unwrap();
        assert!(relation_disagreement(&kp, &obj.rel, BOUND).unwrap().is_none(), "{f}");
    }
}

#[test]
fn morphisms_must_preserve_the_relation() {
    let parity = parse_exobj(&format!("(exobj (pred 1 (const-one)) (rel 1 {}))", kernel_of("parity")), BOUND).unwrap();
    let discrete = ExObject::discrete(&parse_pred("(pred 1 (const-one))").unwrap());
    // the parity class map descends; the identity does not
    assert!(ex_hom_check(&parity, &discrete, library().get("parity").unwrap(), BOUND).is_ok());
    let err = ex_hom_check(&parity, &discrete, &identity(1), BOUND).unwrap_err();
    match err {
        Error::RelationNotPreserved { witness, .. } => assert_eq!(witness, nats(&[0, 2])),
        other => panic!("unexpected {other}"),
    }
    // 0 ~ 2 but double(0) != double(2)
    assert!(ex_hom_check(&parity, &discrete, library().get("double").unwrap(), BOUND).is_err());
    // any map into the codiscrete object descends
    let codiscrete =
        parse_exobj("(exobj (pred 1 (const-one)) (rel 1 (comp (const-one) (P 1 2))))", BOUND).unwrap();
    assert!(ex_hom_check(&discrete, &codiscrete, &Term::succ(), BOUND).is_ok());
}

#[test]
fn wire_format_roundtrips() {
    let text = format!("(exobj (pred 1 (is_even)) (rel 1 {}))", kernel_of("half"));
    let obj = parse_exobj(&text, BOUND).unwrap();
    let again = parse_exobj(&obj.to_sexp_string(), BOUND).unwrap();
    assert_eq!(obj.to_sexp_string(), again.to_sexp_string());
    assert!(parse_exobj("(exobj (pred 1 (const-one)) (rel 1 (leq)))", BOUND).is_err());
    assert!(parse_exobj("(exobj (pred 1 (const-one)) (rel 2 (eq)))", BOUND).is_err());
}

//! Derived arithmetic as closed combinator terms.
//!
//! Every entry is an ordinary [`Term`] built from the six formers; nothing
//! here extends the calculus. The recursor's counter is always the last
//! argument. Names accept `-` and `_` interchangeably.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::eval::{Jet, JetTable};
use super::jets;
use super::term::Term;
use crate::arith::coding;
use crate::error::Error;

fn p(i: usize, k: usize) -> Term {
    Term::proj(i, k).expect("library projection in range")
}

fn c(g: &Term, f: &Term) -> Term {
    Term::comp(g.clone(), f.clone()).expect("library composition is well formed")
}

fn tup(k: usize, parts: Vec<Term>) -> Term {
    Term::tuple(k, parts).expect("library tuple is well formed")
}

/// `g ∘ ⟨f₁ … f_n⟩`, the source taken from the first component.
fn ap(g: &Term, parts: Vec<Term>) -> Term {
    let k = parts.first().expect("at least one argument").source();
    c(g, &tup(k, parts))
}

fn rec(base: &Term, step: &Term) -> Term {
    Term::primrec(base.clone(), step.clone()).expect("library recursor is well formed")
}

/// `⟨P(1,k) … P(k,k)⟩`; for `k = 0` the empty tuple `1 → 1`.
pub fn identity(k: usize) -> Term {
    tup(k, (1..=k).map(|i| p(i, k)).collect())
}

/// The binary numeral for `n` as a closed term `1 → ℕ`.
pub fn numeral(n: &super::Nat) -> Term {
    let dbl = rec(&Term::zero(0), &c(&Term::succ(), &Term::succ()));
    let s = Term::succ();
    let mut t = Term::zero(0);
    for i in (0..n.bits()).rev() {
        t = c(&dbl, &t);
        if n.bit(i) {
            t = c(&s, &t);
        }
    }
    t
}

/// The constant `c` as a map `ℕ^k → ℕ`.
pub fn konst(value: &super::Nat, k: usize) -> Term {
    c(&numeral(value), &tup(k, Vec::new()))
}

fn konst_u(value: u64, k: usize) -> Term {
    konst(&super::Nat::from(value), k)
}

/// Classical primitive recursion `h(p, 0) = base(p)`,
/// `h(p, n+1) = step(p, n, h(p, n))`, reduced to the categorical recursor by
/// carrying parameters and counter in the state.
pub fn full_primrec(base: &Term, step: &Term) -> Result<Term, Error> {
    let k = base.source();
    if base.target() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: base.target() });
    }
    if step.source() != k + 2 {
        return Err(Error::ArityMismatch { expected: k + 2, found: step.source() });
    }
    if step.target() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: step.target() });
    }
    let mut b: Vec<Term> = (1..=k).map(|i| p(i, k)).collect();
    b.push(Term::zero(k));
    b.push(base.clone());
    let mut s: Vec<Term> = (1..=k).map(|i| p(i, k + 2)).collect();
    s.push(c(&Term::succ(), &p(k + 1, k + 2)));
    s.push(step.clone());
    let r = rec(&tup(k, b), &tup(k + 2, s));
    Ok(c(&p(k + 2, k + 2), &r))
}

/// Bounded minimization: for `pred : ℕ^(k+1) → ℕ`, the map
/// `(p, n) ↦ least j ≤ n with pred(p, j) ≠ 0`, or `n + 1` if there is none.
pub fn bounded_mu(pred: &Term) -> Result<Term, Error> {
    if pred.target() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: pred.target() });
    }
    if pred.source() == 0 {
        return Err(Error::ArityMismatch { expected: 1, found: 0 });
    }
    Ok(mu_with(pred, &sg(), &or2(), &add(), &not1()))
}

fn mu_with(pred: &Term, sg: &Term, or2: &Term, add: &Term, not1: &Term) -> Term {
    let k = pred.source() - 1;
    let w = k + 3;
    // state: parameters, candidate j, found flag, count of misses
    let hit = c(sg, &c(pred, &tup(w, (1..=k + 1).map(|i| p(i, w)).collect())));
    let flag = ap(or2, vec![p(k + 2, w), hit]);
    let mut s: Vec<Term> = (1..=k).map(|i| p(i, w)).collect();
    s.push(c(&Term::succ(), &p(k + 1, w)));
    s.push(flag.clone());
    s.push(ap(add, vec![p(w, w), c(not1, &flag)]));
    let mut b: Vec<Term> = (1..=k).map(|i| p(i, k)).collect();
    b.extend([Term::zero(k), Term::zero(k), Term::zero(k)]);
    let r = rec(&tup(k, b), &tup(w, s));
    let mut pre: Vec<Term> = (1..=k).map(|i| p(i, k + 1)).collect();
    pre.push(c(&Term::succ(), &p(k + 1, k + 1)));
    c(&p(w, w), &c(&r, &tup(k + 1, pre)))
}

/// Each entry: name, term, optional native implementation.
struct Entry {
    name: &'static str,
    term: Term,
    jet: Option<fn(&[super::Nat]) -> jets::Jetted>,
}

/// The named library.
pub struct Library {
    entries: Vec<Entry>,
    index: HashMap<String, usize>,
}

impl Library {
    /// Look up a term by name (`-` and `_` are interchangeable).
    pub fn get(&self, name: &str) -> Option<&Term> {
        let key = name.replace('-', "_");
        self.index.get(&key).map(|&i| &self.entries[i].term)
    }

    pub fn lookup(&self, name: &str) -> Result<Term, Error> {
        self.get(name).cloned().ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Entries in definition order; aliases are not repeated.
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Term)> + '_ {
        self.entries.iter().map(|e| (e.name, &e.term))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name).collect()
    }
}

const ALIASES: &[(&str, &str)] = &[
    ("iszero", "not1"),
    ("not", "not1"),
    ("min", "and2"),
    ("max", "or2"),
    ("e", "eq"),
    ("chi_even", "is_even"),
    ("dbl", "double"),
    ("unpair_left", "cantor_unpair_left"),
    ("unpair_right", "cantor_unpair_right"),
    ("numcode_prf", "numcode"),
    ("subst_prf", "subst"),
];

fn build() -> Library {
    let mut entries: Vec<Entry> = Vec::new();
    let mut put = |name: &'static str, term: Term, jet: Option<fn(&[super::Nat]) -> jets::Jetted>| {
        entries.push(Entry { name, term, jet });
    };
    let s = Term::succ();
    let z0 = Term::zero(0);

    let add = rec(&p(1, 1), &s);
    put("add", add.clone(), Some(jets::add));
    let double = rec(&z0, &c(&s, &s));
    put("double", double.clone(), Some(jets::double));
    let pred = full_primrec(&z0, &p(1, 2)).expect("pred");
    put("pred", pred.clone(), Some(jets::pred));
    let monus = rec(&p(1, 1), &pred);
    put("monus", monus.clone(), Some(jets::monus));
    let one1 = c(&s, &Term::zero(1));
    let not1 = ap(&monus, vec![one1.clone(), p(1, 1)]);
    put("not1", not1.clone(), Some(jets::not1));
    let sg = c(&not1, &not1);
    put("sg", sg.clone(), Some(jets::sg));
    let mul = full_primrec(&Term::zero(1), &ap(&add, vec![p(3, 3), p(1, 3)])).expect("mul");
    put("mul", mul.clone(), Some(jets::mul));
    let and2 = ap(&monus, vec![p(1, 2), ap(&monus, vec![p(1, 2), p(2, 2)])]);
    put("and2", and2.clone(), Some(jets::and2));
    let or2 = ap(&add, vec![p(1, 2), ap(&monus, vec![p(2, 2), p(1, 2)])]);
    put("or2", or2.clone(), Some(jets::or2));
    let xy = ap(&monus, vec![p(1, 2), p(2, 2)]);
    let yx = ap(&monus, vec![p(2, 2), p(1, 2)]);
    let eq = ap(&and2, vec![c(&not1, &xy), c(&not1, &yx)]);
    put("eq", eq.clone(), Some(jets::eq));
    let leq = c(&not1, &xy);
    put("leq", leq.clone(), Some(jets::leq));
    let ifz = ap(
        &add,
        vec![
            ap(&mul, vec![p(2, 3), c(&not1, &p(1, 3))]),
            ap(&mul, vec![p(3, 3), c(&sg, &p(1, 3))]),
        ],
    );
    put("ifz", ifz.clone(), Some(jets::ifz));
    let tri = full_primrec(&z0, &ap(&add, vec![p(2, 2), c(&s, &p(1, 2))])).expect("tri");
    put("tri", tri.clone(), Some(jets::tri));
    let cantor_pair = ap(&add, vec![c(&tri, &add), p(2, 2)]);
    put("cantor_pair", cantor_pair.clone(), Some(jets::cantor_pair));
    // w(z) = least s ≤ z with tri(s + 1) > z
    let above = ap(&monus, vec![c(&tri, &c(&s, &p(2, 2))), p(1, 2)]);
    let w = c(&mu_with(&above, &sg, &or2, &add, &not1), &tup(1, vec![p(1, 1), p(1, 1)]));
    let right = ap(&monus, vec![p(1, 1), c(&tri, &w)]);
    let left = ap(&monus, vec![w.clone(), right.clone()]);
    put("cantor_unpair_left", left, Some(jets::unpair_left));
    put("cantor_unpair_right", right, Some(jets::unpair_right));
    let parity = rec(&z0, &not1);
    put("parity", parity.clone(), Some(jets::parity));
    let is_even = c(&not1, &parity);
    put("is_even", is_even, Some(jets::is_even));
    let half = full_primrec(&z0, &ap(&add, vec![p(2, 2), c(&parity, &p(1, 2))])).expect("half");
    put("half", half, Some(jets::half));
    let pow2 = rec(&c(&s, &z0), &double);
    put("pow2", pow2.clone(), Some(jets::pow2));
    // h(m, n) = ⌊n / m⌋ for m > 0, by counting multiples reached
    let bump = ap(
        &and2,
        vec![
            c(&sg, &p(1, 3)),
            ap(&eq, vec![ap(&mul, vec![p(1, 3), c(&s, &p(3, 3))]), c(&s, &p(2, 3))]),
        ],
    );
    let h = full_primrec(&Term::zero(1), &ap(&add, vec![p(3, 3), bump])).expect("div");
    let div = ap(&h, vec![p(2, 2), p(1, 2)]);
    put("div", div.clone(), Some(jets::div));
    let rem = ap(&monus, vec![p(1, 2), ap(&mul, vec![p(2, 2), div.clone()])]);
    put("rem", rem, Some(jets::rem));
    let exceeds = ap(&monus, vec![c(&pow2, &p(2, 2)), p(1, 2)]);
    let bitlen = c(&mu_with(&exceeds, &sg, &or2, &add, &not1), &tup(1, vec![p(1, 1), p(1, 1)]));
    put("bitlen", bitlen.clone(), Some(jets::bitlen));

    let cpair = cpair_term(&add, &mul, &monus, &pred, &double, &pow2, &bitlen);
    put("cpair", cpair.clone(), Some(jets::cpair));
    let numcode = numcode_term(&cpair, &double, &ifz, &parity, &div, &pow2, &monus, &bitlen);
    put("numcode", numcode.clone(), Some(jets::numcode));
    let subst = ap(
        &cpair,
        vec![konst_u(3, 2), ap(&cpair, vec![p(1, 2), c(&numcode, &p(2, 2))])],
    );
    put("subst", subst, Some(jets::subst));
    put("const_one", konst_u(1, 1), None);
    put("const_zero", Term::zero(1), None);
    put("identity", identity(1), None);

    let mut index = HashMap::new();
    for (i, e) in entries.iter().enumerate() {
        index.insert(e.name.to_string(), i);
    }
    for (alias, target) in ALIASES {
        let i = index[*target];
        index.insert(alias.to_string(), i);
    }
    Library { entries, index }
}

/// `cpair(x, y)` written with context extension: each intermediate value is
/// appended as a new coordinate.
fn cpair_term(
    add: &Term,
    mul: &Term,
    monus: &Term,
    pred: &Term,
    double: &Term,
    pow2: &Term,
    bitlen: &Term,
) -> Term {
    let s = Term::succ();
    // extends a context of width k by one coordinate computed by t
    let ext = |k: usize, t: Term| -> Term {
        let mut parts: Vec<Term> = (1..=k).map(|i| p(i, k)).collect();
        parts.push(t);
        tup(k, parts)
    };
    // (x, y) ↦ (x, y, ℓ)
    let e1 = ext(2, c(bitlen, &p(1, 2)));
    // ↦ (x, y, ℓ, m)
    let e2 = ext(3, c(pred, &c(bitlen, &c(&s, &p(3, 3)))));
    // ↦ (x, y, ℓ, m, 2^m)
    let e3 = ext(4, c(pow2, &p(4, 4)));
    // ↦ (…, r)
    let e4 = ext(5, ap(monus, vec![c(&s, &p(3, 5)), p(5, 5)]));
    // ↦ (…, h)
    let e5 = ext(6, c(&s, &c(double, &p(4, 6))));
    let k = 7;
    let header = ap(add, vec![c(pred, &p(5, k)), ap(mul, vec![p(6, k), c(double, &p(5, k))])]);
    let xs = ap(mul, vec![p(1, k), c(pow2, &p(7, k))]);
    let ys = ap(mul, vec![p(2, k), c(pow2, &ap(add, vec![p(7, k), p(3, k)]))]);
    let body = ap(add, vec![header, ap(add, vec![xs, ys])]);
    c(&body, &c(&e5, &c(&e4, &c(&e3, &c(&e2, &e1)))))
}

/// The code of the numeral for `n`, built from the most significant bit
/// down: state `(n, j, acc)`, one step per bit.
#[allow(clippy::too_many_arguments)]
fn numcode_term(
    cpair: &Term,
    double: &Term,
    ifz: &Term,
    parity: &Term,
    div: &Term,
    pow2: &Term,
    monus: &Term,
    bitlen: &Term,
) -> Term {
    let s = Term::succ();
    let c_dbl = coding::encode(double);
    let comp_tag = konst_u(3, 3);
    // a ↦ code of Comp(DBL, a), as a map out of the state
    let acc = p(3, 3);
    let even = ap(cpair, vec![comp_tag.clone(), ap(cpair, vec![konst(&c_dbl, 3), acc])]);
    let succ_code = coding::encode(&s);
    let odd = ap(cpair, vec![comp_tag, ap(cpair, vec![konst(&succ_code, 3), even.clone()])]);
    let shift = ap(monus, vec![c(bitlen, &p(1, 3)), c(&s, &p(2, 3))]);
    let bit = c(parity, &ap(div, vec![p(1, 3), c(pow2, &shift)]));
    let step = tup(3, vec![p(1, 3), c(&s, &p(2, 3)), ap(ifz, vec![bit, even, odd])]);
    let base = tup(1, vec![p(1, 1), Term::zero(1), Term::zero(1)]);
    let r = rec(&base, &step);
    c(&p(3, 3), &c(&r, &tup(1, vec![p(1, 1), bitlen.clone()])))
}

static LIBRARY: OnceLock<Library> = OnceLock::new();
static JETS: OnceLock<JetTable> = OnceLock::new();

pub fn library() -> &'static Library {
    LIBRARY.get_or_init(build)
}

pub(crate) fn jet_table() -> &'static JetTable {
    JETS.get_or_init(|| {
        let lib = library();
        JetTable::new(
            lib.entries
                .iter()
                .filter_map(|e| e.jet.map(|run| Jet { name: e.name, term: e.term.clone(), run }))
                .collect(),
        )
    })
}

macro_rules! accessors {
    ($($(#[$m:meta])* $f:ident => $name:literal;)*) => {
        $( $(#[$m])* pub fn $f() -> Term { library().get($name).expect($name).clone() } )*
    };
}

accessors! {
    /// `(x, n) ↦ x + n`.
    add => "add";
    /// `n ↦ 2n`.
    double => "double";
    pred => "pred";
    /// Truncated subtraction `(x, y) ↦ x ∸ y`.
    monus => "monus";
    mul => "mul";
    /// `x ↦ 1 ∸ x`; negation on {0, 1}, zero test on ℕ.
    not1 => "not1";
    /// Sign: `x ↦ min(x, 1)`.
    sg => "sg";
    /// `min`, conjunction on {0, 1}.
    and2 => "and2";
    /// `max`, disjunction on {0, 1}.
    or2 => "or2";
    /// Equality characteristic `E`.
    eq => "eq";
    leq => "leq";
    /// `(c, a, b) ↦ a` if `c = 0`, else `b`.
    ifz => "ifz";
    /// Triangular numbers `n(n+1)/2`.
    tri => "tri";
    cantor_pair => "cantor_pair";
    cantor_unpair_left => "cantor_unpair_left";
    cantor_unpair_right => "cantor_unpair_right";
    parity => "parity";
    is_even => "is_even";
    half => "half";
    /// `(x, m) ↦ ⌊x / m⌋`, with `⌊x / 0⌋ = 0`.
    div => "div";
    /// `(x, m) ↦ x mod m`, with `x mod 0 = x`.
    rem => "rem";
    pow2 => "pow2";
    /// Number of binary digits; `bitlen(0) = 0`.
    bitlen => "bitlen";
    /// The pairing function of the Gödel numbering.
    cpair => "cpair";
    /// `n ↦` code of the numeral for `n`.
    numcode_prf => "numcode";
    /// `(φ, n) ↦` code of `Comp(decode φ, numeral n)`.
    subst_prf => "subst";
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skolem::eval::{eval_scalar, Evaluator};
    use crate::skolem::nats;

    #[test]
    fn arities() {
        for (name, t) in library().iter() {
            assert_eq!(t.target(), 1, "{name}");
        }
        assert_eq!(add().source(), 2);
        assert_eq!(ifz().source(), 3);
        assert_eq!(numcode_prf().source(), 1);
        assert_eq!(subst_prf().source(), 2);
    }

    #[test]
    fn names_with_dashes_and_aliases() {
        let lib = library();
        assert!(lib.get("const-one").is_some());
        assert!(lib.get("cantor-unpair-left").is_some());
        assert_eq!(lib.get("iszero"), lib.get("not1"));
        assert!(matches!(lib.lookup("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn spot_values() {
        assert_eq!(eval_scalar(&monus(), &[5, 3]).unwrap(), 2u32.into());
        assert_eq!(eval_scalar(&monus(), &[3, 5]).unwrap(), 0u32.into());
        assert_eq!(eval_scalar(&eq(), &[3, 3]).unwrap(), 1u32.into());
        assert_eq!(eval_scalar(&eq(), &[3, 4]).unwrap(), 0u32.into());
        assert_eq!(eval_scalar(&cantor_pair(), &[1, 2]).unwrap(), 8u32.into());
    }

    #[test]
    fn numerals() {
        for n in 0..40u64 {
            let t = numeral(&n.into());
            assert_eq!(t.source(), 0);
            let v = Evaluator::new().without_jets().eval(&t, &[]).unwrap();
            assert_eq!(v, nats(&[n]));
        }
    }

    #[test]
    fn bounded_mu_square() {
        let sq = ap(&mul(), vec![p(1, 1), p(1, 1)]);
        let ge10 = c(&sg(), &ap(&monus(), vec![sq, konst_u(9, 1)]));
        let mu = bounded_mu(&ge10).unwrap();
        assert_eq!(eval_scalar(&mu, &[5]).unwrap(), 4u32.into());
        assert_eq!(eval_scalar(&mu, &[2]).unwrap(), 3u32.into());
    }

    #[test]
    fn full_primrec_rejects_bad_arities() {
        assert!(full_primrec(&Term::zero(0), &p(1, 3)).is_err());
    }
}

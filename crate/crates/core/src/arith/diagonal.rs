//! Self-reference at the level of codes.
//!
//! A *sentence* is a code whose term is `1 → ℕ`; a *formula* is a code whose
//! term is `ℕ → ℕ`. Substituting the numeral for `n` into a formula is a
//! primitive recursive operation on codes ([`library::subst_prf`]), which is
//! what makes the diagonal construction go through. Reading off the value
//! of a sentence ([`sem_eval_sentence`]) is deliberately host-level only: no
//! primitive recursive term evaluates all sentences.
//!
//! The diagonal lemma is realized at the level of truth values: for a
//! transformer `T : ℕ → ℕ` the sentence `G` evaluates to `T(⌜G⌝)`. The
//! provability version has no decidable counterpart.

use num_traits::{One, Zero};

use super::coding::{decode, encode, subst_code};
use crate::error::Error;
use crate::skolem::library::{self, library};
use crate::skolem::{Evaluator, Nat, Term, Window};

fn check_unary(t: &Term) -> Result<(), Error> {
    if t.source() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: t.source() });
    }
    if t.target() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: t.target() });
    }
    Ok(())
}

/// Does the code name a term `1 → ℕ`?
pub fn is_sentence_code(code: &Nat) -> bool {
    let t = decode(code);
    t.source() == 0 && t.target() == 1
}

/// Does the code name a term `ℕ → ℕ`?
pub fn is_formula_code(code: &Nat) -> bool {
    check_unary(&decode(code)).is_ok()
}

/// The code of `Comp(decode φ, numeral n)`; `φ` must be a formula code.
pub fn subst_num(phi: &Nat, n: &Nat) -> Result<Nat, Error> {
    check_unary(&decode(phi))?;
    Ok(subst_code(phi, n))
}

/// The value named by a sentence code, with the default evaluator.
pub fn sem_eval_sentence(code: &Nat) -> Result<Nat, Error> {
    sem_eval_sentence_with(&Evaluator::new(), code)
}

pub fn sem_eval_sentence_with(ev: &Evaluator, code: &Nat) -> Result<Nat, Error> {
    let t = decode(code);
    if t.source() != 0 {
        return Err(Error::ArityMismatch { expected: 0, found: t.source() });
    }
    if t.target() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: t.target() });
    }
    Ok(ev.eval(&t, &[])?.remove(0))
}

fn eval_unary(ev: &Evaluator, t: &Term, x: &Nat) -> Result<Nat, Error> {
    Ok(ev.eval(t, std::slice::from_ref(x))?.remove(0))
}

/// Checks that `t` is `{0, 1}`-valued on `0..=bound`.
pub fn check_boolean_on_window(t: &Term, bound: u64) -> Result<(), Error> {
    check_unary(t)?;
    let ev = Evaluator::new();
    for v in Window::new(1, bound) {
        let value = eval_unary(&ev, t, &v[0])?;
        if value > Nat::one() {
            return Err(Error::NotBooleanOnWindow { input: v[0].clone(), value });
        }
    }
    Ok(())
}

/// The result of the diagonal construction for a transformer `T`.
#[derive(Debug, Clone)]
pub struct FixedPoint {
    /// `φ = T ∘ subst_prf ∘ Δ`.
    pub formula: Term,
    /// `d = ⌜φ⌝`.
    pub formula_code: Nat,
    /// `⌜G⌝ = subst(d, d)`, the code of `φ ∘ numeral(d)`.
    pub sentence: Nat,
}

/// The diagonal sentence for `T`, without the boolean pre-check.
pub fn diagonal_fixed_point_unchecked(t: &Term) -> Result<FixedPoint, Error> {
    check_unary(t)?;
    let p11 = Term::proj(1, 1)?;
    let delta = Term::tuple(1, vec![p11.clone(), p11])?;
    let formula = Term::comp(t.clone(), Term::comp(library::subst_prf(), delta)?)?;
    let formula_code = encode(&formula);
    let sentence = subst_code(&formula_code, &formula_code);
    Ok(FixedPoint { formula, formula_code, sentence })
}

/// The diagonal sentence `G` for a transformer `T` that is boolean-valued
/// on `0..=bound`: `G` evaluates to `T(⌜G⌝)`.
pub fn diagonal_fixed_point(t: &Term, bound: u64) -> Result<FixedPoint, Error> {
    check_boolean_on_window(t, bound)?;
    diagonal_fixed_point_unchecked(t)
}

/// Both sides of the fixed-point equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointCheck {
    /// The value of the sentence `G`, by decoding and evaluating it.
    pub lhs: Nat,
    /// `T(⌜G⌝)`.
    pub rhs: Nat,
}

impl FixedPointCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluate both sides. The sentence is decoded from its code and evaluated
/// with the substitution term unfolded, so the arithmetized substitution is
/// exercised rather than replaced by host code.
pub fn verify_fixed_point(t: &Term, fp: &FixedPoint) -> Result<FixedPointCheck, Error> {
    let lhs = sem_eval_sentence_with(&Evaluator::new().without_jet("subst"), &fp.sentence)?;
    let rhs = eval_unary(&Evaluator::new(), t, &fp.sentence)?;
    Ok(FixedPointCheck { lhs, rhs })
}

/// A sentence defeating a candidate truth predicate.
#[derive(Debug, Clone)]
pub struct TarskiWitness {
    pub fixed_point: FixedPoint,
    /// `Tr(⌜G⌝)`.
    pub claimed: Nat,
    /// The actual value of `G`.
    pub actual: Nat,
}

fn tarski(tr: &Term, bound: Option<u64>) -> Result<TarskiWitness, Error> {
    check_unary(tr)?;
    if let Some(b) = bound {
        check_boolean_on_window(tr, b)?;
    }
    let liar = Term::comp(library::not1(), tr.clone())?;
    let fixed_point = diagonal_fixed_point_unchecked(&liar)?;
    let claimed = eval_unary(&Evaluator::new(), tr, &fixed_point.sentence)?;
    let actual = sem_eval_sentence_with(&Evaluator::new().without_jet("subst"), &fixed_point.sentence)?;
    Ok(TarskiWitness { fixed_point, claimed, actual })
}

/// Diagonalize `¬ ∘ Tr`. The resulting sentence's value is `1 ∸ Tr(⌜G⌝)`,
/// so `Tr` misjudges it.
pub fn truth_undefinability_witness(tr: &Term, bound: u64) -> Result<TarskiWitness, Error> {
    tarski(tr, Some(bound))
}

pub fn truth_undefinability_witness_unchecked(tr: &Term) -> Result<TarskiWitness, Error> {
    tarski(tr, None)
}

/// One row of the diagonal escape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeRow {
    pub index: usize,
    pub code: Nat,
    /// `row_i(i)`.
    pub row_value: Nat,
    /// `d_i = 1 ∸ row_i(i)`.
    pub diagonal: Nat,
}

/// Evaluate the diagonal `d_i = 1 ∸ row_i(i)` against a table of formula
/// codes. The diagonal differs from every row at the row's own index.
pub fn cantor_escape(table: &[Nat]) -> Result<Vec<EscapeRow>, Error> {
    let ev = Evaluator::new();
    table
        .iter()
        .enumerate()
        .map(|(i, code)| {
            let t = decode(code);
            check_unary(&t)?;
            let row_value = eval_unary(&ev, &t, &Nat::from(i))?;
            let diagonal = if row_value.is_zero() { Nat::one() } else { Nat::zero() };
            Ok(EscapeRow { index: i, code: code.clone(), row_value, diagonal })
        })
        .collect()
}

/// The `k` smallest codes naming terms `ℕ → ℕ`.
pub fn first_unary_codes(k: usize) -> Vec<Nat> {
    let mut out = Vec::with_capacity(k);
    let mut c = Nat::zero();
    while out.len() < k {
        if is_formula_code(&c) {
            out.push(c.clone());
        }
        c += 1u32;
    }
    out
}

/// Codes of the library's unary terms, for the checks that no library term
/// acts as a sentence evaluator.
pub fn library_unary_terms() -> Vec<(&'static str, Term)> {
    library()
        .iter()
        .filter(|(_, t)| t.source() == 1 && t.target() == 1)
        .map(|(n, t)| (n, t.clone()))
        .collect()
}

//! The initial Skolem theory: objects `ℕ^k`, combinator terms as morphisms,
//! the standard evaluator and a library of derived arithmetic.

mod eval;
mod jets;
pub mod library;
mod term;
mod window;

pub use eval::{eval, eval_scalar, jet_names, nats, Evaluator};
pub use jets::cantor_unpair;
pub use library::{bounded_mu, full_primrec, identity, konst, numeral};
pub use term::{structural_eq, Kind, Nat, SkObject, Term};
pub use window::{ext_eq_window, first_disagreement, Window, DEFAULT_WINDOW};


use crate::error::Error;

/// `g ∘ f`. No normalization is performed.
pub fn compose(g: &Term, f: &Term) -> Result<Term, Error> {
    Term::comp(g.clone(), f.clone())
}

/// Source object of a term.
pub fn source(t: &Term) -> SkObject {
    t.source_object()
}

/// Target object of a term.
pub fn target(t: &Term) -> SkObject {
    t.target_object()
}

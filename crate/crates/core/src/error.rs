use thiserror::Error;

use crate::skolem::Nat;

/// Errors raised by the combinator kernel, the predicate and quotient
/// categories and the arithmetization layer. The type theory has its own
/// error type, [`crate::tt::TtError`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("ill-formed term: {0}")]
    IllFormed(String),

    #[error("evaluation exceeded its budget of {0} steps")]
    OutOfFuel(u64),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown library term `{0}`")]
    UnknownName(String),

    #[error("morphism condition violated at {}", fmt_vec(.witness))]
    HomViolation { witness: Vec<Nat> },

    #[error("domain/codomain mismatch: {0}")]
    DomainMismatch(String),

    #[error("not an equivalence relation: {law} fails at {}", fmt_vec(.witness))]
    InvalidRelation { law: &'static str, witness: Vec<Nat> },

    #[error("relation not preserved at {}", fmt_vec(.witness))]
    RelationNotPreserved { witness: Vec<Nat> },

    #[error("value too large to represent: {0}")]
    ValueTooLarge(String),

    #[error("transformer is not boolean on the window: value {value} at input {input}")]
    NotBooleanOnWindow { input: Nat, value: Nat },
}

pub(crate) fn fmt_vec(v: &[Nat]) -> String {
    let inner: Vec<String> = v.iter().map(|n| n.to_string()).collect();
    format!("({})", inner.join(", "))
}

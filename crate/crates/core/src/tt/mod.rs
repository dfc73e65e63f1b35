//! A checker for the arithmetic type theory: `Unit`, `Nat` with `natrec`,
//! binary products and sums, and extensional identity types, extended by
//! theories of declared types, constants and equations.
//!
//! [`parse`] reads judgments and declarations, [`check`] produces
//! derivation trees that [`check::validate`] re-checks node by node,
//! [`syncat`] views a theory as its syntactic category, and [`interpret`]
//! sends the `Unit`/`Nat`/product fragment to combinator terms.

pub mod check;
pub mod interpret;
pub mod normalize;
pub mod parse;
pub mod syncat;
pub mod syntax;
pub mod theory;

use thiserror::Error;

pub use check::{check, check_eq, validate, Checker, Derivation, Rule};
pub use interpret::{interpret, interpret_morphism, interpret_term, width};
pub use normalize::{normalize, Normalizer, DEFAULT_BUDGET};
pub use parse::{parse_decl, parse_document, parse_judgment, parse_term, parse_type, Item};
pub use syncat::{SynCategory, SynMorphism};
pub use syntax::{alpha_eq, alpha_eq_type, Context, Expr, Judgment, Type};
pub use theory::{theory_extend, Decl, Theory};

/// Errors of the type theory layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TtError {
    #[error("syntax error at line {line}, column {column}: expected {}", .expected.join(" or "))]
    Syntax { line: usize, column: usize, expected: Vec<String> },

    #[error("cannot derive `{subgoal}`: {reason}")]
    IllTyped { subgoal: String, reason: String },

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("rewrite budget of {0} steps exceeded")]
    RewriteBudgetExceeded(u64),

    #[error("inadmissible declaration `{decl}`: {reason}")]
    InadmissibleDeclaration { decl: String, reason: String },

    #[error("equality reflection from `{hypothesis}` is not supported; cannot derive `{subgoal}`")]
    ReflectionUnsupported { subgoal: String, hypothesis: String },

    #[error("outside the interpretable fragment: {0}")]
    OutsideFragment(String),

    #[error("invalid derivation: rule {rule} at `{conclusion}`: {reason}")]
    InvalidDerivation { rule: String, conclusion: String, reason: String },

    #[error(transparent)]
    Kernel(#[from] crate::Error),
}

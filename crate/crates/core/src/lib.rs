//! An executable kernel for the initial arithmetic universe.
//!
//! * [`skolem`]: primitive recursive combinator terms, their evaluator and a
//!   library of derived arithmetic.
//! * [`sexpr`]: the s-expression syntax shared by every layer.
//! * [`pred`]: the category of decidable predicates, with finite limits,
//!   coproducts and split image factorization.
//! * [`exreg`]: quotients of predicates by decidable equivalence relations.
//! * [`arith`]: Gödel numbering, arithmetized substitution and the
//!   diagonal constructions.
//! * [`tt`]: a checker for the arithmetic type theory and its interpretation
//!   into combinator terms.
//! * [`laws`]: windowed checks of the categorical laws, grouped in suites.
//!
//! Universal properties are `Π₁` statements; they are checked on finite
//! windows of inputs, and every such check takes its bound explicitly.

pub mod arith;
pub mod error;
pub mod exreg;
pub mod laws;
pub mod pred;
pub mod sexpr;
pub mod skolem;
pub mod tt;

pub use error::Error;

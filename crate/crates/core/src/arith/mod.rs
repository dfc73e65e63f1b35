//! Gödel numbering, arithmetized substitution and the diagonal
//! constructions built on them.

pub mod coding;
pub mod diagonal;

pub use coding::{cpair, cunpair, decode, encode, numcode, MAX_DECODE_ARITY};
pub use diagonal::{
    cantor_escape, diagonal_fixed_point, diagonal_fixed_point_unchecked, first_unary_codes,
    is_formula_code, is_sentence_code, sem_eval_sentence, subst_num, truth_undefinability_witness,
    truth_undefinability_witness_unchecked, verify_fixed_point, EscapeRow, FixedPoint,
    FixedPointCheck, TarskiWitness,
};

//! Finite windows `{0..=bound}^k` and window-extensional equality.
//!
//! Agreement on a window is evidence, not proof: extensional equality of
//! primitive recursive functions is undecidable.

use super::eval::Evaluator;
use super::term::{Nat, Term};
use crate::error::Error;

/// Default bound for window checks.
pub const DEFAULT_WINDOW: u64 = 15;

/// All vectors of length `k` with entries in `0..=bound`, in lexicographic
/// order (first coordinate most significant).
#[derive(Debug, Clone)]
pub struct Window {
    bound: u64,
    current: Option<Vec<u64>>,
}

impl Window {
    pub fn new(k: usize, bound: u64) -> Window {
        Window { bound, current: Some(vec![0; k]) }
    }
}

impl Iterator for Window {
    type Item = Vec<Nat>;

    fn next(&mut self) -> Option<Vec<Nat>> {
        let cur = self.current.as_mut()?;
        let out = cur.iter().map(|&v| Nat::from(v)).collect();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.bound {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// First window point (lexicographically) where `t` and `u` disagree.
pub fn first_disagreement(
    ev: &Evaluator,
    t: &Term,
    u: &Term,
    bound: u64,
) -> Result<Option<Vec<Nat>>, Error> {
    if t.source() != u.source() {
        return Err(Error::ArityMismatch { expected: t.source(), found: u.source() });
    }
    if t.target() != u.target() {
        return Err(Error::ArityMismatch { expected: t.target(), found: u.target() });
    }
    for v in Window::new(t.source(), bound) {
        if ev.eval(t, &v)? != ev.eval(u, &v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// `true` iff `t` and `u` agree on every input with entries `≤ bound`.
pub fn ext_eq_window(t: &Term, u: &Term, bound: u64) -> Result<bool, Error> {
    Ok(first_disagreement(&Evaluator::new(), t, u, bound)?.is_none())
}

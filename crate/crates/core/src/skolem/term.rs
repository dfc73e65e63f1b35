//! Variable-free combinator terms denoting morphisms `ℕ^k → ℕ^r`.
//!
//! Terms are immutable, reference counted and arity-checked at construction,
//! so every value of [`Term`] is well formed. Each node caches its source and
//! target arity, its AST size and a structural hash.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::Error;

/// Arbitrary-precision natural number.
pub type Nat = num_bigint::BigUint;

/// An object `ℕ^k` of the Skolem category. `arity == 0` is the terminal object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkObject {
    pub arity: usize,
}

impl SkObject {
    pub fn new(arity: usize) -> Self {
        SkObject { arity }
    }
}

impl fmt::Display for SkObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.arity {
            0 => write!(f, "1"),
            1 => write!(f, "N"),
            k => write!(f, "N^{k}"),
        }
    }
}

/// A primitive recursive algorithm, as an AST.
#[derive(Clone)]
pub struct Term(Arc<Node>);

struct Node {
    kind: Kind,
    source: usize,
    target: usize,
    hash: u64,
    size: usize,
    depth: usize,
}

/// The six term formers.
#[derive(Clone)]
pub enum Kind {
    /// `Z(k) : ℕ^k → ℕ`, constantly zero.
    Zero(usize),
    /// `S : ℕ → ℕ`.
    Succ,
    /// `P(i, k) : ℕ^k → ℕ`, 1-based.
    Proj { index: usize, arity: usize },
    /// `⟨t₁ … t_r⟩ : ℕ^k → ℕ^(Σ targets)`. The source is stored so that the
    /// empty tuple `ℕ^k → 1` is expressible.
    Tuple { source: usize, parts: Vec<Term> },
    /// `outer ∘ inner`.
    Comp { outer: Term, inner: Term },
    /// The parametrized recursor: with `base : ℕ^k → ℕ^r` and
    /// `step : ℕ^r → ℕ^r`, a map `ℕ^(k+1) → ℕ^r` whose last argument is the
    /// iteration counter.
    PrimRec { base: Term, step: Term },
}

const TAG_ZERO: u64 = 0x5a45_524f;
const TAG_SUCC: u64 = 0x5355_4343;
const TAG_PROJ: u64 = 0x5052_4f4a;
const TAG_TUPLE: u64 = 0x5455_504c;
const TAG_COMP: u64 = 0x434f_4d50;
const TAG_REC: u64 = 0x5245_4355;

fn mix(h: u64, v: u64) -> u64 {
    let mut z = h ^ v.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Term {
    fn from_kind(kind: Kind, source: usize, target: usize) -> Term {
        let (hash, size, depth) = match &kind {
            Kind::Zero(k) => (mix(TAG_ZERO, *k as u64), 1, 1),
            Kind::Succ => (mix(TAG_SUCC, 0), 1, 1),
            Kind::Proj { index, arity } => {
                (mix(mix(TAG_PROJ, *index as u64), *arity as u64), 1, 1)
            }
            Kind::Tuple { source, parts } => {
                let mut h = mix(mix(TAG_TUPLE, *source as u64), parts.len() as u64);
                let mut size = 1usize;
                let mut depth = 0usize;
                for p in parts {
                    h = mix(h, p.0.hash);
                    size = size.saturating_add(p.0.size);
                    depth = depth.max(p.0.depth);
                }
                (h, size, depth + 1)
            }
            Kind::Comp { outer, inner } => (
                mix(mix(TAG_COMP, outer.0.hash), inner.0.hash),
                1usize.saturating_add(outer.0.size).saturating_add(inner.0.size),
                1 + outer.0.depth.max(inner.0.depth),
            ),
            Kind::PrimRec { base, step } => (
                mix(mix(TAG_REC, base.0.hash), step.0.hash),
                1usize.saturating_add(base.0.size).saturating_add(step.0.size),
                1 + base.0.depth.max(step.0.depth),
            ),
        };
        Term(Arc::new(Node { kind, source, target, hash, size, depth }))
    }

    /// `Z(k)`.
    pub fn zero(source: usize) -> Term {
        Term::from_kind(Kind::Zero(source), source, 1)
    }

    /// `S`.
    pub fn succ() -> Term {
        Term::from_kind(Kind::Succ, 1, 1)
    }

    /// `P(i, k)`, requiring `1 ≤ i ≤ k`.
    pub fn proj(index: usize, arity: usize) -> Result<Term, Error> {
        if index == 0 || index > arity {
            return Err(Error::IllFormed(format!(
                "projection index {index} out of range for arity {arity}"
            )));
        }
        Ok(Term::from_kind(Kind::Proj { index, arity }, arity, 1))
    }

    /// A tuple with common source `source`. Every component must have that source.
    pub fn tuple(source: usize, parts: Vec<Term>) -> Result<Term, Error> {
        let mut target = 0usize;
        for p in &parts {
            if p.source() != source {
                return Err(Error::ArityMismatch { expected: source, found: p.source() });
            }
            target += p.target();
        }
        Ok(Term::from_kind(Kind::Tuple { source, parts }, source, target))
    }

    /// A tuple whose source is taken from its first component.
    pub fn tuple_of(parts: Vec<Term>) -> Result<Term, Error> {
        match parts.first() {
            Some(first) => {
                let source = first.source();
                Term::tuple(source, parts)
            }
            None => Err(Error::IllFormed("empty tuple needs an explicit source arity".into())),
        }
    }

    /// `outer ∘ inner`; no normalization is performed.
    pub fn comp(outer: Term, inner: Term) -> Result<Term, Error> {
        if inner.target() != outer.source() {
            return Err(Error::ArityMismatch { expected: outer.source(), found: inner.target() });
        }
        let (source, target) = (inner.source(), outer.target());
        Ok(Term::from_kind(Kind::Comp { outer, inner }, source, target))
    }

    /// The categorical recursor `R(base, step)`.
    pub fn primrec(base: Term, step: Term) -> Result<Term, Error> {
        if step.source() != step.target() {
            return Err(Error::ArityMismatch { expected: step.source(), found: step.target() });
        }
        if base.target() != step.source() {
            return Err(Error::ArityMismatch { expected: step.source(), found: base.target() });
        }
        let (source, target) = (base.source() + 1, base.target());
        Ok(Term::from_kind(Kind::PrimRec { base, step }, source, target))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn source(&self) -> usize {
        self.0.source
    }

    pub fn target(&self) -> usize {
        self.0.target
    }

    pub fn source_object(&self) -> SkObject {
        SkObject::new(self.0.source)
    }

    pub fn target_object(&self) -> SkObject {
        SkObject::new(self.0.target)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn depth(&self) -> usize {
        self.0.depth
    }

    pub fn structural_hash(&self) -> u64 {
        self.0.hash
    }

    /// Address of the shared node; only meaningful while `self` is alive.
    pub(crate) fn node_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Direct subterms in left-to-right order.
    pub fn children(&self) -> Vec<&Term> {
        match self.kind() {
            Kind::Zero(_) | Kind::Succ | Kind::Proj { .. } => Vec::new(),
            Kind::Tuple { parts, .. } => parts.iter().collect(),
            Kind::Comp { outer, inner } => vec![outer, inner],
            Kind::PrimRec { base, step } => vec![base, step],
        }
    }
}

/// Node-for-node identity of the two ASTs (intensional equality).
pub fn structural_eq(a: &Term, b: &Term) -> bool {
    let mut stack = vec![(a, b)];
    while let Some((x, y)) = stack.pop() {
        if x.ptr_eq(y) {
            continue;
        }
        if x.0.hash != y.0.hash || x.0.size != y.0.size {
            return false;
        }
        match (x.kind(), y.kind()) {
            (Kind::Zero(k1), Kind::Zero(k2)) if k1 == k2 => {}
            (Kind::Succ, Kind::Succ) => {}
            (Kind::Proj { index: i1, arity: k1 }, Kind::Proj { index: i2, arity: k2 })
                if i1 == i2 && k1 == k2 => {}
            (Kind::Tuple { source: s1, parts: p1 }, Kind::Tuple { source: s2, parts: p2 })
                if s1 == s2 && p1.len() == p2.len() =>
            {
                stack.extend(p1.iter().zip(p2.iter()));
            }
            (Kind::Comp { outer: o1, inner: i1 }, Kind::Comp { outer: o2, inner: i2 }) => {
                stack.push((o1, o2));
                stack.push((i1, i2));
            }
            (Kind::PrimRec { base: b1, step: s1 }, Kind::PrimRec { base: b2, step: s2 }) => {
                stack.push((b1, b2));
                stack.push((s1, s2));
            }
            _ => return false,
        }
    }
    true
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        structural_eq(self, other)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Kind {
    fn drain_into(&mut self, out: &mut Vec<Term>) {
        match std::mem::replace(self, Kind::Succ) {
            Kind::Tuple { parts, .. } => out.extend(parts),
            Kind::Comp { outer, inner } => {
                out.push(outer);
                out.push(inner);
            }
            Kind::PrimRec { base, step } => {
                out.push(base);
                out.push(step);
            }
            _ => {}
        }
    }
}

// Deep terms (long numeral chains) would overflow the stack with the
// default recursive drop.
impl Drop for Node {
    fn drop(&mut self) {
        let mut pending = Vec::new();
        self.kind.drain_into(&mut pending);
        while let Some(Term(arc)) = pending.pop() {
            if let Ok(mut node) = Arc::try_unwrap(arc) {
                node.kind.drain_into(&mut pending);
            }
        }
    }
}

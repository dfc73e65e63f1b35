//! Total, surjective Gödel numbering of terms.
//!
//! A code is `pair(tag, payload)` with tags `Z = 0`, `S = 1`, `P = 2`,
//! `Comp = 3`, `Tuple = 4`, `PrimRec = 5`:
//!
//! | term            | payload                                   |
//! |-----------------|-------------------------------------------|
//! | `Z(k)`          | `k`                                       |
//! | `S`             | `0`                                       |
//! | `P(i, k)`       | `pair(i - 1, k - 1)`                      |
//! | `Comp(g, f)`    | `pair(⌜g⌝, ⌜f⌝)`                          |
//! | `Tuple_k(t…)`   | `pair(k, list)`, `list = foldr (c, a) ↦ 1 + pair(c, a)` from 0 |
//! | `PrimRec(b, s)` | `pair(⌜b⌝, ⌜s⌝)`                          |
//!
//! The pairing is the length-prefixed concatenation [`cpair`]: with
//! `ℓ = bitlen(x)`, `ℓ + 1 = 2^m + r` and `h = 2m + 1`,
//! `cpair(x, y) = (2^m - 1) + r·2^(m+1) + x·2^h + y·2^(h+ℓ)`. In binary the
//! code reads, from the least significant bit: `m` ones, a zero, `r` in `m`
//! bits, `x` in `ℓ` bits, then `y`. Codes grow linearly with term size,
//! which keeps self-referential sentences representable.
//!
//! Decoding is total. The tag is read modulo 6, arities are clamped to
//! [`MAX_DECODE_ARITY`], and arity mismatches are repaired by inserting an
//! adapter `⟨P(1,m) … P(m,m), Z(m) …⟩ : ℕ^m → ℕ^n` (projections first, zeros
//! for missing coordinates). Codes of well-formed terms never need a repair,
//! so `decode(encode(t)) = t`.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, ToPrimitive, Zero};

use crate::skolem::{Kind, Nat, Term};

/// Arities read from codes are clamped to this bound.
pub const MAX_DECODE_ARITY: usize = 1024;

/// Tag values of the six term formers.
pub mod tag {
    pub const ZERO: u64 = 0;
    pub const SUCC: u64 = 1;
    pub const PROJ: u64 = 2;
    pub const COMP: u64 = 3;
    pub const TUPLE: u64 = 4;
    pub const PRIMREC: u64 = 5;
}

/// Header of `cpair(x, ·)` for `bitlen(x) = ℓ`: returns `(H, h)`.
fn header(len: u64) -> (Nat, u64) {
    let l1 = len + 1;
    let m = 63 - u64::from(l1.leading_zeros());
    let r = l1 - (1u64 << m);
    let ones = (Nat::one() << m) - 1u32;
    (ones + (Nat::from(r) << (m + 1)), 2 * m + 1)
}

/// The pairing function used by the coding.
pub fn cpair(x: &Nat, y: &Nat) -> Nat {
    let len = x.bits();
    let (h_val, h) = header(len);
    h_val + (x << h) + (y << (h + len))
}

/// `cpair(x, y) = affine(x).0 + y · 2^affine(x).1`.
pub fn cpair_affine(x: &Nat) -> (Nat, u64) {
    let len = x.bits();
    let (h_val, h) = header(len);
    (h_val + (x << h), h + len)
}

/// Inverse of [`cpair`] on its image, extended to all naturals.
pub fn cunpair(z: &Nat) -> (Nat, Nat) {
    let bits = Bits::from_nat(z);
    let ((xs, xe), (ys, ye)) = bits.unpair(0, bits.len, false).expect("plain unpair always splits");
    (bits.to_nat(xs, xe), bits.to_nat(ys, ye))
}

/// A little-endian bit buffer; bits at or above `len` read as zero.
pub(crate) struct Bits {
    words: Vec<u64>,
    len: u64,
}

impl Bits {
    pub fn from_nat(z: &Nat) -> Bits {
        Bits { words: z.to_u64_digits(), len: z.bits() }
    }

    /// Up to 64 bits starting at `start`, clipped at `end`.
    fn read(&self, start: u64, n: u64, end: u64) -> u64 {
        let n = n.min(end.saturating_sub(start)).min(64);
        if n == 0 {
            return 0;
        }
        let w = (start / 64) as usize;
        let off = start % 64;
        let lo = self.words.get(w).copied().unwrap_or(0) >> off;
        let hi = if off > 0 { self.words.get(w + 1).copied().unwrap_or(0) << (64 - off) } else { 0 };
        let v = lo | hi;
        if n == 64 {
            v
        } else {
            v & ((1u64 << n) - 1)
        }
    }

    /// Position of the first set bit in `[start, end)`.
    fn first_set(&self, start: u64, end: u64) -> Option<u64> {
        let end = end.min(self.len);
        let mut i = start;
        while i < end {
            let w = (i / 64) as usize;
            let off = i % 64;
            let v = self.words[w] >> off;
            if v != 0 {
                let pos = i + u64::from(v.trailing_zeros());
                return (pos < end).then_some(pos);
            }
            i += 64 - off;
        }
        None
    }

    /// Position of the first clear bit in `[start, end)`, or `end`.
    fn first_clear(&self, start: u64, end: u64) -> u64 {
        let mut i = start;
        while i < end {
            let w = (i / 64) as usize;
            let off = i % 64;
            let v = !(self.words.get(w).copied().unwrap_or(0)) >> off;
            if v != 0 {
                return (i + u64::from(v.trailing_zeros())).min(end);
            }
            i += 64 - off;
        }
        end
    }

    pub fn to_nat(&self, start: u64, end: u64) -> Nat {
        let end = end.min(self.len);
        if start >= end {
            return Nat::zero();
        }
        let mut digits = Vec::with_capacity(((end - start) / 32 + 1) as usize);
        let mut i = start;
        while i < end {
            let n = (end - i).min(32);
            digits.push(self.read(i, n, end) as u32);
            i += 32;
        }
        Nat::new(digits)
    }

    /// The value of `[start, end)` saturated at `cap`.
    fn small(&self, start: u64, end: u64, cap: u64) -> u64 {
        let width = 64 - u64::from(cap.leading_zeros());
        if self.first_set(start + width, end).is_some() {
            return cap;
        }
        self.read(start, width, end).min(cap)
    }

    fn mod6(&self, start: u64, end: u64) -> u64 {
        if end.min(self.len).saturating_sub(start) <= 64 {
            self.read(start, 64, end) % 6
        } else {
            (self.to_nat(start, end) % 6u32).to_u64().expect("residue fits")
        }
    }

    /// Split the slice `[s, e)` as a pair. With `cell` set the slice is read
    /// as a nonempty list cell `1 + cpair(c, rest)`, and `None` means the
    /// empty list. Subtracting 1 from a cell turns its low `m` zeros followed
    /// by a one into `m` ones followed by a zero, so `m` is the count of
    /// trailing zeros and the remaining bits are read unchanged.
    fn unpair(&self, s: u64, e: u64, cell: bool) -> Option<((u64, u64), (u64, u64))> {
        let m = if cell { self.first_set(s, e)? - s } else { self.first_clear(s, e) - s };
        if m >= 63 {
            let xs = (s + 2 * m + 1).min(e);
            return Some(((xs, e), (e, e)));
        }
        let r = self.read(s + m + 1, m, e);
        let len = (1u64 << m) + r - 1;
        let xs = (s + 2 * m + 1).min(e);
        let xe = xs.saturating_add(len).min(e);
        Some(((xs, xe), (xe, e)))
    }
}

/// Code of a term.
pub fn encode(t: &Term) -> Nat {
    let mut memo: HashMap<usize, Nat> = HashMap::new();
    // keeps ids stable for the duration of the traversal
    let root = t.clone();
    let mut stack: Vec<(Term, bool)> = vec![(root.clone(), false)];
    while let Some((node, expanded)) = stack.pop() {
        let id = node.node_id();
        if memo.contains_key(&id) {
            continue;
        }
        if !expanded {
            stack.push((node.clone(), true));
            for ch in node.children() {
                if !memo.contains_key(&ch.node_id()) {
                    stack.push((ch.clone(), false));
                }
            }
            continue;
        }
        let code_of = |x: &Term| memo[&x.node_id()].clone();
        let (tag, payload) = match node.kind() {
            Kind::Zero(k) => (tag::ZERO, Nat::from(*k)),
            Kind::Succ => (tag::SUCC, Nat::zero()),
            Kind::Proj { index, arity } => {
                (tag::PROJ, cpair(&Nat::from(index - 1), &Nat::from(arity - 1)))
            }
            Kind::Comp { outer, inner } => (tag::COMP, cpair(&code_of(outer), &code_of(inner))),
            Kind::Tuple { source, parts } => {
                let mut list = Nat::zero();
                for part in parts.iter().rev() {
                    list = cpair(&code_of(part), &list) + 1u32;
                }
                (tag::TUPLE, cpair(&Nat::from(*source), &list))
            }
            Kind::PrimRec { base, step } => (tag::PRIMREC, cpair(&code_of(base), &code_of(step))),
        };
        memo.insert(id, cpair(&Nat::from(tag), &payload));
    }
    let code = memo.remove(&root.node_id()).expect("root encoded");
    drop(root);
    code
}

/// `⟨P(1,m) … P(m,m), Z(m) …⟩ : ℕ^m → ℕ^n`.
pub fn adapter(m: usize, n: usize) -> Term {
    let parts = (1..=n)
        .map(|j| if j <= m { Term::proj(j, m).expect("in range") } else { Term::zero(m) })
        .collect();
    Term::tuple(m, parts).expect("adapter components share their source")
}

fn comp_repaired(g: Term, f: Term) -> Term {
    let f = if f.target() == g.source() {
        f
    } else {
        let a = adapter(f.target(), g.source());
        Term::comp(a, f).expect("adapter fits")
    };
    Term::comp(g, f).expect("arities repaired")
}

enum Task {
    Visit(u64, u64),
    Comp,
    Rec,
    Tuple { source: usize, len: usize },
}

/// The term named by a code. Total: every natural decodes to a well-formed
/// term.
pub fn decode(code: &Nat) -> Term {
    let bits = Bits::from_nat(code);
    let cap = MAX_DECODE_ARITY as u64;
    let mut tasks = vec![Task::Visit(0, bits.len)];
    let mut out: Vec<Term> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Visit(s, e) => {
                let ((ts, te), (ps, pe)) = bits.unpair(s, e, false).expect("plain unpair always splits");
                match bits.mod6(ts, te) {
                    tag::ZERO => out.push(Term::zero(bits.small(ps, pe, cap) as usize)),
                    tag::SUCC => out.push(Term::succ()),
                    tag::PROJ => {
                        let ((as_, ae), (bs, be)) = bits.unpair(ps, pe, false).expect("split");
                        let k = (bits.small(bs, be, cap) + 1).min(cap) as usize;
                        let i = (bits.small(as_, ae, cap) + 1).min(k as u64) as usize;
                        out.push(Term::proj(i, k).expect("clamped into range"));
                    }
                    tag::COMP => {
                        let (g, f) = bits.unpair(ps, pe, false).expect("split");
                        tasks.push(Task::Comp);
                        tasks.push(Task::Visit(f.0, f.1));
                        tasks.push(Task::Visit(g.0, g.1));
                    }
                    tag::TUPLE => {
                        let ((ks, ke), (mut ls, le)) = bits.unpair(ps, pe, false).expect("split");
                        let source = bits.small(ks, ke, cap) as usize;
                        let mut parts = Vec::new();
                        while let Some(((cs, ce), (rs, _))) = bits.unpair(ls, le, true) {
                            parts.push((cs, ce));
                            ls = rs;
                        }
                        tasks.push(Task::Tuple { source, len: parts.len() });
                        for (cs, ce) in parts.into_iter().rev() {
                            tasks.push(Task::Visit(cs, ce));
                        }
                    }
                    _ => {
                        let (b, st) = bits.unpair(ps, pe, false).expect("split");
                        tasks.push(Task::Rec);
                        tasks.push(Task::Visit(st.0, st.1));
                        tasks.push(Task::Visit(b.0, b.1));
                    }
                }
            }
            Task::Comp => {
                let f = out.pop().expect("inner decoded");
                let g = out.pop().expect("outer decoded");
                out.push(comp_repaired(g, f));
            }
            Task::Rec => {
                let step = out.pop().expect("step decoded");
                let base = out.pop().expect("base decoded");
                let r = base.target();
                let step = if step.source() == r {
                    step
                } else {
                    Term::comp(step.clone(), adapter(r, step.source())).expect("adapter fits")
                };
                let step = if step.target() == r {
                    step
                } else {
                    let t = step.target();
                    Term::comp(adapter(t, r), step).expect("adapter fits")
                };
                out.push(Term::primrec(base, step).expect("arities repaired"));
            }
            Task::Tuple { source, len } => {
                let parts: Vec<Term> = out
                    .drain(out.len() - len..)
                    .map(|t| {
                        if t.source() == source {
                            t
                        } else {
                            let a = adapter(source, t.source());
                            Term::comp(t, a).expect("adapter fits")
                        }
                    })
                    .collect();
                out.push(Term::tuple(source, parts).expect("sources repaired"));
            }
        }
    }
    out.pop().expect("one term decoded")
}

struct NumeralBlocks {
    even: (Nat, u64),
    odd: (Nat, u64),
}

/// Each binary digit of `n` contributes one fixed block to the code of the
/// numeral for `n`: `code(numeral(2q + b)) = α_b + code(numeral(q)) · 2^(s_b)`.
fn numeral_blocks() -> &'static NumeralBlocks {
    static BLOCKS: OnceLock<NumeralBlocks> = OnceLock::new();
    BLOCKS.get_or_init(|| {
        let comp = Nat::from(tag::COMP);
        let dbl = encode(&crate::skolem::library::double());
        let succ = encode(&Term::succ());
        let (a3, s3) = cpair_affine(&comp);
        let (ad, sd) = cpair_affine(&dbl);
        let (as_, ss) = cpair_affine(&succ);
        let even = (&a3 + (ad << s3), s3 + sd);
        let odd_inner = as_ + (&even.0 << ss);
        let odd = (a3 + (odd_inner << s3), s3 + ss + even.1);
        NumeralBlocks { even, odd }
    })
}

fn or_into(words: &mut [u64], offset: u64, value: &Nat) {
    let w0 = (offset / 64) as usize;
    let off = offset % 64;
    for (i, d) in value.iter_u64_digits().enumerate() {
        words[w0 + i] |= d << off;
        if off > 0 && d >> (64 - off) != 0 {
            words[w0 + i + 1] |= d >> (64 - off);
        }
    }
}

fn words_to_nat(words: &[u64]) -> Nat {
    let mut digits = Vec::with_capacity(words.len() * 2);
    for w in words {
        digits.push(*w as u32);
        digits.push((*w >> 32) as u32);
    }
    Nat::new(digits)
}

/// Code of the numeral for `n`, computed block by block in linear time.
pub fn numcode(n: &Nat) -> Nat {
    let blocks = numeral_blocks();
    let total: u64 = (0..n.bits()).map(|i| if n.bit(i) { blocks.odd.1 } else { blocks.even.1 }).sum();
    let mut words = vec![0u64; (total / 64 + 2) as usize];
    let mut offset = 0u64;
    for i in 0..n.bits() {
        let (alpha, width) = if n.bit(i) { &blocks.odd } else { &blocks.even };
        or_into(&mut words, offset, alpha);
        offset += width;
    }
    words_to_nat(&words)
}

/// `cpair(3, cpair(φ, numcode(n)))`: the code of `Comp(decode φ, numeral n)`
/// whenever `φ` is the code of a well-formed term of source 1.
pub fn subst_code(phi: &Nat, n: &Nat) -> Nat {
    cpair(&Nat::from(tag::COMP), &cpair(phi, &numcode(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skolem::library::numeral;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn pairing_fixed_points() {
        assert_eq!(cpair(&n(0), &n(0)), n(0));
        assert_eq!(cpair(&n(1), &n(0)), n(9));
        assert_eq!(encode(&Term::succ()), n(9));
        assert_eq!(encode(&Term::proj(1, 1).unwrap()), n(21));
        assert_eq!(encode(&Term::zero(0)), n(0));
    }

    #[test]
    fn unpair_inverts_pair() {
        for x in 0..70u64 {
            for y in 0..70u64 {
                assert_eq!(cunpair(&cpair(&n(x), &n(y))), (n(x), n(y)), "({x},{y})");
            }
        }
    }

    #[test]
    fn unpair_components_are_smaller() {
        for z in 1..5000u64 {
            let (x, y) = cunpair(&n(z));
            assert!(x <= n(z) && y < n(z), "{z}");
        }
    }

    #[test]
    fn decode_zero() {
        assert!(decode(&n(0)) == Term::zero(0));
    }

    #[test]
    fn numcode_matches_encoded_numerals() {
        for v in 0..300u64 {
            assert_eq!(numcode(&n(v)), encode(&numeral(&n(v))), "{v}");
        }
    }

    #[test]
    fn empty_tuple_keeps_its_source() {
        let t = Term::tuple(3, vec![]).unwrap();
        assert!(decode(&encode(&t)) == t);
    }

    #[test]
    fn deep_numeral_roundtrip() {
        let v = (Nat::one() << 4000u32) - 7u32;
        let t = numeral(&v);
        let c = encode(&t);
        assert_eq!(c, numcode(&v));
        assert!(decode(&c) == t);
    }
}

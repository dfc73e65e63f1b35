//! Shared test support: an independent recursive interpreter for terms and
//! a generator of random well-formed terms.

#![allow(dead_code)]

use au_kernel::skolem::{Kind, Nat, Term};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

/// Reference semantics, written directly from the defining equations of the
/// six term formers. `fuel` bounds the number of node visits plus recursor
/// iterations; `None` means it ran out.
pub fn oracle_eval(t: &Term, args: &[Nat], fuel: &mut u64) -> Option<Vec<Nat>> {
    if *fuel == 0 {
        return None;
    }
    *fuel -= 1;
    assert_eq!(args.len(), t.source(), "oracle called at the wrong arity");
    match t.kind() {
        Kind::Zero(_) => Some(vec![Nat::zero()]),
        Kind::Succ => Some(vec![&args[0] + Nat::one()]),
        Kind::Proj { index, .. } => Some(vec![args[index - 1].clone()]),
        Kind::Tuple { parts, .. } => {
            let mut out = Vec::new();
            for p in parts {
                out.extend(oracle_eval(p, args, fuel)?);
            }
            Some(out)
        }
        Kind::Comp { outer, inner } => {
            let mid = oracle_eval(inner, args, fuel)?;
            oracle_eval(outer, &mid, fuel)
        }
        Kind::PrimRec { base, step } => {
            let (n, params) = args.split_last().expect("recursor has a counter");
            let n = n.to_u64()?;
            if n > *fuel {
                return None;
            }
            let mut acc = oracle_eval(base, params, fuel)?;
            for _ in 0..n {
                acc = oracle_eval(step, &acc, fuel)?;
            }
            Some(acc)
        }
    }
}

/// A random term `ℕ^source → ℕ^target` with roughly `size` nodes.
pub fn random_term<R: Rng>(rng: &mut R, source: usize, target: usize, size: usize) -> Term {
    if target != 1 {
        let share = (size.saturating_sub(1) / target.max(1)).max(1);
        let parts = (0..target).map(|_| random_term(rng, source, 1, share)).collect();
        return Term::tuple(source, parts).unwrap();
    }
    if size <= 1 {
        return leaf(rng, source);
    }
    match rng.gen_range(0..4) {
        0 => Term::comp(Term::succ(), random_term(rng, source, 1, size - 1)).unwrap(),
        1 if source > 0 => {
            let base_size = rng.gen_range(1..size);
            let base = random_term(rng, source - 1, 1, base_size);
            let step = random_term(rng, 1, 1, (size - base_size).max(1));
            Term::primrec(base, step).unwrap()
        }
        _ => {
            let mid = rng.gen_range(0..=2);
            let outer_size = rng.gen_range(1..size);
            let outer = random_term(rng, mid, 1, outer_size);
            let inner = random_term(rng, source, mid, (size - outer_size).max(1));
            Term::comp(outer, inner).unwrap()
        }
    }
}

fn leaf<R: Rng>(rng: &mut R, source: usize) -> Term {
    if source == 0 || rng.gen_bool(0.25) {
        Term::zero(source)
    } else if source == 1 && rng.gen_bool(0.3) {
        Term::succ()
    } else {
        Term::proj(rng.gen_range(1..=source), source).unwrap()
    }
}

/// A random term of AST size at most `max_size`.
pub fn bounded_term<R: Rng>(rng: &mut R, source: usize, target: usize, max_size: usize) -> Term {
    loop {
        let size = rng.gen_range(1..=max_size);
        let t = random_term(rng, source, target, size);
        if t.size() <= max_size {
            return t;
        }
    }
}

pub fn nat(v: u64) -> Nat {
    Nat::from(v)
}

pub fn nats(v: &[u64]) -> Vec<Nat> {
    v.iter().map(|&x| Nat::from(x)).collect()
}

/// Every term with source `k`, target 1 and AST size exactly `size`, with
/// intermediate arities at most `max_arity`.
pub fn all_terms(k: usize, size: usize, max_arity: usize) -> Vec<Term> {
    let mut out = Vec::new();
    if size == 1 {
        out.push(Term::zero(k));
        if k == 1 {
            out.push(Term::succ());
        }
        for i in 1..=k {
            out.push(Term::proj(i, k).unwrap());
        }
        return out;
    }
    // composites: 1 + |outer| + |inner|
    for outer_size in 1..size - 1 {
        let inner_size = size - 1 - outer_size;
        for m in 0..=max_arity {
            let outers = all_terms(m, outer_size, max_arity);
            if outers.is_empty() {
                continue;
            }
            for inner in all_tuples(k, m, inner_size, max_arity) {
                for outer in &outers {
                    out.push(Term::comp(outer.clone(), inner.clone()).unwrap());
                }
            }
        }
    }
    // recursors with target 1
    if k >= 1 {
        for base_size in 1..size - 1 {
            let steps = all_terms(1, size - 1 - base_size, max_arity);
            for base in all_terms(k - 1, base_size, max_arity) {
                for step in &steps {
                    out.push(Term::primrec(base.clone(), step.clone()).unwrap());
                }
            }
        }
    }
    out
}

/// Every term `ℕ^k → ℕ^m` of size exactly `size` whose top node is not a
/// recursor or composite of target `m != 1`: a target-1 term when `m == 1`,
/// or an explicit tuple of `m` target-1 terms.
pub fn all_tuples(k: usize, m: usize, size: usize, max_arity: usize) -> Vec<Term> {
    let mut out = Vec::new();
    if m == 1 {
        out.extend(all_terms(k, size, max_arity));
    }
    if size == 0 {
        return out;
    }
    for parts in part_lists(k, m, size - 1, max_arity) {
        out.push(Term::tuple(k, parts).unwrap());
    }
    out
}

fn part_lists(k: usize, m: usize, size: usize, max_arity: usize) -> Vec<Vec<Term>> {
    if m == 0 {
        return if size == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=size {
        let heads = all_terms(k, first, max_arity);
        if heads.is_empty() {
            continue;
        }
        for rest in part_lists(k, m - 1, size - first, max_arity) {
            for h in &heads {
                let mut v = vec![h.clone()];
                v.extend(rest.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

pub mod tt;

//! Native implementations of library terms, used by the evaluator in place
//! of unfolding. Each function receives exactly `source` arguments.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Nat;
use crate::error::Error;
use crate::arith::coding;

/// Result of a native implementation.
pub type Jetted = Result<Vec<Nat>, Error>;

fn one(v: Nat) -> Jetted {
    Ok(vec![v])
}

fn b(v: bool) -> Jetted {
    one(if v { Nat::one() } else { Nat::zero() })
}

fn monus_ref(x: &Nat, y: &Nat) -> Nat {
    if x > y {
        x - y
    } else {
        Nat::zero()
    }
}

pub fn add(a: &[Nat]) -> Jetted {
    one(&a[0] + &a[1])
}

pub fn double(a: &[Nat]) -> Jetted {
    one(&a[0] << 1u32)
}

pub fn pred(a: &[Nat]) -> Jetted {
    one(monus_ref(&a[0], &Nat::one()))
}

pub fn monus(a: &[Nat]) -> Jetted {
    one(monus_ref(&a[0], &a[1]))
}

pub fn mul(a: &[Nat]) -> Jetted {
    one(&a[0] * &a[1])
}

pub fn not1(a: &[Nat]) -> Jetted {
    b(a[0].is_zero())
}

pub fn sg(a: &[Nat]) -> Jetted {
    b(!a[0].is_zero())
}

pub fn and2(a: &[Nat]) -> Jetted {
    one(a[0].clone().min(a[1].clone()))
}

pub fn or2(a: &[Nat]) -> Jetted {
    one(a[0].clone().max(a[1].clone()))
}

pub fn eq(a: &[Nat]) -> Jetted {
    b(a[0] == a[1])
}

pub fn leq(a: &[Nat]) -> Jetted {
    b(a[0] <= a[1])
}

pub fn ifz(a: &[Nat]) -> Jetted {
    one(if a[0].is_zero() { a[1].clone() } else { a[2].clone() })
}

fn tri_of(n: &Nat) -> Nat {
    (n * (n + 1u32)) >> 1u32
}

pub fn tri(a: &[Nat]) -> Jetted {
    one(tri_of(&a[0]))
}

pub fn cantor_pair(a: &[Nat]) -> Jetted {
    one(tri_of(&(&a[0] + &a[1])) + &a[1])
}

/// `(x, y)` with `cantor_pair(x, y) = z`.
pub fn cantor_unpair(z: &Nat) -> (Nat, Nat) {
    let w = (((z << 3u32) + 1u32).sqrt() - 1u32) >> 1u32;
    let y = z - tri_of(&w);
    let x = &w - &y;
    (x, y)
}

pub fn unpair_left(a: &[Nat]) -> Jetted {
    one(cantor_unpair(&a[0]).0)
}

pub fn unpair_right(a: &[Nat]) -> Jetted {
    one(cantor_unpair(&a[0]).1)
}

pub fn parity(a: &[Nat]) -> Jetted {
    b(a[0].is_odd())
}

pub fn is_even(a: &[Nat]) -> Jetted {
    b(a[0].is_even())
}

pub fn half(a: &[Nat]) -> Jetted {
    one(&a[0] >> 1u32)
}

pub fn div(a: &[Nat]) -> Jetted {
    one(if a[1].is_zero() { Nat::zero() } else { &a[0] / &a[1] })
}

pub fn rem(a: &[Nat]) -> Jetted {
    one(if a[1].is_zero() { a[0].clone() } else { &a[0] % &a[1] })
}

/// Largest exponent `pow2` will materialize; beyond it the result would not fit in memory.
pub const POW2_MAX_EXPONENT: u64 = 1 << 32;

pub fn pow2(a: &[Nat]) -> Jetted {
    match a[0].to_u64() {
        Some(e) if e <= POW2_MAX_EXPONENT => one(Nat::one() << e),
        _ => Err(Error::ValueTooLarge(format!("2^{} has more than {POW2_MAX_EXPONENT} bits", a[0]))),
    }
}

pub fn bitlen(a: &[Nat]) -> Jetted {
    one(Nat::from(a[0].bits()))
}

pub fn cpair(a: &[Nat]) -> Jetted {
    one(coding::cpair(&a[0], &a[1]))
}

pub fn numcode(a: &[Nat]) -> Jetted {
    one(coding::numcode(&a[0]))
}

pub fn subst(a: &[Nat]) -> Jetted {
    one(coding::subst_code(&a[0], &a[1]))
}

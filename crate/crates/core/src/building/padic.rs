//! Small helpers for arithmetic in Z localized at p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn pow(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// p-adic valuation; `None` for zero.
pub fn val(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// Valuation of x mod p^n (n when x ≡ 0).
pub fn val_mod(x: &BigInt, p: u64, n: u32) -> u32 {
    val(x, p).map_or(n, |v| v.min(n))
}

/// Inverse of a unit modulo m.
pub fn inv_mod(u: &BigInt, m: &BigInt) -> BigInt {
    let g = u.mod_floor(m).extended_gcd(m);
    assert!(g.gcd.is_one(), "not a unit");
    g.x.mod_floor(m)
}

/// Split off the p-part: x = p^v · u with u prime to p.
pub fn split(x: &BigInt, p: u64) -> (u32, BigInt) {
    let v = val(x, p).expect("zero has no unit part");
    (v, x / pow(p, v))
}

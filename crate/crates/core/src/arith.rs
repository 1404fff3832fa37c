//! Integer helpers shared by the finite-field and combinatorics code.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            while n.is_multiple_of(i) {
                n /= i;
            }
        }
        i += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// (p, r) with q = p^r, if q is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut r = 0;
    let mut x = q;
    while x > 1 {
        x /= p;
        r += 1;
    }
    Some((p, r))
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

pub fn checked_pow(b: u64, e: u32) -> Option<u64> {
    b.checked_pow(e)
}

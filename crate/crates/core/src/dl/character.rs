use serde::Serialize;

use crate::arith::{divisors, prime_power};
use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};

/// A character θ′ of F_{q^f}^× sending a fixed generator to ζ_n^k, n = q^f − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CharacterData {
    pub q: u64,
    pub f: u32,
    pub n: u64,
    pub k: u64,
    /// smallest f′ | f such that θ′ factors through the norm to F_{q^{f′}}
    pub level: u32,
}

impl CharacterData {
    pub fn new(q: u64, f: u32, k: u64) -> Result<Self> {
        if prime_power(q).is_none() || f == 0 {
            return Err(Error::Invalid(format!("bad character parameters q={q} f={f}")));
        }
        let n = q.checked_pow(f).ok_or_else(|| Error::Unsupported(format!("q^f too large for q={q} f={f}")))? - 1;
        let k = k % n;
        let level =
            divisors(f as u64).into_iter().find(|&g| k.is_multiple_of(n / (q.pow(g as u32) - 1))).unwrap() as u32;
        Ok(CharacterData { q, f, n, k, level })
    }

    pub fn trivial(q: u64, f: u32) -> Result<Self> {
        Self::new(q, f, 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.level == self.f
    }

    /// θ′ evaluated at g^j.
    pub fn at_power(&self, j: u64) -> RootOfUnity {
        RootOfUnity::new((self.k as u128 * (j % self.n) as u128 % self.n as u128) as i128, self.n)
    }

    /// θ′(−1); −1 = g^{n/2} when q is odd and −1 = 1 otherwise.
    pub fn at_minus_one(&self) -> RootOfUnity {
        if self.q.is_multiple_of(2) {
            RootOfUnity::one()
        } else {
            self.at_power(self.n / 2)
        }
    }

    /// θ′ ∘ Frobenius.
    pub fn frobenius(&self) -> Self {
        CharacterData { k: (self.k as u128 * self.q as u128 % self.n as u128) as u64, ..*self }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterOrbit {
    /// smallest exponent in the orbit, as a character of F_{q^d}^×
    pub representative: u64,
    pub size: u32,
    pub f: u32,
    /// the f-primitive character θ′ with θ = θ′ ∘ N
    pub theta_prime: CharacterData,
}

/// Frobenius orbits of characters of F_{q^d}^×.
pub fn character_orbits(d: u32, q: u64) -> Result<Vec<CharacterOrbit>> {
    if d == 0 || prime_power(q).is_none() {
        return Err(Error::Invalid(format!("bad parameters d={d} q={q}")));
    }
    let n = q
        .checked_pow(d)
        .filter(|&v| v <= 1 << 26)
        .ok_or_else(|| Error::Unsupported(format!("q^d too large for d={d} q={q}")))?
        - 1;
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for k in 0..n {
        if seen[k as usize] {
            continue;
        }
        let mut size = 0u32;
        let mut j = k;
        loop {
            seen[j as usize] = true;
            size += 1;
            j = (j as u128 * q as u128 % n as u128) as u64;
            if j == k {
                break;
            }
        }
        let f = size;
        let nf = q.pow(f) - 1;
        let theta_prime = CharacterData::new(q, f, k / (n / nf))?;
        debug_assert!(theta_prime.is_primitive());
        out.push(CharacterOrbit { representative: k, size, f, theta_prime });
    }
    Ok(out)
}

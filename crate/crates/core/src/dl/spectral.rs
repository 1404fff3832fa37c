use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::character::{character_orbits, CharacterData};
use super::count::count_points;
use crate::arith::prime_power;
use crate::cyclotomic::{Cyclotomic, RootOfUnity};
use crate::error::{Error, Result};

/// root · q^t, an eigenvalue of a power of Frobenius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeilScalar {
    pub root: RootOfUnity,
    pub q: u64,
    pub t: u32,
}

impl WeilScalar {
    pub fn pow(&self, e: u32) -> Self {
        WeilScalar { root: self.root.pow(e as i64), q: self.q, t: self.t * e }
    }

    pub fn negate(&self) -> Self {
        WeilScalar { root: self.root.mul(&RootOfUnity::minus_one()), ..*self }
    }

    /// log_q of the absolute value.
    pub fn weight(&self) -> u32 {
        self.t
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.root.as_sign().map(|s| BigInt::from(s) * BigInt::from(self.q).pow(self.t))
    }

    pub fn to_cyclotomic(&self, n: u64) -> Cyclotomic {
        Cyclotomic::from_root(n, &self.root).scale_big(&BigInt::from(self.q).pow(self.t))
    }
}

impl fmt::Display for WeilScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.root.as_sign() {
            Some(1) => write!(f, "+q^{}", self.t),
            Some(_) => write!(f, "-q^{}", self.t),
            None => write!(f, "ζ_{}^{}·q^{}", self.root.n, self.root.k, self.t),
        }
    }
}

fn check_fi(d: u32, f: u32, i: u32) -> Result<u32> {
    if d == 0 || f == 0 || !d.is_multiple_of(f) {
        return Err(Error::Invalid(format!("f={f} does not divide d={d}")));
    }
    let e = d / f;
    if i >= e {
        return Err(Error::Invalid(format!("i={i} out of range 0..{e}")));
    }
    Ok(e)
}

/// Eigenvalue of F^f on the θ-part of H_c^{d−1+i}:
/// (−1)^{e(f−1)} θ′((−1)^{e−1}) (q^f)^{(d−e)/2+i}.
pub fn frobenius_eigenvalue(d: u32, f: u32, i: u32, theta: &CharacterData) -> Result<WeilScalar> {
    let e = check_fi(d, f, i)?;
    if theta.f != f {
        return Err(Error::Invalid(format!("character lives on F_{{q^{}}}, expected f={f}", theta.f)));
    }
    let sign = if (e * (f - 1)) % 2 == 1 { RootOfUnity::minus_one() } else { RootOfUnity::one() };
    let theta_val = if (e - 1) % 2 == 1 { theta.at_minus_one() } else { RootOfUnity::one() };
    // f(d − e) = f·e(f − 1) is even
    let t = f * (d - e) / 2 + f * i;
    let out = WeilScalar { root: sign.mul(&theta_val), q: theta.q, t };
    debug_assert_eq!(out.weight() * 2, f * (d - e) + 2 * f * i);
    Ok(out)
}

/// Degree of the constituent attached to the hook (i+1, 1^{e−1−i}) of
/// GL_e(F_{q^f}) inside GL_d(F_q):
/// Π_{k≤d}(q^k − 1) · Q^{n(λ)} / Π_hooks (Q^h − 1), Q = q^f.
pub fn dimension(d: u32, f: u32, i: u32, q: u64) -> Result<BigInt> {
    let e = check_fi(d, f, i)?;
    if prime_power(q).is_none() {
        return Err(Error::Invalid(format!("q={q} is not a prime power")));
    }
    let qb = BigInt::from(q);
    let big_q = qb.pow(f);
    let mut num = BigInt::one();
    for k in 1..=d {
        num *= qb.pow(k) - 1;
    }
    let leg = e - 1 - i;
    num *= big_q.pow(leg * (leg + 1) / 2);
    let mut den = big_q.pow(e) - 1;
    for h in (1..=i).chain(1..=leg) {
        den *= big_q.pow(h) - 1;
    }
    let rem: BigInt = &num % &den;
    if !rem.is_zero() {
        return Err(Error::Unsupported(format!("non-integral degree for d={d} f={f} i={i}")));
    }
    Ok(num / den)
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyRow {
    pub f: u32,
    pub representative: u64,
    pub i: u32,
    pub degree: u32,
    pub dim: BigInt,
    pub eigenvalue: WeilScalar,
}

/// For every Frobenius orbit of characters and every i, the cohomological
/// degree, dimension and F^f-eigenvalue of the θ-isotypic constituent.
pub fn cohomology_summary(d: u32, q: u64) -> Result<Vec<CohomologyRow>> {
    let mut rows = Vec::new();
    for orbit in character_orbits(d, q)? {
        let f = orbit.f;
        for i in 0..d / f {
            rows.push(CohomologyRow {
                f,
                representative: orbit.representative,
                i,
                degree: d - 1 + i,
                dim: dimension(d, f, i, q)?,
                eigenvalue: frobenius_eigenvalue(d, f, i, &orbit.theta_prime)?,
            });
        }
    }
    Ok(rows)
}

/// Deliberate corruptions of the spectral side, used as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Perturbation {
    #[default]
    None,
    NegateLambdaZero,
}

/// Σ over orbits with f | m of f · Σ_i (−1)^{d−1+i} dim · λ_i^{m/f}.
pub fn spectral_side(d: u32, q: u64, m: u32, perturb: Perturbation) -> Result<BigInt> {
    let rows = cohomology_summary(d, q)?;
    let n = rows.iter().fold(1u64, |acc, r| acc / crate::arith::gcd(acc, r.eigenvalue.root.n) * r.eigenvalue.root.n);
    let mut total = Cyclotomic::zero(n);
    for row in rows.iter().filter(|r| m.is_multiple_of(r.f)) {
        let mut lambda = row.eigenvalue;
        if perturb == Perturbation::NegateLambdaZero && row.i == 0 {
            lambda = lambda.negate();
        }
        let sign: i64 = if row.degree % 2 == 0 { 1 } else { -1 };
        let term = lambda.pow(m / row.f).to_cyclotomic(n).scale_big(&(&row.dim * BigInt::from(sign * row.f as i64)));
        total = total.add(&term);
    }
    total.as_integer().ok_or_else(|| Error::Invalid(format!("spectral side {total} is not rational")))
}

#[derive(Debug, Clone, Serialize)]
pub struct LefschetzReport {
    pub d: u32,
    pub q: u64,
    pub m: u32,
    pub geometric: BigInt,
    pub spectral: BigInt,
    pub matches: bool,
}

pub fn lefschetz_reconcile(d: u32, q: u64, m: u32, budget: u128) -> Result<LefschetzReport> {
    let geometric = BigInt::from(count_points(d, q, m, budget)?);
    let spectral = spectral_side(d, q, m, Perturbation::None)?;
    Ok(LefschetzReport { d, q, m, matches: geometric == spectral, geometric, spectral })
}

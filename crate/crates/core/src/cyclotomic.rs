//! Exact arithmetic in Z[ζ_n], as polynomials reduced modulo Φ_n.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::gcd;

/// e^{2πi k/n}, stored reduced with 0 ≤ k < n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub k: u64,
    pub n: u64,
}

impl RootOfUnity {
    pub fn new(k: i128, n: u64) -> Self {
        assert!(n > 0);
        let k = k.rem_euclid(n as i128) as u64;
        let g = gcd(k, n).max(1);
        if k == 0 {
            return RootOfUnity { k: 0, n: 1 };
        }
        RootOfUnity { k: k / g, n: n / g }
    }

    pub fn one() -> Self {
        RootOfUnity { k: 0, n: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { k: 1, n: 2 }
    }

    pub fn mul(&self, o: &RootOfUnity) -> Self {
        let n = self.n / gcd(self.n, o.n) * o.n;
        RootOfUnity::new((self.k * (n / self.n) + o.k * (n / o.n)) as i128, n)
    }

    pub fn pow(&self, e: i64) -> Self {
        RootOfUnity::new(self.k as i128 * e as i128, self.n)
    }

    /// ±1 as an integer, if real.
    pub fn as_sign(&self) -> Option<i64> {
        match (self.k, self.n) {
            (0, 1) => Some(1),
            (1, 2) => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_sign() {
            Some(1) => write!(f, "1"),
            Some(_) => write!(f, "-1"),
            None => write!(f, "ζ_{}^{}", self.n, self.k),
        }
    }
}

/// Integer polynomial product.
fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn poly_div_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return (vec![BigInt::zero()], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= &c * y;
        }
        q[i] = c;
    }
    r.truncate(db);
    (q, r)
}

/// The n-th cyclotomic polynomial, coefficients from x^0 up.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    // x^n − 1 divided by Φ_d for all proper divisors d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = poly_div_monic(&num, &cyclotomic_polynomial(d));
            debug_assert!(r.iter().all(|x| x.is_zero()));
            num = q;
        }
    }
    num
}

/// An element of Z[ζ_n] in the power basis 1, ζ, …, ζ^{φ(n)−1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cyclotomic {
    pub n: u64,
    pub coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Self {
        let deg = cyclotomic_polynomial(n).len() - 1;
        Cyclotomic { n, coeffs: vec![BigInt::zero(); deg] }
    }

    pub fn from_int(n: u64, v: i64) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = BigInt::from(v);
        z
    }

    /// ζ_n^k.
    pub fn root(n: u64, k: i128) -> Self {
        let k = k.rem_euclid(n as i128) as usize;
        let mut raw = vec![BigInt::zero(); n as usize];
        raw[k] = BigInt::one();
        Self::reduce(n, raw)
    }

    pub fn from_root(n: u64, z: &RootOfUnity) -> Self {
        assert!(n.is_multiple_of(z.n), "root of unity not in Q(ζ_{n})");
        Self::root(n, (z.k * (n / z.n)) as i128)
    }

    fn reduce(n: u64, raw: Vec<BigInt>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let (_, mut r) = poly_div_monic(&raw, &phi);
        r.resize(deg, BigInt::zero());
        Cyclotomic { n, coeffs: r }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Self::reduce(self.n, poly_mul(&self.coeffs, &o.coeffs))
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|a| a * &k).collect() }
    }

    pub fn scale_big(&self, k: &BigInt) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational integer value, if the element is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => write!(f, "{c}·ζ_{}^{k}", self.n)?,
            }
        }
        Ok(())
    }
}

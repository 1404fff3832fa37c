use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

/// Integer polynomial in t, coefficients from t^0 up, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Poly(pub Vec<BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        Poly(vec![BigInt::from(c)]).trimmed()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn t() -> Self {
        Poly(vec![BigInt::zero(), BigInt::one()])
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).cloned().unwrap_or_default();
        Poly((0..n).map(|i| get(self, i) + get(o, i)).collect()).trimmed()
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                _ => {}
            }
            first = false;
            let coeff = if abs.is_one() && k > 0 { String::new() } else { abs.to_string() };
            match k {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{k}")?,
            }
        }
        Ok(())
    }
}

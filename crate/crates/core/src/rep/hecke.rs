use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::partition::Partition;
use super::perm::{all_perms, Perm};
use super::poly::Poly;
use crate::linalg::{bareiss_rank, Matrix};

/// Σ c_w(t)·T_w in the Iwahori–Hecke algebra of S_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    pub n: usize,
    pub terms: BTreeMap<Perm, Poly>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn basis(w: Perm) -> Self {
        Self::monomial(w, Poly::one())
    }

    pub fn monomial(w: Perm, c: Poly) -> Self {
        let mut out = Self::zero(w.n());
        out.add_term(w, c);
        out
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(Perm::identity(n))
    }

    fn add_term(&mut self, w: Perm, c: Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(Poly::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &HeckeElement) -> HeckeElement {
        assert_eq!(self.n, o.n);
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Poly) -> HeckeElement {
        let mut out = Self::zero(self.n);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.mul(c));
        }
        out
    }

    /// T_s · self for the simple reflection s = s_i:
    /// T_s T_w = T_{sw} if ℓ(sw) > ℓ(w), else t·T_{sw} + (t−1)·T_w.
    pub fn left_generator(&self, i: usize) -> HeckeElement {
        let mut out = Self::zero(self.n);
        let t = Poly::t();
        let t1 = t.sub(&Poly::one());
        for (w, c) in &self.terms {
            let sw = w.left_simple(i);
            if w.left_ascent(i) {
                out.add_term(sw, c.clone());
            } else {
                out.add_term(sw, c.mul(&t));
                out.add_term(w.clone(), c.mul(&t1));
            }
        }
        out
    }

    pub fn mul(&self, o: &HeckeElement) -> HeckeElement {
        assert_eq!(self.n, o.n);
        let mut out = Self::zero(self.n);
        for (v, c) in &self.terms {
            let mut acc = o.clone();
            for &i in v.reduced_word().iter().rev() {
                acc = acc.left_generator(i);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Coefficients at a specialized value of t.
    pub fn specialize(&self, t: &BigInt) -> BTreeMap<Perm, BigInt> {
        self.terms.iter().map(|(w, c)| (w.clone(), c.eval(t))).filter(|(_, v)| !v.is_zero()).collect()
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})·T_{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Permutations preserving the consecutive blocks of sizes μ_1, μ_2, ….
pub fn young_subgroup(mu: &Partition) -> Vec<Perm> {
    let n = mu.size() as usize;
    let mut block = Vec::with_capacity(n);
    for (b, &part) in mu.parts().iter().enumerate() {
        block.extend(std::iter::repeat_n(b, part as usize));
    }
    all_perms(n).into_iter().filter(|w| (0..n).all(|i| block[w.0[i] as usize] == block[i])).collect()
}

/// x_μ = Σ_{w ∈ S_μ} T_w.
pub fn x_mu(mu: &Partition) -> HeckeElement {
    let n = mu.size() as usize;
    let mut out = HeckeElement::zero(n);
    for w in young_subgroup(mu) {
        out.add_term(w, Poly::one());
    }
    out
}

/// Π_i [μ_i]_t!, the Poincaré polynomial of S_μ.
pub fn poincare_polynomial(mu: &Partition) -> Poly {
    let mut out = Poly::one();
    for &part in mu.parts() {
        for j in 1..=part {
            let qint = Poly((0..j).map(|_| BigInt::from(1)).collect());
            out = out.mul(&qint);
        }
    }
    out
}

/// Rank over Q of the span of x_μ·T_w, w ∈ S_n, at a specialized t.
pub fn ideal_rank(mu: &Partition, t: i64) -> usize {
    let n = mu.size() as usize;
    let perms = all_perms(n);
    let index: BTreeMap<&Perm, usize> = perms.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let x = x_mu(mu);
    let tb = BigInt::from(t);
    let mut m = Matrix::filled(perms.len(), perms.len(), BigInt::zero());
    for (col, w) in perms.iter().enumerate() {
        let prod = x.mul(&HeckeElement::basis(w.clone()));
        for (v, c) in prod.specialize(&tb) {
            m.set(index[&v], col, c);
        }
    }
    bareiss_rank(&m)
}

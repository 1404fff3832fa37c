//! Finite fields F_{p^n} with a lexicographically first irreducible
//! modulus and a certified multiplicative generator.

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn inv_p(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Poly {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Poly {
    let n = f.len() - 1;
    let lead_inv = inv_p(f[n], p);
    let mut r = a.to_vec();
    while r.len() > n {
        let c = r.pop().unwrap() * lead_inv % p;
        if c == 0 {
            continue;
        }
        let shift = r.len() - n;
        for k in 0..n {
            r[shift + k] = (r[shift + k] + p * p - c * f[k] % p) % p;
        }
    }
    trim(if r.is_empty() { vec![0] } else { r })
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn x_pow_mod(e_pow_p: u32, f: &[u64], p: u64) -> Poly {
    // x^{p^e} mod f by repeated p-th powers
    let mut cur = poly_rem(&[0, 1], f, p);
    for _ in 0..e_pow_p {
        let mut acc = vec![1u64];
        let mut base = cur.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            k >>= 1;
        }
        cur = acc;
    }
    cur
}

/// Rabin's irreducibility test for a monic polynomial of degree n.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let xn = x_pow_mod(n as u32, f, p);
    if trim(xn) != poly_rem(&[0, 1], f, p) {
        return false;
    }
    for l in prime_factors(n as u64) {
        let mut h = x_pow_mod((n as u64 / l) as u32, f, p);
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        let g = poly_gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    pub p: u64,
    /// q = p^r
    pub r: u32,
    /// the field is F_{q^m}
    pub m: u32,
    pub q: u64,
    pub size: u64,
    /// monic, coefficients from x^0 up
    pub modulus: Vec<u64>,
    /// element index of the certified generator
    pub generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
}

impl FiniteField {
    pub const MAX_SIZE: u64 = 1 << 24;

    /// F_{q^m} with q = p^r.
    pub fn new(p: u64, r: u32, m: u32) -> Result<Self> {
        if !is_prime(p) || r == 0 || m == 0 {
            return Err(Error::Invalid(format!("bad field parameters p={p} r={r} m={m}")));
        }
        let n = r * m;
        let size = p.checked_pow(n).filter(|&s| s <= Self::MAX_SIZE).ok_or_else(|| Error::BudgetExceeded {
            what: "field size",
            needed: (p as u128).saturating_pow(n),
            budget: Self::MAX_SIZE as u128,
        })?;
        let q = p.pow(r);
        // lexicographic search over monic moduli
        let mut modulus = None;
        for code in 0..size {
            let mut f: Vec<u64> = (0..n).map(|i| code / p.pow(i) % p).collect();
            f.push(1);
            if n > 1 && f[0] == 0 {
                continue;
            }
            if is_irreducible(&f, p) {
                modulus = Some(f);
                break;
            }
        }
        let modulus = modulus.expect("irreducible polynomials exist in every degree");
        let digits = |x: u64| -> Poly { (0..n).map(|i| x / p.pow(i) % p).collect() };
        let encode = |a: &[u64]| -> u64 { a.iter().enumerate().map(|(i, &c)| c * p.pow(i as u32)).sum() };
        let order = size - 1;
        let factors = prime_factors(order);
        let pow_poly = |a: &Poly, mut e: u64| -> Poly {
            let mut acc = vec![1u64];
            let mut b = a.clone();
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mulmod(&acc, &b, &modulus, p);
                }
                b = poly_mulmod(&b, &b, &modulus, p);
                e >>= 1;
            }
            acc
        };
        let mut generator = None;
        for cand in 1..size {
            let a = digits(cand);
            if factors.iter().all(|&l| trim(pow_poly(&a, order / l)) != vec![1]) {
                generator = Some(cand);
                break;
            }
        }
        let generator = generator.unwrap_or(1);
        let g = digits(generator);
        let mut exp = vec![0u32; order.max(1) as usize];
        let mut log = vec![u32::MAX; size as usize];
        let mut cur = vec![1u64];
        for k in 0..order {
            let e = encode(&cur) as u32;
            exp[k as usize] = e;
            log[e as usize] = k as u32;
            cur = poly_mulmod(&cur, &g, &modulus, p);
            cur.resize(n as usize, 0);
        }
        if log.iter().skip(1).any(|&l| l == u32::MAX) {
            return Err(Error::Invalid("generator certification failed".into()));
        }
        let add_digits = |a: u64, b: u64| -> u64 {
            let mut s = 0;
            let mut pw = 1;
            let (mut a, mut b) = (a, b);
            for _ in 0..n {
                s += ((a % p + b % p) % p) * pw;
                a /= p;
                b /= p;
                pw *= p;
            }
            s
        };
        let add = if p != 2 && size <= 2500 {
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = add_digits(a, b) as u32;
                }
            }
            Some(t)
        } else {
            None
        };
        let neg = (0..size)
            .map(|a| {
                let mut s = 0;
                let mut pw = 1;
                let mut a = a;
                for _ in 0..n {
                    s += ((p - a % p) % p) * pw;
                    a /= p;
                    pw *= p;
                }
                s as u32
            })
            .collect();
        Ok(FiniteField { p, r, m, q, size, modulus, generator: generator as u32, exp, log, add, neg })
    }

    pub fn degree(&self) -> u32 {
        self.r * self.m
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if let Some(t) = &self.add {
            return t[(a as u64 * self.size + b as u64) as usize];
        }
        let (p, mut a, mut b) = (self.p, a as u64, b as u64);
        let (mut s, mut pw) = (0, 1);
        for _ in 0..self.degree() {
            s += ((a % p + b % p) % p) * pw;
            a /= p;
            b /= p;
            pw *= p;
        }
        s as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let o = self.size - 1;
        self.exp[((self.log[a as usize] as u64 + self.log[b as usize] as u64) % o) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let o = self.size - 1;
        self.exp[((o - self.log[a as usize] as u64) % o) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let o = self.size - 1;
        self.exp[((self.log[a as usize] as u64 % o) * (e % o) % o) as usize]
    }

    /// g^k for the certified generator g.
    pub fn from_log(&self, k: u64) -> u32 {
        self.exp[(k % (self.size - 1)) as usize]
    }

    /// Discrete logarithm to the certified generator.
    pub fn log(&self, a: u32) -> Option<u64> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize] as u64)
        }
    }

    /// x ↦ x^{q^k}.
    pub fn frob(&self, a: u32, k: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let o = self.size - 1;
        let mut e = 1u64;
        for _ in 0..k {
            e = e * self.q % o.max(1);
        }
        self.pow(a, e)
    }

    /// Embedding of the integers.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Coefficients of the element in the polynomial basis.
    pub fn coefficients(&self, a: u32) -> Vec<u64> {
        (0..self.degree()).map(|i| a as u64 / self.p.pow(i) % self.p).collect()
    }

    /// Whether a lies in F_{q^f}.
    pub fn in_subfield(&self, a: u32, f: u32) -> bool {
        self.frob(a, f) == a
    }

    /// Smallest f with a ∈ F_{q^f}.
    pub fn degree_over_q(&self, a: u32) -> u32 {
        (1..=self.m).find(|&f| self.m.is_multiple_of(f) && self.in_subfield(a, f)).unwrap()
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    /// Determinant of a square matrix by Gaussian elimination.
    pub fn det(&self, m: &mut [Vec<u32>]) -> u32 {
        let n = m.len();
        let mut det = 1u32;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else {
                return 0;
            };
            if piv != c {
                m.swap(piv, c);
                det = self.neg(det);
            }
            det = self.mul(det, m[c][c]);
            let inv = self.inv(m[c][c]);
            for r in c + 1..n {
                if m[r][c] == 0 {
                    continue;
                }
                let k = self.mul(m[r][c], inv);
                for j in c..n {
                    let t = self.mul(k, m[c][j]);
                    m[r][j] = self.sub(m[r][j], t);
                }
            }
        }
        det
    }
}

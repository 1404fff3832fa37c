use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::padic;
use crate::error::{Error, Result};

/// Homothety class of a lattice in Q_p^d, stored by its canonical
/// column Hermite normal form: upper triangular, diagonal entries powers
/// of p, entry (i, j) with j > i reduced into [0, hnf[i][i]), contained in
/// Z_p^d but not in p·Z_p^d.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeClass {
    d: usize,
    p: u64,
    hnf: Vec<Vec<BigInt>>,
}

impl fmt::Debug for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.hnf.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let s: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", s.join(" "))?;
        }
        write!(f, "]")
    }
}

impl LatticeClass {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn hnf(&self) -> &[Vec<BigInt>] {
        &self.hnf
    }

    /// The standard lattice Z_p^d.
    pub fn standard(d: usize, p: u64) -> Self {
        let mut hnf = vec![vec![BigInt::zero(); d]; d];
        for (i, row) in hnf.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        LatticeClass { d, p, hnf }
    }

    /// The class of diag(p^{e_1}, …, p^{e_d})·Z_p^d.
    pub fn diagonal(p: u64, exps: &[i64]) -> Self {
        let d = exps.len();
        let lo = *exps.iter().min().unwrap();
        let mut hnf = vec![vec![BigInt::zero(); d]; d];
        for i in 0..d {
            hnf[i][i] = padic::pow(p, (exps[i] - lo) as u32);
        }
        LatticeClass { d, p, hnf }
    }

    pub fn diag_exponents(&self) -> Vec<u32> {
        (0..self.d).map(|i| padic::val(&self.hnf[i][i], self.p).unwrap()).collect()
    }

    /// Column j of the canonical representative.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.hnf.iter().map(|row| row[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.d).map(|j| self.column(j)).collect()
    }

    /// Smallest a with p^a·Z_p^d contained in the representative.
    pub fn spread(&self) -> u32 {
        // the largest elementary divisor of an upper triangular HNF is bounded
        // by the determinant; compute it exactly from the inverse
        let inv = inverse_upper(&self.hnf);
        let mut a = 0;
        for row in &inv {
            for x in row {
                if !x.is_zero() {
                    let v = padic::val(x.denom(), self.p).unwrap_or(0);
                    let w = padic::val(x.numer(), self.p).unwrap_or(0);
                    a = a.max(v.saturating_sub(w));
                }
            }
        }
        a
    }

    pub fn to_int_rows(&self) -> Vec<Vec<i64>> {
        self.hnf.iter().map(|r| r.iter().map(|x| x.to_i64().expect("entry overflows i64")).collect()).collect()
    }
}

/// Inverse of an upper triangular integer matrix with nonzero diagonal.
pub fn inverse_upper(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    let d = m.len();
    let mut inv = vec![vec![BigRational::zero(); d]; d];
    for j in 0..d {
        for i in (0..=j).rev() {
            let mut s = if i == j { BigRational::one() } else { BigRational::zero() };
            for k in i + 1..=j {
                s -= BigRational::from_integer(m[i][k].clone()) * &inv[k][j];
            }
            inv[i][j] = s / BigRational::from_integer(m[i][i].clone());
        }
    }
    inv
}

fn det_integer(cols: &[Vec<BigInt>]) -> BigInt {
    let d = cols.len();
    let mut m: Vec<Vec<BigInt>> = (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..d {
        let Some(p) = (k..d).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[d - 1][d - 1].clone()
}

/// Canonical representative of the lattice spanned by the given columns.
/// Entries may be any rationals; denominators prime to p only rescale by
/// units and do not change the lattice.
pub fn canonicalize(p: u64, columns: &[Vec<BigRational>]) -> Result<LatticeClass> {
    let d = columns.len();
    if d == 0 || columns.iter().any(|c| c.len() != d) {
        return Err(Error::NotALatticeBasis);
    }
    let mut l = BigInt::one();
    for c in columns {
        for x in c {
            l = l.lcm(x.denom());
        }
    }
    let ints: Vec<Vec<BigInt>> = columns
        .iter()
        .map(|c| c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect())
        .collect();
    canonicalize_integer(p, &ints)
}

/// As [`canonicalize`] for integer columns.
pub fn canonicalize_integer(p: u64, columns: &[Vec<BigInt>]) -> Result<LatticeClass> {
    let d = columns.len();
    if d == 0 || columns.iter().any(|c| c.len() != d) {
        return Err(Error::NotALatticeBasis);
    }
    let det = det_integer(columns);
    if det.is_zero() {
        return Err(Error::NotALatticeBasis);
    }
    let k = padic::val(&det, p).unwrap();
    let modulus = padic::pow(p, k + 1);
    let pk = padic::pow(p, k);
    // generators: the columns plus p^k e_i (the lattice contains p^k Z_p^d)
    let mut gens: Vec<Vec<BigInt>> =
        columns.iter().map(|c| c.iter().map(|x| x.mod_floor(&modulus)).collect()).collect();
    for i in 0..d {
        let mut e = vec![BigInt::zero(); d];
        e[i] = pk.clone();
        gens.push(e);
    }
    let mut h: Vec<Vec<BigInt>> = vec![Vec::new(); d];
    let mut exps = vec![0u32; d];
    for r in (0..d).rev() {
        let mut best: Option<(u32, usize)> = None;
        for (gi, g) in gens.iter().enumerate() {
            if g[r].is_zero() {
                continue;
            }
            let v = padic::val(&g[r], p).unwrap();
            if best.is_none_or(|(bv, _)| v < bv) {
                best = Some((v, gi));
            }
        }
        let (v, gi) = best.expect("p^k e_r keeps every row nonzero");
        let mut piv = gens.swap_remove(gi);
        let unit = &piv[r] / padic::pow(p, v);
        let uinv = padic::inv_mod(&unit, &modulus);
        for x in piv.iter_mut() {
            *x = (&*x * &uinv).mod_floor(&modulus);
        }
        let pv = padic::pow(p, v);
        for g in gens.iter_mut() {
            if g[r].is_zero() {
                continue;
            }
            let c = &g[r] / &pv;
            for (x, y) in g.iter_mut().zip(&piv) {
                *x = (&*x - &c * y).mod_floor(&modulus);
            }
        }
        exps[r] = v;
        h[r] = piv;
    }
    // h[j] is column j; reduce entries above the diagonal
    for j in 0..d {
        for i in (0..j).rev() {
            let pi = padic::pow(p, exps[i]);
            let c = h[j][i].div_floor(&pi);
            if c.is_zero() {
                continue;
            }
            let col_i = h[i].clone();
            for (x, y) in h[j].iter_mut().zip(&col_i) {
                *x = (&*x - &c * y).mod_floor(&modulus);
            }
        }
    }
    // remove the common p-power
    let mut t = u32::MAX;
    for col in &h {
        for x in col {
            if let Some(v) = padic::val(x, p) {
                t = t.min(v);
            }
        }
    }
    let pt = padic::pow(p, t);
    let hnf = (0..d).map(|i| (0..d).map(|j| &h[j][i] / &pt).collect()).collect();
    Ok(LatticeClass { d, p, hnf })
}

pub fn from_int_columns(p: u64, columns: &[Vec<i64>]) -> Result<LatticeClass> {
    let c: Vec<Vec<BigInt>> = columns.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
    canonicalize_integer(p, &c)
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    d: usize,
    p: u64,
    hnf: Vec<Vec<i64>>,
}

impl Serialize for LatticeClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeJson { d: self.d, p: self.p, hnf: self.to_int_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeClass {
    /// Accepts any basis matrix (rows) and canonicalizes it.
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = LatticeJson::deserialize(de)?;
        if j.hnf.len() != j.d || j.hnf.iter().any(|r| r.len() != j.d) {
            return Err(D::Error::custom("hnf must be a d×d matrix"));
        }
        if j.p < 2 || !crate::arith::is_prime(j.p) {
            return Err(D::Error::custom("p must be prime"));
        }
        let cols: Vec<Vec<i64>> = (0..j.d).map(|c| (0..j.d).map(|r| j.hnf[r][c]).collect()).collect();
        from_int_columns(j.p, &cols).map_err(D::Error::custom)
    }
}

/// The class of x expressed in the coordinates of the canonical basis of b.
pub fn rebase(b: &LatticeClass, x: &LatticeClass) -> Result<LatticeClass> {
    if b.d != x.d {
        return Err(Error::DimensionMismatch(b.d, x.d));
    }
    let inv = inverse_upper(&b.hnf);
    let d = b.d;
    let cols: Vec<Vec<BigRational>> = (0..d)
        .map(|j| {
            (0..d)
                .map(|i| {
                    let mut s = BigRational::zero();
                    for k in 0..d {
                        s += &inv[i][k] * BigRational::from_integer(x.hnf[k][j].clone());
                    }
                    s
                })
                .collect()
        })
        .collect();
    canonicalize(b.p, &cols)
}

//! Points of P^{d−1} or of the full flag space over Z/p^M, and their
//! residue classes relative to vertex lattices.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::building::{padic, LatticeClass};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseSpace {
    Projective,
    Flag,
}

impl BaseSpace {
    /// Number of flag columns kept (lines for P^{d−1}, d−1 for full flags).
    pub fn columns(&self, d: usize) -> usize {
        match self {
            BaseSpace::Projective => 1,
            BaseSpace::Flag => d - 1,
        }
    }

    /// Level needed so that residue classes of vertices whose lattices
    /// lie between p^a Z^d and Z^d are determined (with precision to spare
    /// for saturation).
    pub fn min_level(&self, d: usize, spread: u32) -> u32 {
        match self {
            BaseSpace::Projective => spread + 1,
            BaseSpace::Flag => (d as u32 - 1) * spread + 1,
        }
    }

    pub fn point_count(&self, d: usize, p: u64, m: u32) -> u128 {
        let gauss = |n: usize| -> u128 { (0..n).map(|i| (p as u128).pow(i as u32)).sum() };
        match self {
            BaseSpace::Projective => (p as u128).pow((m - 1) * (d as u32 - 1)) * gauss(d),
            BaseSpace::Flag => {
                let mut c: u128 = (p as u128).pow((m - 1) * (d * (d - 1) / 2) as u32);
                for i in 1..=d {
                    c *= gauss(i);
                }
                c
            }
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "projective" | "proj" => Ok(BaseSpace::Projective),
            "flag" | "flags" => Ok(BaseSpace::Flag),
            _ => Err(Error::Invalid(format!("unknown base space '{s}'"))),
        }
    }
}

/// Arithmetic modulo p^M in u64.
#[derive(Debug, Clone, Copy)]
pub struct ModRing {
    pub p: u64,
    pub m: u32,
    pub pm: u64,
}

impl ModRing {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        let pm = p.checked_pow(m).filter(|&x| x < (1 << 31)).ok_or_else(|| Error::BudgetExceeded {
            what: "modulus p^M",
            needed: (p as u128).saturating_pow(m),
            budget: 1 << 31,
        })?;
        Ok(ModRing { p, m, pm })
    }

    pub fn val(&self, x: u64) -> u32 {
        if x.is_multiple_of(self.pm) {
            return self.m;
        }
        let mut v = 0;
        let mut x = x;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn inv(&self, u: u64) -> u64 {
        padic::inv_mod(&BigInt::from(u), &BigInt::from(self.pm)).to_u64().unwrap()
    }
}

/// Canonical basis of a partial flag: column j has a 1 in its pivot row,
/// which is the first row where it is a unit after clearing the earlier
/// pivot rows. Returns `None` if the columns are not part of a basis.
pub fn canonical_flag(r: &ModRing, cols: &[Vec<u64>]) -> Option<Vec<u64>> {
    let d = cols.first()?.len();
    let mut out: Vec<Vec<u64>> = Vec::with_capacity(cols.len());
    let mut pivots: Vec<usize> = Vec::new();
    for c in cols {
        let mut v: Vec<u64> = c.iter().map(|x| x % r.pm).collect();
        for (b, &pr) in out.iter().zip(&pivots) {
            let k = v[pr];
            if k != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + r.pm - k * y % r.pm) % r.pm;
                }
            }
        }
        let piv = (0..d).find(|&i| !v[i].is_multiple_of(r.p))?;
        let inv = r.inv(v[piv]);
        for x in v.iter_mut() {
            *x = *x * inv % r.pm;
        }
        pivots.push(piv);
        out.push(v);
    }
    Some(out.into_iter().flatten().collect())
}

/// All points of the base space at level M, in sorted order.
pub fn enumerate_points(space: BaseSpace, d: usize, p: u64, m: u32, budget: u128) -> Result<Vec<Vec<u64>>> {
    let needed = space.point_count(d, p, m);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "base space points", needed, budget });
    }
    let r = ModRing::new(p, m)?;
    let k = space.columns(d);
    let start: Vec<Vec<u64>> = (0..k).map(|j| (0..d).map(|i| u64::from(i == j)).collect()).collect();
    let s0 = canonical_flag(&r, &start).unwrap();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(s0.clone());
    queue.push_back(s0);
    // SL_d(Z/p^M) is generated by the transvections 1 + E_ij and acts
    // transitively on flags of every type
    while let Some(pt) = queue.pop_front() {
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let cols: Vec<Vec<u64>> = (0..k)
                    .map(|c| {
                        let mut v = pt[c * d..(c + 1) * d].to_vec();
                        v[i] = (v[i] + v[j]) % r.pm;
                        v
                    })
                    .collect();
                let q = canonical_flag(&r, &cols).expect("transvections preserve bases");
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
    }
    let mut pts: Vec<Vec<u64>> = seen.into_iter().collect();
    pts.sort();
    if pts.len() as u128 != needed {
        return Err(Error::Invalid(format!("enumerated {} points, expected {needed}", pts.len())));
    }
    Ok(pts)
}

/// Reduced row echelon form over F_p, rows normalized to leading one.
pub fn rref_mod_p(p: u64, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let f = crate::linalg::PrimeField::new(p);
    let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let width = rows.first().map_or(0, |r| r.len());
    crate::linalg::rref_rows(&f, rows, width).0
}

/// Residue classes relative to one vertex lattice, given in base coordinates.
pub struct VertexFrame {
    pub spread: u32,
    /// p^spread · H^{-1} mod p^M, rows.
    pub a: Vec<Vec<u64>>,
}

impl VertexFrame {
    pub fn new(x: &LatticeClass, r: &ModRing) -> Self {
        let spread = x.spread();
        let d = x.d();
        let inv = crate::building::inverse_upper(x.hnf());
        let scale = num_rational::BigRational::from_integer(padic::pow(x.p(), spread));
        let pm = BigInt::from(r.pm);
        let a = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let e = &inv[i][j] * &scale;
                        assert!(e.is_integer());
                        e.to_integer().mod_floor(&pm).to_u64().unwrap()
                    })
                    .collect()
            })
            .collect();
        VertexFrame { spread, a }
    }

    /// The residue flag of the point in Λ_x/pΛ_x, encoded as concatenated
    /// echelon bases of its successive subspaces.
    pub fn residue_key(&self, r: &ModRing, point: &[u64], k: usize) -> Result<Vec<u64>> {
        let d = self.a.len();
        let mut prec = r.m;
        let mut basis: Vec<Vec<u64>> = Vec::with_capacity(k);
        let mut pivots: Vec<usize> = Vec::with_capacity(k);
        let mut key = Vec::new();
        for j in 0..k {
            let s = &point[j * d..(j + 1) * d];
            let mut w: Vec<u64> =
                (0..d).map(|i| (0..d).fold(0u64, |acc, l| (acc + self.a[i][l] * s[l]) % r.pm)).collect();
            let mut modp = r.p.pow(prec);
            for (b, &pr) in basis.iter().zip(&pivots) {
                let c = w[pr] % modp;
                if c != 0 {
                    for (x, y) in w.iter_mut().zip(b) {
                        *x = (*x % modp + modp - c * y % modp) % modp;
                    }
                }
            }
            for x in w.iter_mut() {
                *x %= modp;
            }
            let c = w.iter().map(|&x| if x == 0 { prec } else { r.val(x).min(prec) }).min().unwrap();
            if c >= prec {
                return Err(Error::LevelTooSmall(format!("residue flag needs more than {} digits", r.m)));
            }
            let pc = r.p.pow(c);
            prec -= c;
            modp = r.p.pow(prec);
            for x in w.iter_mut() {
                *x = (*x / pc) % modp;
            }
            let piv = (0..d).find(|&i| !w[i].is_multiple_of(r.p)).unwrap();
            let sub = ModRing { p: r.p, m: prec, pm: modp };
            let inv = sub.inv(w[piv]);
            for x in w.iter_mut() {
                *x = *x * inv % modp;
            }
            for b in basis.iter_mut() {
                for x in b.iter_mut() {
                    *x %= modp;
                }
                let c = b[piv];
                if c != 0 {
                    for (x, y) in b.iter_mut().zip(&w) {
                        *x = (*x + modp - c * y % modp) % modp;
                    }
                }
            }
            basis.push(w);
            pivots.push(piv);
            for row in rref_mod_p(r.p, &basis) {
                key.extend(row);
            }
        }
        Ok(key)
    }
}

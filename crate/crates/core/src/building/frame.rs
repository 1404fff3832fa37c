//! Simultaneously adapted bases, relative position, enclos and tight paths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{canonicalize_integer, inverse_upper, LatticeClass};
use super::padic;
use crate::error::{Error, Result};

/// Elementary divisor exponents a_1 ≥ … ≥ a_d = 0 of y relative to x.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelativePosition {
    pub a: Vec<u32>,
}

impl RelativePosition {
    pub fn distance(&self) -> u32 {
        self.a[0]
    }

    /// Position of x relative to y.
    pub fn reversed(&self) -> RelativePosition {
        let d = self.a.len();
        let top = self.a[0];
        RelativePosition { a: (0..d).map(|i| top - self.a[d - 1 - i]).collect() }
    }
}

/// A basis f_1, …, f_d of the lattice of x such that y is the class of
/// span(p^{a_i} f_i), ordered so that a is weakly decreasing.
#[derive(Debug, Clone)]
pub struct AdaptedFrame {
    pub x: LatticeClass,
    pub a: Vec<u32>,
    /// f_i as integer columns in standard coordinates.
    pub basis: Vec<Vec<BigInt>>,
    /// f_i in the coordinates of the canonical basis of x.
    pub local: Vec<Vec<BigInt>>,
}

fn check_pair(x: &LatticeClass, y: &LatticeClass) -> Result<()> {
    if x.d() != y.d() {
        return Err(Error::DimensionMismatch(x.d(), y.d()));
    }
    if x.p() != y.p() {
        return Err(Error::PrimeMismatch(x.p(), y.p()));
    }
    Ok(())
}

pub fn adapted_frame(x: &LatticeClass, y: &LatticeClass) -> Result<AdaptedFrame> {
    check_pair(x, y)?;
    let (d, p) = (x.d(), x.p());
    let binv = inverse_upper(x.hnf());
    // m = B_x^{-1} B_y, then cleared of denominators
    let mut m = vec![vec![BigRational::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut s = BigRational::zero();
            for k in 0..d {
                if !y.hnf()[k][j].is_zero() {
                    s += &binv[i][k] * BigRational::from_integer(y.hnf()[k][j].clone());
                }
            }
            m[i][j] = s;
        }
    }
    let mut l = BigInt::one();
    for row in &m {
        for e in row {
            l = l.lcm(e.denom());
        }
    }
    let lr = BigRational::from_integer(l);
    let mut m: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|e| (e * &lr).to_integer()).collect()).collect();
    // v_p(det) = v_p(det B_y) - v_p(det B_x) + d·v_p(l)
    let vdet: i64 = y.diag_exponents().iter().map(|&e| e as i64).sum::<i64>()
        - x.diag_exponents().iter().map(|&e| e as i64).sum::<i64>()
        + d as i64 * padic::val(lr.numer(), p).unwrap() as i64;
    let n = vdet as u32 + 1;
    let modulus = padic::pow(p, n);
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e = e.mod_floor(&modulus);
        }
    }
    let mut uinv: Vec<Vec<BigInt>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut c = vec![0u32; d];
    for t in 0..d {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in t..d {
            for j in t..d {
                if m[i][j].is_zero() {
                    continue;
                }
                let v = padic::val(&m[i][j], p).unwrap();
                if best.is_none_or(|b| (v, i, j) < b) {
                    best = Some((v, i, j));
                }
            }
        }
        let (v, bi, bj) = best.expect("nonsingular modulo p^n");
        m.swap(t, bi);
        for row in uinv.iter_mut() {
            row.swap(t, bi);
        }
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let pv = padic::pow(p, v);
        let unit = &m[t][t] / &pv;
        let uinv_unit = padic::inv_mod(&unit, &modulus);
        for e in m[t].iter_mut() {
            *e = (&*e * &uinv_unit).mod_floor(&modulus);
        }
        for row in uinv.iter_mut() {
            row[t] = (&row[t] * &unit).mod_floor(&modulus);
        }
        for i in t + 1..d {
            if m[i][t].is_zero() {
                continue;
            }
            let k = &m[i][t] / &pv;
            let top = m[t].clone();
            for (e, s) in m[i].iter_mut().zip(&top) {
                *e = (&*e - &k * s).mod_floor(&modulus);
            }
            for row in uinv.iter_mut() {
                row[t] = (&row[t] + &k * &row[i]).mod_floor(&modulus);
            }
        }
        for j in t + 1..d {
            if m[t][j].is_zero() {
                continue;
            }
            let k = &m[t][j] / &pv;
            for row in m.iter_mut() {
                let s = row[t].clone();
                row[j] = (&row[j] - &k * s).mod_floor(&modulus);
            }
        }
        c[t] = v;
    }
    // order by decreasing exponent, later pivots first among equals
    let order: Vec<usize> = (0..d).rev().collect();
    let cmin = *c.iter().min().unwrap();
    let a: Vec<u32> = order.iter().map(|&t| c[t] - cmin).collect();
    let local: Vec<Vec<BigInt>> = order.iter().map(|&t| uinv.iter().map(|row| row[t].clone()).collect()).collect();
    let basis = local
        .iter()
        .map(|col| {
            (0..d)
                .map(|i| {
                    let mut s = BigInt::zero();
                    for k in 0..d {
                        s += &x.hnf()[i][k] * &col[k];
                    }
                    s
                })
                .collect()
        })
        .collect();
    Ok(AdaptedFrame { x: x.clone(), a, basis, local })
}

impl AdaptedFrame {
    /// The vertex with apartment coordinates v (length d−1 or d with last 0).
    pub fn vertex(&self, v: &[u32]) -> LatticeClass {
        let d = self.basis.len();
        let cols: Vec<Vec<BigInt>> = (0..d)
            .map(|i| {
                let e = if i < v.len() { v[i] } else { 0 };
                let s = padic::pow(self.x.p(), e);
                self.basis[i].iter().map(|b| b * &s).collect()
            })
            .collect();
        canonicalize_integer(self.x.p(), &cols).expect("frame columns are a basis")
    }

    pub fn position(&self) -> RelativePosition {
        RelativePosition { a: self.a.clone() }
    }
}

pub fn relative_position(x: &LatticeClass, y: &LatticeClass) -> Result<RelativePosition> {
    Ok(adapted_frame(x, y)?.position())
}

pub fn distance(x: &LatticeClass, y: &LatticeClass) -> Result<u32> {
    Ok(relative_position(x, y)?.distance())
}

pub fn adjacent(x: &LatticeClass, y: &LatticeClass) -> Result<bool> {
    Ok(x != y && distance(x, y)? <= 1)
}

/// Apartment coordinates (v_1, …, v_{d−1}) of the enclos of 0 and a.
pub fn enclos_coordinates(a: &[u32]) -> Vec<Vec<u32>> {
    let d = a.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(a: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let d = a.len();
        let i = cur.len();
        if i == d - 1 {
            // close with v_d = 0, a_d = 0: need a_{d-1} - v_{d-1} >= 0
            if d == 1 || a[d - 2] >= cur[d - 2] {
                out.push(cur.clone());
            }
            return;
        }
        let hi = if i == 0 { a[0] } else { cur[i - 1] };
        for v in 0..=hi.min(a[i]) {
            if i > 0 {
                // (a_{i-1} - v_{i-1}) >= (a_i - v)
                let prev = a[i - 1] as i64 - cur[i - 1] as i64;
                if prev < a[i] as i64 - v as i64 {
                    continue;
                }
            }
            cur.push(v);
            rec(a, cur, out);
            cur.pop();
        }
    }
    rec(a, &mut cur, &mut out);
    out
}

/// All vertices of (x + C) ∩ (y − C), sorted.
pub fn enclos(x: &LatticeClass, y: &LatticeClass) -> Result<Vec<LatticeClass>> {
    let fr = adapted_frame(x, y)?;
    let mut out: Vec<LatticeClass> = enclos_coordinates(&fr.a).iter().map(|v| fr.vertex(v)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Canonical tight path from y to x: every positive coordinate drops by one per step.
pub fn tight_path(y: &LatticeClass, x: &LatticeClass) -> Result<Vec<LatticeClass>> {
    let fr = adapted_frame(x, y)?;
    let mut v = fr.a.clone();
    let mut path = vec![fr.vertex(&v)];
    while v[0] > 0 {
        for e in v.iter_mut() {
            *e = e.saturating_sub(1);
        }
        path.push(fr.vertex(&v));
    }
    Ok(path)
}

/// Checks that the sequence is a tight path ending at its last vertex.
pub fn is_tight_path(path: &[LatticeClass]) -> Result<bool> {
    let Some(x) = path.last() else {
        return Ok(false);
    };
    for w in path.windows(2) {
        if !adjacent(&w[0], &w[1])? {
            return Ok(false);
        }
        if enclos(x, &w[0])?.binary_search(&w[1]).is_err() {
            return Ok(false);
        }
    }
    let mut seen = path.to_vec();
    seen.sort();
    seen.dedup();
    Ok(seen.len() == path.len())
}

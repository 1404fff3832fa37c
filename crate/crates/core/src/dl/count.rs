use rayon::prelude::*;
use serde::Serialize;

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::ffield::FiniteField;

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

fn field_for(q: u64, m: u32) -> Result<FiniteField> {
    let (p, r) = prime_power(q).ok_or_else(|| Error::Invalid(format!("q={q} is not a prime power")))?;
    FiniteField::new(p, r, m)
}

fn check_budget(size: u64, d: u32, budget: u128) -> Result<()> {
    let needed = (size as u128).checked_pow(d).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "point enumeration", needed, budget });
    }
    Ok(())
}

/// Whether the tuple lies on the variety; `frob[j][x] = x^{q^j}`.
fn on_variety(k: &FiniteField, frob: &[Vec<u32>], x: &[u32], target: u32) -> bool {
    let d = x.len();
    let mut m: Vec<Vec<u32>> = (0..d).map(|j| x.iter().map(|&xi| frob[j][xi as usize]).collect()).collect();
    let det = k.det(&mut m);
    det != 0 && k.pow(det, k.q - 1) == target
}

fn frobenius_tables(k: &FiniteField, d: u32) -> Vec<Vec<u32>> {
    (0..d).map(|j| k.elements().map(|x| k.frob(x, j)).collect()).collect()
}

/// Enumerates F^d in parallel over the first coordinate.
fn count_tuples<P>(k: &FiniteField, d: u32, pred: P) -> u64
where
    P: Fn(&[u32]) -> bool + Sync,
{
    let size = k.size as u32;
    (0..size)
        .into_par_iter()
        .map(|x0| {
            let mut x = vec![0u32; d as usize];
            x[0] = x0;
            let mut count = 0u64;
            loop {
                if pred(&x) {
                    count += 1;
                }
                let mut i = 1;
                loop {
                    if i == d as usize {
                        return count;
                    }
                    x[i] += 1;
                    if x[i] < size {
                        break;
                    }
                    x[i] = 0;
                    i += 1;
                }
            }
        })
        .sum()
}

/// Number of F_{q^m}-points, by exhaustive evaluation of the Moore determinant.
pub fn count_points(d: u32, q: u64, m: u32, budget: u128) -> Result<u64> {
    if d == 0 || m == 0 {
        return Err(Error::Invalid("d and m must be positive".into()));
    }
    let (p, r) = prime_power(q).ok_or_else(|| Error::Invalid(format!("q={q} is not a prime power")))?;
    check_budget((p as u128).pow(r * m).min(u64::MAX as u128) as u64, d, budget)?;
    let k = field_for(q, m)?;
    let frob = frobenius_tables(&k, d);
    let target = k.from_int(if d % 2 == 1 { 1 } else { -1 });
    Ok(count_tuples(&k, d, |x| on_variety(&k, &frob, x, target)))
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointData {
    pub count: u64,
    /// the points are defined over F_{q^{m·lift}}
    pub lift: u32,
}

/// Points with X = ζ·g·F^m(X), for g ∈ GL_d(F_p) given by integer entries and
/// ζ = η^k where η generates μ_{q^d−1} inside the enumeration field.
pub fn fixed_points(d: u32, q: u64, g: &[Vec<i64>], zeta_exp: u64, m: u32, budget: u128) -> Result<FixedPointData> {
    let (p, r) = prime_power(q).ok_or_else(|| Error::Invalid(format!("q={q} is not a prime power")))?;
    if g.len() != d as usize || g.iter().any(|row| row.len() != d as usize) {
        return Err(Error::DimensionMismatch(d as usize, g.len()));
    }
    let gp: Vec<Vec<u64>> = g.iter().map(|row| row.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect()).collect();
    let order_g = matrix_order_mod_p(&gp, p).ok_or_else(|| Error::Invalid("g is not invertible mod p".into()))?;
    let qd1 = (q as u128).pow(d) - 1;
    let zeta_order = qd1 / crate::arith::gcd((zeta_exp as u128 % qd1) as u64, qd1 as u64).max(1) as u128;
    let zeta_order = if (zeta_exp as u128).is_multiple_of(qd1) { 1 } else { zeta_order };
    // smallest L with g^L = 1, d | mL and N(ζ) = 1, so that fixed points are F_{q^{mL}}-rational
    let mut lift = None;
    for l in 1..=(order_g * d as u64 * 64) as u32 {
        if !(l as u64).is_multiple_of(order_g) || !(m * l).is_multiple_of(d) {
            continue;
        }
        let qm = (q as u128).pow(m);
        let mut norm_exp = 0u128;
        let mut pw = 1u128;
        for _ in 0..l {
            norm_exp = (norm_exp + pw) % zeta_order;
            pw = pw * qm % zeta_order;
        }
        if norm_exp.is_multiple_of(zeta_order) {
            lift = Some(l);
            break;
        }
    }
    let lift = lift.ok_or_else(|| Error::Unsupported("no rational model for the twisted Frobenius".into()))?;
    let deg = r * m * lift;
    let size = (p as u128).checked_pow(deg).unwrap_or(u128::MAX);
    check_budget(size.min(u64::MAX as u128) as u64, d, budget)?;
    let k = FiniteField::new(p, r, m * lift)?;
    let frob = frobenius_tables(&k, d);
    let target = k.from_int(if d % 2 == 1 { 1 } else { -1 });
    let eta_step = (k.size - 1) / qd1 as u64;
    let zeta = k.from_log((zeta_exp as u128 % qd1) as u64 * eta_step);
    let gk: Vec<Vec<u32>> = gp.iter().map(|row| row.iter().map(|&v| k.from_int(v as i64)).collect()).collect();
    let count = count_tuples(&k, d, |x| {
        let fx: Vec<u32> = x.iter().map(|&xi| k.frob(xi, m)).collect();
        for i in 0..d as usize {
            let mut s = 0;
            for j in 0..d as usize {
                s = k.add(s, k.mul(gk[i][j], fx[j]));
            }
            if k.mul(zeta, s) != x[i] {
                return false;
            }
        }
        on_variety(&k, &frob, x, target)
    });
    Ok(FixedPointData { count, lift })
}

fn matrix_order_mod_p(g: &[Vec<u64>], p: u64) -> Option<u64> {
    let d = g.len();
    let id: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as u64).collect()).collect();
    let mut cur = g.to_vec();
    let bound = (p as u128).pow(d as u32 * d as u32).min(1 << 20) as u64;
    for n in 1..=bound {
        if cur == id {
            return Some(n);
        }
        cur = (0..d).map(|i| (0..d).map(|j| (0..d).map(|t| cur[i][t] * g[t][j]).sum::<u64>() % p).collect()).collect();
    }
    None
}

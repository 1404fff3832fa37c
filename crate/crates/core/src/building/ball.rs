use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use super::lattice::{canonicalize_integer, LatticeClass};
use super::padic;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Number of upper triangular Hermite forms enumerated by [`ball`].
pub fn ball_candidates(d: usize, p: u64, r: u32) -> u128 {
    let mut total: u128 = 1;
    for i in 0..d {
        let free = (d - 1 - i) as u32;
        let mut s: u128 = 0;
        for k in 0..=r {
            s = s.saturating_add((p as u128).saturating_pow(k * free));
        }
        total = total.saturating_mul(s);
    }
    total
}

/// All vertices at distance at most r from the center, sorted.
///
/// Such a vertex has a unique representative Λ with p^r Λ_c ⊆ Λ ⊆ Λ_c and
/// Λ ⊄ p Λ_c; these are enumerated through their Hermite forms in the
/// coordinates of Λ_c.
pub fn ball(center: &LatticeClass, r: u32, budget: u128) -> Result<Vec<LatticeClass>> {
    let (d, p) = (center.d(), center.p());
    let needed = ball_candidates(d, p, r);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "ball", needed, budget });
    }
    let mut shapes = Vec::new();
    let mut cur = Vec::new();
    diag_shapes(d, r, &mut cur, &mut shapes);
    let c = center.hnf();
    let mut out: Vec<LatticeClass> = shapes
        .par_iter()
        .flat_map_iter(|exps| {
            let mut found = Vec::new();
            for h in hermite_forms(p, exps) {
                if !contains_scaled_standard(p, &h, exps, r) {
                    continue;
                }
                if h.iter().flatten().all(|x| padic::val(x, p).is_none_or(|v| v >= 1)) {
                    continue;
                }
                // columns of B_c · h
                let cols: Vec<Vec<BigInt>> = (0..d)
                    .map(|j| {
                        (0..d)
                            .map(|i| {
                                let mut s = BigInt::zero();
                                for k in 0..d {
                                    s += &c[i][k] * &h[k][j];
                                }
                                s
                            })
                            .collect()
                    })
                    .collect();
                found.push(canonicalize_integer(p, &cols).expect("nonsingular"));
            }
            found
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn diag_shapes(d: usize, r: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == d {
        out.push(cur.clone());
        return;
    }
    for k in 0..=r {
        cur.push(k);
        diag_shapes(d, r, cur, out);
        cur.pop();
    }
}

/// All upper triangular matrices (rows) with diagonal p^{exps[i]} and
/// entry (i, j), j > i, in [0, p^{exps[i]}).
fn hermite_forms(p: u64, exps: &[u32]) -> Vec<Vec<Vec<BigInt>>> {
    let d = exps.len();
    let slots: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let mut base = vec![vec![BigInt::zero(); d]; d];
    for i in 0..d {
        base[i][i] = padic::pow(p, exps[i]);
    }
    let mut out = Vec::new();
    fn rec(
        p: u64,
        exps: &[u32],
        slots: &[(usize, usize)],
        k: usize,
        m: &mut Vec<Vec<BigInt>>,
        out: &mut Vec<Vec<Vec<BigInt>>>,
    ) {
        if k == slots.len() {
            out.push(m.clone());
            return;
        }
        let (i, j) = slots[k];
        let bound = p.pow(exps[i]);
        for v in 0..bound {
            m[i][j] = BigInt::from(v);
            rec(p, exps, slots, k + 1, m, out);
        }
        m[i][j] = BigInt::zero();
    }
    rec(p, exps, &slots, 0, &mut base, &mut out);
    out
}

/// Whether p^r Z^d ⊆ h Z^d, by exact back substitution.
fn contains_scaled_standard(p: u64, h: &[Vec<BigInt>], exps: &[u32], r: u32) -> bool {
    let d = h.len();
    let pr = padic::pow(p, r);
    for j in 0..d {
        let mut x = vec![BigInt::zero(); d];
        for i in (0..d).rev() {
            let mut b = if i == j { pr.clone() } else { BigInt::zero() };
            for k in i + 1..d {
                b -= &h[i][k] * &x[k];
            }
            let (q, rem) = b.div_rem(&padic::pow(p, exps[i]));
            if !rem.is_zero() {
                return false;
            }
            x[i] = q;
        }
    }
    true
}

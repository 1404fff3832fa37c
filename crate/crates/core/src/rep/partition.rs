use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A partition, parts weakly decreasing and positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// (i+1, 1^{e−1−i}).
    pub fn hook(e: u32, i: u32) -> Self {
        assert!(i < e);
        let mut parts = vec![i + 1];
        parts.extend(std::iter::repeat_n(1, (e - 1 - i) as usize));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_hook(&self) -> bool {
        self.0.iter().skip(1).all(|&p| p == 1)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// self ⊵ other in dominance order.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for k in 0..self.len().max(other.len()) {
            a += self.0.get(k).copied().unwrap_or(0);
            b += other.0.get(k).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Hook lengths of all cells, row by row.
    pub fn hook_lengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::new();
        for (r, &row) in self.0.iter().enumerate() {
            for c in 0..row {
                out.push(row - c + conj.0[c as usize] - r as u32 - 1);
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = t
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Invalid(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of n in reverse lexicographic order, starting with (n).
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// n! / Π hook lengths.
pub fn specht_dim(lambda: &Partition) -> BigInt {
    let mut num = BigInt::one();
    for k in 2..=lambda.size() {
        num *= k;
    }
    let den: BigInt = lambda.hook_lengths().into_iter().map(BigInt::from).product();
    num / den
}

/// Number of semistandard tableaux of shape λ and content μ, counted by
/// building them one value at a time as horizontal strips.
pub fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    fn rec(shape: &[u32], target: &[u32], content: &[u32]) -> u64 {
        let Some((&c, rest)) = content.split_first() else {
            return (shape == target) as u64;
        };
        // add a horizontal strip of size c: row k gains at most (old row k−1) − (old row k)
        let mut total = 0;
        let mut next = shape.to_vec();
        fn strips(k: usize, left: u32, shape: &[u32], target: &[u32], next: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
            if k == shape.len() {
                if left == 0 {
                    f(next);
                }
                return;
            }
            let cap = if k == 0 { target[0] - shape[0] } else { (shape[k - 1] - shape[k]).min(target[k] - shape[k]) };
            for add in 0..=cap.min(left) {
                next[k] = shape[k] + add;
                strips(k + 1, left - add, shape, target, next, f);
            }
            next[k] = shape[k];
        }
        let mut sub = |s: &[u32]| total += rec(s, target, rest);
        strips(0, c, shape, target, &mut next, &mut sub);
        total
    }
    let target = lambda.parts().to_vec();
    rec(&vec![0; target.len()], &target, mu.parts())
}

/// Kostka numbers K_{λ,μ} for λ, μ ⊢ n, rows and columns in `partitions(n)` order.
pub fn kostka_matrix(n: u32) -> (Vec<Partition>, Matrix<i64>) {
    let parts = partitions(n);
    let k = parts.len();
    let cells: Vec<i64> =
        (0..k * k).into_par_iter().map(|idx| kostka(&parts[idx / k], &parts[idx % k]) as i64).collect();
    (parts, Matrix { rows: k, cols: k, data: cells })
}

/// a_{λ,μ} with [S_λ] = Σ_μ a_{λ,μ}[Ind_{S_μ} 1]: the transpose of K^{-1}.
pub fn elliptic_coefficients(e: u32) -> Result<(Vec<Partition>, Matrix<i64>)> {
    if e == 0 || e > 12 {
        return Err(Error::Unsupported(format!("e={e} outside 1..=12")));
    }
    let (parts, k) = kostka_matrix(e);
    let n = parts.len();
    // K is upper unitriangular in this order; back substitution gives K^{-1}
    let mut inv = Matrix::filled(n, n, 0i64);
    for col in 0..n {
        for row in (0..n).rev() {
            let mut v = (row == col) as i64;
            for j in row + 1..n {
                v -= k.get(row, j) * inv.get(j, col);
            }
            debug_assert_eq!(*k.get(row, row), 1);
            inv.set(row, col, v);
        }
    }
    if (0..n).any(|r| (0..r).any(|c| *k.get(r, c) != 0)) {
        return Err(Error::Invalid("Kostka matrix is not triangular".into()));
    }
    Ok((parts, inv.transpose()))
}

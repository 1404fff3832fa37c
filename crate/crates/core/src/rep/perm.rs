use std::fmt;

use serde::Serialize;

/// A permutation of {0,…,n−1} in one-line notation: `w[i] = w(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_one_line(w: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; w.len()];
        for &x in &w {
            if x as usize >= w.len() || std::mem::replace(&mut seen[x as usize], true) {
                return None;
            }
        }
        Some(Perm(w))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// The simple reflection exchanging i and i+1.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.0.swap(i, i + 1);
        w
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.n()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// s_i ∘ self: exchanges the values i and i+1.
    pub fn left_simple(&self, i: usize) -> Perm {
        Perm(
            self.0
                .iter()
                .map(|&x| match x as usize {
                    v if v == i => (i + 1) as u8,
                    v if v == i + 1 => i as u8,
                    _ => x,
                })
                .collect(),
        )
    }

    /// Whether ℓ(s_i w) > ℓ(w), i.e. i precedes i+1 in one-line notation.
    pub fn left_ascent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.0[i] < inv.0[i + 1]
    }

    /// A reduced word (i_1,…,i_k) with self = s_{i_1} ⋯ s_{i_k}.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = self.clone();
        while let Some(i) = (0..w.n().saturating_sub(1)).find(|&i| !w.left_ascent(i)) {
            word.push(i);
            w = w.left_simple(i);
        }
        word
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// All permutations of n letters in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut w: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Perm(w.clone()));
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).unwrap();
        w.swap(i, j);
        w[i + 1..].reverse();
    }
}

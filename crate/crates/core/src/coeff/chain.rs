use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ring::CoefficientRing;
use super::system::CoefficientSystem;
use crate::error::{Error, Result};
use crate::linalg::{bareiss_rank, rank, Matrix, PrimeField};

/// Flip the sign of one incidence: the face obtained by deleting vertex
/// `face` of the `degree`-simplex with complex index `simplex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignCorruption {
    pub simplex: usize,
    pub face: usize,
}

#[derive(Debug, Clone)]
pub struct ChainComplex {
    /// Complex indices of the simplices of each degree, in order.
    pub simplices: Vec<Vec<usize>>,
    /// Offset of each simplex block inside C_k.
    pub offsets: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
    /// `boundaries[k - 1]` is ∂_k: C_k → C_{k−1}.
    pub boundaries: Vec<Matrix<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRank {
    pub degree: usize,
    pub rank: usize,
}

pub fn chain_complex(cs: &CoefficientSystem) -> Result<ChainComplex> {
    let cc = chain_complex_unchecked(cs, None)?;
    if !cc.boundary_squared_zero() {
        return Err(Error::Orientation("boundary does not square to zero".into()));
    }
    Ok(cc)
}

/// Builds ∂ from ε_{τσ}·φ^σ_τ without the ∂∂ = 0 guard; `corrupt`
/// flips one incidence sign.
pub fn chain_complex_unchecked(cs: &CoefficientSystem, corrupt: Option<SignCorruption>) -> Result<ChainComplex> {
    let c = &cs.complex;
    let top = c.dim();
    let mut simplices = Vec::new();
    let mut offsets = Vec::new();
    let mut dims = Vec::new();
    for k in 0..=top {
        let ss: Vec<usize> = c.simplices_of_dim(k).collect();
        let mut off = Vec::with_capacity(ss.len());
        let mut acc = 0;
        for &s in &ss {
            off.push(acc);
            acc += cs.rank(s);
        }
        simplices.push(ss);
        offsets.push(off);
        dims.push(acc);
    }
    let mut boundaries = Vec::new();
    for k in 1..=top {
        let mut m = Matrix::filled(dims[k - 1], dims[k], 0i64);
        for (bi, &s) in simplices[k].iter().enumerate() {
            let verts = &c.simplices[s];
            for j in 0..verts.len() {
                let face: Vec<usize> = verts.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).collect();
                let t = c.simplex_index(&face).ok_or_else(|| Error::Orientation("missing face".into()))?;
                let ti = simplices[k - 1]
                    .binary_search(&t)
                    .map_err(|_| Error::Orientation("face of wrong degree".into()))?;
                let mut sign: i64 = if j % 2 == 0 { 1 } else { -1 };
                if corrupt == Some(SignCorruption { simplex: s, face: j }) {
                    sign = -sign;
                }
                for (r, &col) in cs.refinement(t, s)?.iter().enumerate() {
                    let (rr, cc) = (offsets[k - 1][ti] + r, offsets[k][bi] + col);
                    m.set(rr, cc, m.get(rr, cc) + sign);
                }
            }
        }
        boundaries.push(m);
    }
    Ok(ChainComplex { simplices, offsets, dims, boundaries })
}

impl ChainComplex {
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn boundary_squared_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            (0..a.rows).all(|i| (0..b.cols).all(|j| (0..a.cols).map(|k| a.get(i, k) * b.get(k, j)).sum::<i64>() == 0))
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Rank of ∂_k over the ring (0 outside 1..=top).
    pub fn boundary_rank(&self, k: usize, ring: CoefficientRing) -> usize {
        if k == 0 || k > self.boundaries.len() {
            return 0;
        }
        let m = &self.boundaries[k - 1];
        match ring {
            CoefficientRing::Rationals => bareiss_rank(&m.map(|&x| BigInt::from(x))),
            CoefficientRing::PrimeField(l) => {
                let f = PrimeField::new(l);
                rank(&f, &m.map(|&x| x.rem_euclid(l as i64) as u64))
            }
        }
    }
}

/// Ranks of H_k for k = 0..=top.
pub fn homology(cc: &ChainComplex, ring: CoefficientRing) -> Vec<HomologyRank> {
    let top = cc.top_degree();
    let ranks: Vec<usize> = (0..=top + 1).into_par_iter().map(|k| cc.boundary_rank(k, ring)).collect();
    (0..=top).map(|k| HomologyRank { degree: k, rank: cc.dims[k] - ranks[k] - ranks[k + 1] }).collect()
}

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::orbit::OrbitSystem;
use super::ring::CoefficientRing;
use crate::building::ConvexComplex;
use crate::error::{Error, Result};
use crate::linalg::{mat_mul, rank, Field, Matrix};

/// Free modules on simplices with refinement-sum restriction maps.
#[derive(Debug, Clone)]
pub struct CoefficientSystem {
    pub complex: ConvexComplex,
    pub ring: CoefficientRing,
    pub ranks: Vec<usize>,
    /// (τ, σ) with τ ⊆ σ: the σ-basis element containing each τ-basis element.
    refine: HashMap<(usize, usize), Vec<usize>>,
    /// Per simplex, per vertex position, per basis element: the measure of
    /// the orbit in units of that vertex's residue classes.
    weights: Vec<Vec<Vec<u64>>>,
}

fn nonempty_subsets(s: &[usize]) -> Vec<Vec<usize>> {
    let n = s.len();
    (1u32..(1 << n)).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect()).collect()
}

impl CoefficientSystem {
    pub fn from_orbits(os: &OrbitSystem) -> Self {
        let c = &os.complex;
        let mut refine = HashMap::new();
        for (si, s) in c.simplices.iter().enumerate() {
            for t in nonempty_subsets(s) {
                let ti = c.simplex_index(&t).expect("faces of simplices are simplices");
                refine.insert((ti, si), os.refinement(ti, si));
            }
        }
        CoefficientSystem {
            complex: c.clone(),
            ring: os.ring,
            ranks: os.orbits.iter().map(|o| o.count).collect(),
            refine,
            weights: os.orbits.iter().map(|o| o.class_counts.clone()).collect(),
        }
    }

    /// The constant system with value the ring itself.
    pub fn constant(complex: &ConvexComplex, ring: CoefficientRing) -> Self {
        let mut refine = HashMap::new();
        for (si, s) in complex.simplices.iter().enumerate() {
            for t in nonempty_subsets(s) {
                refine.insert((complex.simplex_index(&t).unwrap(), si), vec![0]);
            }
        }
        CoefficientSystem {
            complex: complex.clone(),
            ring,
            ranks: vec![1; complex.simplices.len()],
            refine,
            weights: complex.simplices.iter().map(|s| vec![vec![1]; s.len()]).collect(),
        }
    }

    pub fn rank(&self, s: usize) -> usize {
        self.ranks[s]
    }

    /// For τ ⊆ σ, the σ-basis element containing each τ-basis element.
    pub fn refinement(&self, tau: usize, sigma: usize) -> Result<&Vec<usize>> {
        self.refine.get(&(tau, sigma)).ok_or_else(|| Error::Invalid(format!("simplex {tau} is not a face of {sigma}")))
    }

    /// Restriction φ^σ_τ: V_σ → V_τ.
    pub fn phi<F: Field>(&self, f: &F, sigma: usize, tau: usize) -> Result<Matrix<F::E>> {
        let r = self.refinement(tau, sigma)?;
        let mut m = Matrix::filled(self.ranks[tau], self.ranks[sigma], f.zero());
        for (t, &s) in r.iter().enumerate() {
            m.set(t, s, f.one());
        }
        Ok(m)
    }

    /// Averaging projection p^τ_σ: V_τ → V_σ (τ a face of σ).
    pub fn proj<F: Field>(&self, f: &F, tau: usize, sigma: usize) -> Result<Matrix<F::E>> {
        let r = self.refinement(tau, sigma)?;
        let x = self.complex.simplices[tau][0];
        let pos = self.complex.simplices[sigma].iter().position(|&v| v == x).unwrap();
        let mut m = Matrix::filled(self.ranks[sigma], self.ranks[tau], f.zero());
        for (t, &s) in r.iter().enumerate() {
            let w = BigRational::new(BigInt::from(self.weights[tau][0][t]), BigInt::from(self.weights[sigma][pos][s]));
            m.set(s, t, f.from_ratio(&w));
        }
        Ok(m)
    }

    /// Averaging idempotent e_σ acting on V_x for a vertex x of σ.
    pub fn averaging<F: Field>(&self, f: &F, sigma: usize, x: usize) -> Result<Matrix<F::E>> {
        let xi = self.complex.simplex_index(&[x]).ok_or(Error::NotInSimplex)?;
        Ok(mat_mul(f, &self.phi(f, sigma, xi)?, &self.proj(f, xi, sigma)?))
    }

    /// Identities, composition law, and the level-zero condition
    /// (φ^σ_x injective with image e_σ V_x) on every simplex.
    pub fn check_axioms<F: Field>(&self, f: &F) -> Result<bool> {
        let c = &self.complex;
        for (si, s) in c.simplices.iter().enumerate() {
            if self.phi(f, si, si)? != crate::linalg::identity(f, self.ranks[si]) {
                return Ok(false);
            }
            let faces = nonempty_subsets(s);
            for t in &faces {
                let ti = c.simplex_index(t).unwrap();
                for w in nonempty_subsets(t) {
                    let wi = c.simplex_index(&w).unwrap();
                    let lhs = mat_mul(f, &self.phi(f, ti, wi)?, &self.phi(f, si, ti)?);
                    if lhs != self.phi(f, si, wi)? {
                        return Ok(false);
                    }
                }
            }
            for &x in s {
                let xi = c.simplex_index(&[x]).unwrap();
                let ph = self.phi(f, si, xi)?;
                let e = self.averaging(f, si, x)?;
                if rank(f, &ph) != self.ranks[si] || rank(f, &e) != self.ranks[si] {
                    return Ok(false);
                }
                if rank(f, &ph.hcat(&e)) != self.ranks[si] || mat_mul(f, &e, &e) != e {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

//! The local maps ε between vertex spaces along tight paths.

use super::system::CoefficientSystem;
use crate::building::{is_tight_path, tight_path, LatticeClass};
use crate::error::{Error, Result};
use crate::linalg::{identity, mat_mul, Field, Matrix};

pub struct LocalMaps<'a, F: Field> {
    pub cs: &'a CoefficientSystem,
    pub field: &'a F,
}

impl<'a, F: Field> LocalMaps<'a, F> {
    pub fn new(cs: &'a CoefficientSystem, field: &'a F) -> Self {
        LocalMaps { cs, field }
    }

    pub fn vertex(&self, x: &LatticeClass) -> Result<usize> {
        self.cs.complex.vertex_index(x).ok_or_else(|| Error::Invalid("vertex outside the complex".into()))
    }

    fn simplex_of(&self, verts: &[usize]) -> Result<usize> {
        let mut v = verts.to_vec();
        v.sort();
        v.dedup();
        self.cs
            .complex
            .simplex_index(&v)
            .ok_or_else(|| Error::Invalid("vertices do not span a simplex of the complex".into()))
    }

    /// ε^σ_x: V_σ → V_{[x,σ]} ↪ V_x, for x adjacent to every vertex of σ (or in σ).
    pub fn from_simplex(&self, sigma: usize, x: usize) -> Result<Matrix<F::E>> {
        let f = self.field;
        let mut joined = self.cs.complex.simplices[sigma].clone();
        joined.push(x);
        let j = self.simplex_of(&joined)?;
        let xi = self.simplex_of(&[x])?;
        Ok(mat_mul(f, &self.cs.phi(f, j, xi)?, &self.cs.proj(f, sigma, j)?))
    }

    /// ε^y_x for vertex indices y, x (adjacent or equal).
    pub fn step(&self, y: usize, x: usize) -> Result<Matrix<F::E>> {
        let yi = self.simplex_of(&[y])?;
        self.from_simplex(yi, x)
    }

    /// Composite of the steps along a path of vertex indices from its first
    /// to its last vertex; the path must be tight.
    pub fn along(&self, path: &[usize]) -> Result<Matrix<F::E>> {
        let verts: Vec<LatticeClass> = path.iter().map(|&i| self.cs.complex.vertices[i].clone()).collect();
        if path.is_empty() || !is_tight_path(&verts)? {
            return Err(Error::PathNotTight(format!("{path:?}")));
        }
        self.along_unchecked(path)
    }

    pub fn along_unchecked(&self, path: &[usize]) -> Result<Matrix<F::E>> {
        let f = self.field;
        let mut m = identity(f, self.cs.rank(self.simplex_of(&[path[0]])?));
        for w in path.windows(2) {
            m = mat_mul(f, &self.step(w[0], w[1])?, &m);
        }
        Ok(m)
    }

    /// ε^y_x along the canonical tight path.
    pub fn epsilon(&self, y: usize, x: usize) -> Result<Matrix<F::E>> {
        let c = &self.cs.complex;
        let path = tight_path(&c.vertices[y], &c.vertices[x])?;
        let idx: Vec<usize> = path.iter().map(|v| self.vertex(v)).collect::<Result<_>>()?;
        self.along_unchecked(&idx)
    }

    /// Lattice-level form of [`LocalMaps::along`].
    pub fn epsilon_local(&self, path: &[LatticeClass]) -> Result<Matrix<F::E>> {
        let idx: Vec<usize> = path.iter().map(|v| self.vertex(v)).collect::<Result<_>>()?;
        self.along(&idx)
    }
}

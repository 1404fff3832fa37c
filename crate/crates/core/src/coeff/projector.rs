//! Projectors e^Σ_x, e^Σ_σ and u^Σ_{Σ'} acting on H_0(Σ, Γ).

use rayon::prelude::*;
use serde::Serialize;

use super::chain::ChainComplex;
use super::local::LocalMaps;
use super::system::CoefficientSystem;
use crate::error::{Error, Result};
use crate::linalg::{identity, is_zero_matrix, mat_add, mat_mul, mat_sub, rank, Field, ImageReducer, Matrix};

/// H_0 = C_0 / im ∂_1 with the basis of standard vectors off the pivot
/// rows of the reduced image; e^Σ_x = i_x ∘ p_x kept in factored form.
pub struct ProjectorFamily<F: Field> {
    pub h0_dim: usize,
    pub reducer: ImageReducer<F::E>,
    /// vertex index → offset of V_x in C_0
    pub vertex_offset: Vec<usize>,
    pub vertex_rank: Vec<usize>,
    /// i_x: V_x → H_0
    pub incl: Vec<Matrix<F::E>>,
    /// p_x: H_0 → V_x
    pub proj: Vec<Matrix<F::E>>,
    /// Σ_y ε^y_x on all of C_0 vanishes on boundaries.
    pub well_defined: bool,
    /// p_x ∘ i_x = identity for every vertex.
    pub sections: bool,
}

pub fn projectors<F: Field>(f: &F, cs: &CoefficientSystem, cc: &ChainComplex) -> Result<ProjectorFamily<F>> {
    let c = &cs.complex;
    let n = c.vertices.len();
    let d1 = if cc.boundaries.is_empty() {
        Matrix::filled(cc.dims[0], 0, f.zero())
    } else {
        cc.boundaries[0].map(|&x| f.from_i64(x))
    };
    let reducer = ImageReducer::new(f, &d1);
    let h0_dim = reducer.free.len();
    // C_0 blocks are in vertex order
    let vertex_simplex: Vec<usize> = (0..n).map(|i| c.simplex_index(&[i]).unwrap()).collect();
    let mut vertex_offset = vec![0; n];
    let mut vertex_rank = vec![0; n];
    for (b, &s) in cc.simplices[0].iter().enumerate() {
        let v = c.simplices[s][0];
        vertex_offset[v] = cc.offsets[0][b];
        vertex_rank[v] = cs.rank(s);
    }
    debug_assert!(vertex_simplex.iter().all(|&s| cc.simplices[0].binary_search(&s).is_ok()));
    let lm = LocalMaps::new(cs, f);
    // P_x on C_0: the row of blocks ε^y_x
    let full_proj: Vec<Result<Matrix<F::E>>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut m = Matrix::filled(vertex_rank[x], cc.dims[0], f.zero());
            for y in 0..n {
                let e = lm.epsilon(y, x)?;
                for r in 0..e.rows {
                    for col in 0..e.cols {
                        m.set(r, vertex_offset[y] + col, e.get(r, col).clone());
                    }
                }
            }
            Ok(m)
        })
        .collect();
    let full_proj: Vec<Matrix<F::E>> = full_proj.into_iter().collect::<Result<_>>()?;
    let well_defined = full_proj.par_iter().all(|p| is_zero_matrix(f, &mat_mul(f, p, &d1)));
    let proj: Vec<Matrix<F::E>> = full_proj
        .iter()
        .map(|p| {
            let mut m = Matrix::filled(p.rows, h0_dim, f.zero());
            for (j, &pos) in reducer.free.iter().enumerate() {
                for r in 0..p.rows {
                    m.set(r, j, p.get(r, pos).clone());
                }
            }
            m
        })
        .collect();
    let incl: Vec<Matrix<F::E>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let cols: Vec<Vec<F::E>> = (0..vertex_rank[x])
                .map(|e| {
                    let mut v = vec![f.zero(); cc.dims[0]];
                    v[vertex_offset[x] + e] = f.one();
                    reducer.coordinates(f, &v)
                })
                .collect();
            Matrix::from_columns(h0_dim, &cols, f.zero())
        })
        .collect();
    let sections = (0..n).all(|x| mat_mul(f, &proj[x], &incl[x]) == identity(f, vertex_rank[x]));
    Ok(ProjectorFamily { h0_dim, reducer, vertex_offset, vertex_rank, incl, proj, well_defined, sections })
}

impl<F: Field> ProjectorFamily<F> {
    pub fn e_vertex(&self, f: &F, x: usize) -> Matrix<F::E> {
        mat_mul(f, &self.incl[x], &self.proj[x])
    }

    /// Middle factor p_{x_1} i_{x_2} ⋯ p_{x_{k−1}} i_{x_k} of e_σ.
    fn core(&self, f: &F, verts: &[usize]) -> Matrix<F::E> {
        let mut m = identity(f, self.vertex_rank[verts[0]]);
        for w in verts.windows(2) {
            m = mat_mul(f, &m, &mat_mul(f, &self.proj[w[0]], &self.incl[w[1]]));
        }
        m
    }

    /// e^Σ_σ = Π_{x ∈ σ} e^Σ_x.
    pub fn e_simplex(&self, f: &F, verts: &[usize]) -> Matrix<F::E> {
        let first = verts[0];
        let last = *verts.last().unwrap();
        mat_mul(f, &mat_mul(f, &self.incl[first], &self.core(f, verts)), &self.proj[last])
    }

    /// rank e^Σ_σ, read off the middle factor (valid once `sections` holds).
    pub fn rank_e_simplex(&self, f: &F, verts: &[usize]) -> usize {
        rank(f, &self.core(f, verts))
    }

    /// u^Σ_{Σ'} = Σ_{σ ∈ Σ'} (−1)^{dim σ} e^Σ_σ over the given simplices.
    pub fn u(&self, f: &F, simplices: &[Vec<usize>]) -> Matrix<F::E> {
        let parts: Vec<(bool, Matrix<F::E>)> =
            simplices.par_iter().map(|s| (s.len() % 2 == 1, self.e_simplex(f, s))).collect();
        let mut acc = Matrix::filled(self.h0_dim, self.h0_dim, f.zero());
        for (plus, m) in parts {
            acc = if plus { mat_add(f, &acc, &m) } else { mat_sub(f, &acc, &m) };
        }
        acc
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionReport {
    pub h0_dim: usize,
    pub checked: usize,
    /// (simplex, rank V_σ, rank e_σ on H_0) for every failure.
    pub mismatches: Vec<(Vec<usize>, usize, usize)>,
    pub injective: bool,
    pub pass: bool,
}

/// rank e^Σ_σ(H_0) = rank V_σ for every simplex, and i_σ injective.
pub fn verify_level0_reconstruction<F: Field>(
    f: &F,
    cs: &CoefficientSystem,
    fam: &ProjectorFamily<F>,
) -> Result<ReconstructionReport> {
    if !fam.well_defined || !fam.sections {
        return Err(Error::Invalid("projector family is not well defined on H_0".into()));
    }
    let c = &cs.complex;
    let results: Vec<Result<(Vec<usize>, usize, usize, bool)>> = c
        .simplices
        .par_iter()
        .enumerate()
        .map(|(si, s)| {
            let r = fam.rank_e_simplex(f, s);
            // i_σ = i_x ∘ φ^σ_x for the first vertex
            let x = s[0];
            let xi = c.simplex_index(&[x]).unwrap();
            let i_sigma = mat_mul(f, &fam.incl[x], &cs.phi(f, si, xi)?);
            Ok((s.clone(), cs.rank(si), r, rank(f, &i_sigma) == cs.rank(si)))
        })
        .collect();
    let mut mismatches = Vec::new();
    let mut injective = true;
    for r in results {
        let (s, rv, re, inj) = r?;
        if rv != re {
            mismatches.push((s, rv, re));
        }
        injective &= inj;
    }
    let pass = mismatches.is_empty() && injective;
    Ok(ReconstructionReport { h0_dim: fam.h0_dim, checked: c.simplices.len(), mismatches, injective, pass })
}

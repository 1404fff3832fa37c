use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::frame::{adapted_frame, distance, enclos};
use super::lattice::LatticeClass;
use crate::error::{Error, Result};
use crate::linalg::{rref_rows, PrimeField};

/// An F_p-subspace of Λ_x/pΛ_x, by a reduced row echelon basis in the
/// coordinates of the canonical basis of x.
pub type Subspace = Vec<Vec<u64>>;

/// A set of pairwise adjacent vertices, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub vertices: Vec<LatticeClass>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<LatticeClass>) -> Result<Self> {
        vertices.sort();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::Invalid("empty simplex".into()));
        }
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if distance(&vertices[i], &vertices[j])? > 1 {
                    return Err(Error::Invalid("vertices are not pairwise adjacent".into()));
                }
            }
        }
        let s = Simplex { vertices };
        // the residue flag of the first vertex certifies the chain condition
        s.residue_flag(&s.vertices[0])?;
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Proper nonzero subspaces Λ_i/pΛ_x cut out by the other vertices, by
    /// increasing dimension.
    pub fn residue_flag(&self, x: &LatticeClass) -> Result<Vec<Subspace>> {
        if !self.vertices.contains(x) {
            return Err(Error::NotInSimplex);
        }
        let p = x.p();
        let fp = PrimeField::new(p);
        let pb = num_bigint::BigInt::from(p);
        let mut flag: Vec<Subspace> = Vec::new();
        for y in self.vertices.iter().filter(|y| *y != x) {
            let fr = adapted_frame(x, y)?;
            if fr.a[0] != 1 {
                return Err(Error::Invalid("not a simplex".into()));
            }
            let rows: Vec<Vec<u64>> =
                fr.a.iter()
                    .zip(&fr.local)
                    .filter(|(a, _)| **a == 0)
                    .map(|(_, col)| col.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
                    .collect();
            let (basis, _) = rref_rows(&fp, rows, x.d());
            flag.push(basis);
        }
        flag.sort_by_key(|s| s.len());
        for w in flag.windows(2) {
            let mut both = w[0].clone();
            both.extend(w[1].iter().cloned());
            let (_, piv) = rref_rows(&fp, both, x.d());
            if w[0].len() == w[1].len() || piv.len() != w[1].len() {
                return Err(Error::Invalid("representatives do not form a chain".into()));
            }
        }
        Ok(flag)
    }

    /// Residue jump dimensions (e_0, …, e_k) of the chain based at the first vertex.
    pub fn type_vector(&self) -> Result<Vec<usize>> {
        let x = &self.vertices[0];
        let flag = self.residue_flag(x)?;
        let mut dims: Vec<usize> = flag.iter().map(|s| s.len()).collect();
        dims.push(x.d());
        let mut out = Vec::with_capacity(dims.len());
        let mut prev = 0;
        for d in dims {
            out.push(d - prev);
            prev = d;
        }
        Ok(out)
    }

    /// Whether every jump of the type vector is divisible by f.
    pub fn is_f_facet(&self, f: usize) -> Result<bool> {
        Ok(self.type_vector()?.iter().all(|e| e % f == 0))
    }
}

/// A finite set of vertices with every simplex among them.
#[derive(Debug, Clone)]
pub struct ConvexComplex {
    pub vertices: Vec<LatticeClass>,
    /// Vertex index sets, sorted by dimension and then lexicographically.
    pub simplices: Vec<Vec<usize>>,
    /// True when pairwise enclos of vertices was checked to stay inside.
    pub closure_certificate: bool,
    index: HashMap<Vec<usize>, usize>,
}

impl ConvexComplex {
    /// The flag complex on the given vertices (no convexity check).
    pub fn from_vertices(vertices: Vec<LatticeClass>) -> Result<Self> {
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::Invalid("empty vertex set".into()));
        }
        let d = vertices[0].d();
        let n = vertices.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let adj: Vec<Result<bool>> =
            pairs.par_iter().map(|&(i, j)| Ok(distance(&vertices[i], &vertices[j])? <= 1)).collect();
        let mut nbrs = vec![Vec::new(); n];
        for (&(i, j), a) in pairs.iter().zip(adj) {
            if a? {
                nbrs[i].push(j);
            }
        }
        let mut simplices: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        let mut layer = simplices.clone();
        for _ in 1..d {
            let mut next = Vec::new();
            for s in &layer {
                let last = *s.last().unwrap();
                for &j in &nbrs[last] {
                    if s.iter().all(|&i| nbrs[i].binary_search(&j).is_ok()) {
                        let mut t = s.clone();
                        t.push(j);
                        next.push(t);
                    }
                }
            }
            next.sort();
            simplices.extend(next.iter().cloned());
            layer = next;
        }
        let index = simplices.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        Ok(ConvexComplex { vertices, simplices, closure_certificate: false, index })
    }

    /// Checks pairwise enclos closure and records the certificate.
    pub fn certify(mut self) -> Result<Self> {
        self.closure_certificate = missing_from_closure(&self.vertices)?.is_empty();
        if !self.closure_certificate {
            return Err(Error::NotConvex);
        }
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn vertex_index(&self, x: &LatticeClass) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    pub fn simplex(&self, k: usize) -> Simplex {
        Simplex { vertices: self.simplices[k].iter().map(|&i| self.vertices[i].clone()).collect() }
    }

    pub fn simplices_of_dim(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.simplices.iter().enumerate().filter(move |(_, s)| s.len() == k + 1).map(|(i, _)| i)
    }

    pub fn count_of_dim(&self, k: usize) -> usize {
        self.simplices_of_dim(k).count()
    }

    /// The full subcomplex on a vertex subset, which must be convex.
    pub fn subcomplex(&self, vertices: &[LatticeClass]) -> Result<ConvexComplex> {
        for v in vertices {
            if self.vertex_index(v).is_none() {
                return Err(Error::Invalid("vertex outside the complex".into()));
            }
        }
        ConvexComplex::from_vertices(vertices.to_vec())?.certify()
    }
}

/// Vertices of pairwise enclos that fall outside the set.
fn missing_from_closure(vertices: &[LatticeClass]) -> Result<Vec<LatticeClass>> {
    let n = vertices.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let found: Vec<Result<Vec<LatticeClass>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            Ok(enclos(&vertices[i], &vertices[j])?.into_iter().filter(|z| vertices.binary_search(z).is_err()).collect())
        })
        .collect();
    let mut out = BTreeSet::new();
    for f in found {
        out.extend(f?);
    }
    Ok(out.into_iter().collect())
}

/// Smallest superset closed under pairwise enclos, as a complex.
pub fn convex_hull(s: &[LatticeClass], max_vertices: usize) -> Result<ConvexComplex> {
    if s.is_empty() {
        return Err(Error::Invalid("empty vertex set".into()));
    }
    let d = s[0].d();
    if s.iter().any(|v| v.d() != d) {
        return Err(Error::DimensionMismatch(d, s.iter().find(|v| v.d() != d).unwrap().d()));
    }
    let mut cur: Vec<LatticeClass> = s.to_vec();
    cur.sort();
    cur.dedup();
    loop {
        let missing = missing_from_closure(&cur)?;
        if missing.is_empty() {
            break;
        }
        cur.extend(missing);
        cur.sort();
        if cur.len() > max_vertices {
            return Err(Error::BudgetExceeded {
                what: "convex hull",
                needed: cur.len() as u128,
                budget: max_vertices as u128,
            });
        }
    }
    let mut c = ConvexComplex::from_vertices(cur)?;
    c.closure_certificate = true;
    Ok(c)
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<LatticeClass>,
    simplices: Vec<Vec<usize>>,
}

impl Serialize for ConvexComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson { vertices: self.vertices.clone(), simplices: self.simplices.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexComplex {
    /// Rebuilds the flag complex on the vertices; listed simplices must
    /// be among the rebuilt ones.
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ComplexJson::deserialize(de)?;
        let c = ConvexComplex::from_vertices(j.vertices.clone()).map_err(D::Error::custom)?;
        for s in &j.simplices {
            let mut named: Vec<LatticeClass> = Vec::new();
            for &i in s {
                named.push(j.vertices.get(i).cloned().ok_or_else(|| D::Error::custom("vertex index out of range"))?);
            }
            let mut idx: Vec<usize> = named.iter().map(|v| c.vertex_index(v).unwrap()).collect();
            idx.sort();
            if c.simplex_index(&idx).is_none() {
                return Err(D::Error::custom("listed simplex is not a simplex of the building"));
            }
        }
        Ok(c)
    }
}

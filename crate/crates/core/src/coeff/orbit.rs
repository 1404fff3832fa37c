//! Orbits of the pro-p radicals G_σ^+ on P^{d−1} or on the flag space.
//!
//! G_σ^+ is generated by the principal congruence subgroups U_x of the
//! vertices x of σ, and the U_x-orbits are exactly the residue classes
//! relative to Λ_x. The G_σ^+-orbits are therefore the classes of the
//! equivalence relation generated by the residue-class relations of the
//! vertices of σ, computed here with union-find on level-M points.

use rayon::prelude::*;

use super::ring::CoefficientRing;
use super::space::{enumerate_points, BaseSpace, ModRing, VertexFrame};
use crate::building::{distance, rebase, ConvexComplex, LatticeClass};
use crate::error::{Error, Result};
use crate::unionfind::DisjointSets;

pub const DEFAULT_POINT_BUDGET: u128 = 4_000_000;

#[derive(Debug, Clone)]
pub struct VertexClasses {
    /// Residue-flag keys, sorted; a class is its index here.
    pub keys: Vec<Vec<u64>>,
    pub of_point: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct SimplexOrbits {
    pub of_point: Vec<u32>,
    pub count: usize,
    /// For each vertex of the simplex (in order), the number of its
    /// residue classes inside each orbit.
    pub class_counts: Vec<Vec<u64>>,
    /// Classes of the first vertex contained in each orbit.
    pub signature: Vec<Vec<u32>>,
}

#[derive(Debug, Clone)]
pub struct OrbitSystem {
    pub complex: ConvexComplex,
    pub space: BaseSpace,
    pub ring: CoefficientRing,
    pub level: u32,
    /// Vertex whose lattice serves as the coordinate frame.
    pub base: LatticeClass,
    pub point_count: usize,
    pub vertex_classes: Vec<VertexClasses>,
    pub orbits: Vec<SimplexOrbits>,
    /// Orbit partitions agree at levels M and M+1.
    pub stable: bool,
}

/// Vertex of least eccentricity (ties broken by vertex order).
pub fn central_vertex(c: &ConvexComplex) -> Result<(usize, u32)> {
    let n = c.vertices.len();
    let ecc: Vec<Result<u32>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut m = 0;
            for j in 0..n {
                m = m.max(distance(&c.vertices[i], &c.vertices[j])?);
            }
            Ok(m)
        })
        .collect();
    let mut best = (0, u32::MAX);
    for (i, e) in ecc.into_iter().enumerate() {
        let e = e?;
        if e < best.1 {
            best = (i, e);
        }
    }
    Ok(best)
}

/// Smallest level accepted for the complex.
pub fn min_level(c: &ConvexComplex, space: BaseSpace) -> Result<u32> {
    let (_, ecc) = central_vertex(c)?;
    Ok(space.min_level(c.vertices[0].d(), ecc))
}

struct Partition {
    vertex_classes: Vec<VertexClasses>,
    orbits: Vec<SimplexOrbits>,
    point_count: usize,
}

fn partition(c: &ConvexComplex, base: &LatticeClass, space: BaseSpace, level: u32, budget: u128) -> Result<Partition> {
    let d = base.d();
    let p = base.p();
    let r = ModRing::new(p, level)?;
    let k = space.columns(d);
    let points = enumerate_points(space, d, p, level, budget)?;
    let frames: Vec<Result<VertexFrame>> =
        c.vertices.iter().map(|x| Ok(VertexFrame::new(&rebase(base, x)?, &r))).collect();
    let frames: Vec<VertexFrame> = frames.into_iter().collect::<Result<_>>()?;
    let vertex_classes: Vec<Result<VertexClasses>> = frames
        .par_iter()
        .map(|fr| {
            let keys: Vec<Vec<u64>> = points.iter().map(|pt| fr.residue_key(&r, pt, k)).collect::<Result<_>>()?;
            let mut sorted = keys.clone();
            sorted.sort();
            sorted.dedup();
            let of_point = keys.iter().map(|key| sorted.binary_search(key).unwrap() as u32).collect();
            Ok(VertexClasses { keys: sorted, of_point })
        })
        .collect();
    let vertex_classes: Vec<VertexClasses> = vertex_classes.into_iter().collect::<Result<_>>()?;
    let n = points.len();
    let orbits: Vec<SimplexOrbits> = c
        .simplices
        .par_iter()
        .map(|s| {
            let mut ds = DisjointSets::new(n);
            for &x in s {
                let vc = &vertex_classes[x];
                let mut first = vec![usize::MAX; vc.keys.len()];
                for (pt, &cl) in vc.of_point.iter().enumerate() {
                    let f = &mut first[cl as usize];
                    if *f == usize::MAX {
                        *f = pt;
                    } else {
                        ds.merge(*f, pt);
                    }
                }
            }
            let (raw, count) = ds.labels();
            // canonical numbering: by the smallest class of the first vertex
            let v0 = &vertex_classes[s[0]];
            let mut least = vec![u32::MAX; count];
            for pt in 0..n {
                let o = raw[pt];
                least[o] = least[o].min(v0.of_point[pt]);
            }
            let mut order: Vec<usize> = (0..count).collect();
            order.sort_by_key(|&o| least[o]);
            let mut rank = vec![0u32; count];
            for (i, &o) in order.iter().enumerate() {
                rank[o] = i as u32;
            }
            let of_point: Vec<u32> = raw.iter().map(|&o| rank[o]).collect();
            let mut class_counts = Vec::with_capacity(s.len());
            let mut signature = vec![Vec::new(); count];
            for (pos, &x) in s.iter().enumerate() {
                let vc = &vertex_classes[x];
                let mut orbit_of_class = vec![u32::MAX; vc.keys.len()];
                for pt in 0..n {
                    orbit_of_class[vc.of_point[pt] as usize] = of_point[pt];
                }
                let mut counts = vec![0u64; count];
                for (cl, &o) in orbit_of_class.iter().enumerate() {
                    counts[o as usize] += 1;
                    if pos == 0 {
                        signature[o as usize].push(cl as u32);
                    }
                }
                class_counts.push(counts);
            }
            SimplexOrbits { of_point, count, class_counts, signature }
        })
        .collect();
    Ok(Partition { vertex_classes, orbits, point_count: n })
}

/// Orbit system at level M (default: the least admissible level), with
/// a stabilization check against level M+1.
pub fn build_orbit_system(
    complex: &ConvexComplex,
    space: BaseSpace,
    ring: CoefficientRing,
    level: Option<u32>,
    budget: u128,
) -> Result<OrbitSystem> {
    let d = complex.vertices[0].d();
    let p = complex.vertices[0].p();
    ring.validate(p)?;
    let (bi, ecc) = central_vertex(complex)?;
    let base = complex.vertices[bi].clone();
    let need = space.min_level(d, ecc);
    let level = level.unwrap_or(need);
    if level < need {
        return Err(Error::LevelTooSmall(format!("level {level} below the required {need}")));
    }
    let part = partition(complex, &base, space, level, budget)?;
    let finer = partition(complex, &base, space, level + 1, budget)?;
    let stable = part.orbits.iter().zip(&finer.orbits).all(|(a, b)| a.signature == b.signature)
        && part.vertex_classes.iter().zip(&finer.vertex_classes).all(|(a, b)| a.keys == b.keys);
    if !stable {
        return Err(Error::LevelTooSmall(format!("orbit partitions differ at levels {level} and {}", level + 1)));
    }
    Ok(OrbitSystem {
        complex: complex.clone(),
        space,
        ring,
        level,
        base,
        point_count: part.point_count,
        vertex_classes: part.vertex_classes,
        orbits: part.orbits,
        stable,
    })
}

impl OrbitSystem {
    pub fn rank(&self, simplex: usize) -> usize {
        self.orbits[simplex].count
    }

    /// For a face τ of σ, the σ-orbit containing each τ-orbit.
    pub fn refinement(&self, tau: usize, sigma: usize) -> Vec<usize> {
        let t = &self.orbits[tau];
        let s = &self.orbits[sigma];
        let mut out = vec![usize::MAX; t.count];
        for (pt, &o) in t.of_point.iter().enumerate() {
            out[o as usize] = s.of_point[pt] as usize;
        }
        out
    }
}

#![allow(dead_code)]

use std::collections::BTreeSet;

use levelzero::building::*;
use levelzero::coeff::*;
use levelzero::linalg::{
    identity, image_intersection_rank, is_zero_matrix, mat_add, mat_mul, mat_sub, rank, rref_rows, Field, Matrix,
    PrimeField,
};

/// Row echelon basis of the span of `rows` over F_p.
pub fn span(p: u64, rows: Vec<Vec<u64>>, d: usize) -> Subspace {
    rref_rows(&PrimeField::new(p), rows, d).0
}

fn contains(p: u64, sub: &Subspace, v: &[u64], d: usize) -> bool {
    let mut rows = sub.clone();
    rows.push(v.to_vec());
    span(p, rows, d).len() == sub.len()
}

fn apply(p: u64, g: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    g.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % p).collect()
}

/// The unipotent radical of the parabolic fixing `flag`: matrices g with
/// (g − 1) V_i ⊆ V_{i−1} along 0 ⊂ V_1 ⊂ … ⊂ F_p^d, by brute force over
/// all d × d matrices.
pub fn unipotent_radical(p: u64, d: usize, flag: &[Subspace]) -> Vec<Vec<Vec<u64>>> {
    let mut chain: Vec<Subspace> = vec![vec![]];
    chain.extend(flag.iter().cloned());
    chain.push((0..d).map(|i| (0..d).map(|j| (i == j) as u64).collect()).collect());
    let total = (p as u128).pow((d * d) as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut g = vec![vec![0u64; d]; d];
        for row in g.iter_mut() {
            for c in row.iter_mut() {
                *c = (code % p as u128) as u64;
                code /= p as u128;
            }
        }
        let ok = (1..chain.len()).all(|i| {
            chain[i].iter().all(|v| {
                let w: Vec<u64> = apply(p, &g, v).iter().zip(v).map(|(a, b)| (a + p - b) % p).collect();
                contains(p, &chain[i - 1], &w, d)
            })
        });
        if ok {
            out.push(g);
        }
    }
    out
}

/// Nonzero vectors of F_p^d with leading nonzero entry 1.
pub fn projective_points(p: u64, d: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for code in 1..(p as u128).pow(d as u32) {
        let mut c = code;
        let v: Vec<u64> = (0..d)
            .map(|_| {
                let x = (c % p as u128) as u64;
                c /= p as u128;
                x
            })
            .collect();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

fn normalize(p: u64, v: Vec<u64>) -> Vec<u64> {
    let lead = *v.iter().find(|&&x| x != 0).unwrap();
    let inv = (1..p).find(|i| i * lead % p == 1).unwrap();
    v.into_iter().map(|x| x * inv % p).collect()
}

/// Full flags as the list of their partial spans V_1 ⊂ … ⊂ V_{d−1}.
pub fn full_flags(p: u64, d: usize) -> Vec<Vec<Subspace>> {
    let pts = projective_points(p, d);
    let mut layer: BTreeSet<Vec<Subspace>> = BTreeSet::new();
    layer.insert(vec![]);
    for k in 1..d {
        let mut next = BTreeSet::new();
        for f in &layer {
            let prev: Subspace = f.last().cloned().unwrap_or_default();
            for v in &pts {
                if !contains(p, &prev, v, d) {
                    let mut rows = prev.clone();
                    rows.push(v.clone());
                    let mut g = f.clone();
                    g.push(span(p, rows, d));
                    next.insert(g);
                }
            }
        }
        layer = next;
        assert!(layer.iter().all(|f| f.len() == k));
    }
    layer.into_iter().collect()
}

/// Number of orbits of `group` on P^{d−1}(F_p) or on full flags.
pub fn orbit_count(p: u64, d: usize, group: &[Vec<Vec<u64>>], space: BaseSpace) -> usize {
    match space {
        BaseSpace::Projective => {
            let pts = projective_points(p, d);
            let mut seen = BTreeSet::new();
            let mut n = 0;
            for v in &pts {
                if seen.contains(v) {
                    continue;
                }
                n += 1;
                for g in group {
                    seen.insert(normalize(p, apply(p, g, v)));
                }
            }
            n
        }
        BaseSpace::Flag => {
            let flags = full_flags(p, d);
            let mut seen = BTreeSet::new();
            let mut n = 0;
            for f in &flags {
                if seen.contains(f) {
                    continue;
                }
                n += 1;
                for g in group {
                    let img: Vec<Subspace> =
                        f.iter().map(|s| span(p, s.iter().map(|v| apply(p, g, v)).collect(), d)).collect();
                    seen.insert(img);
                }
            }
            n
        }
    }
}

pub const ELL: u64 = 1_000_003;

pub fn diag(p: u64, e: &[i64]) -> LatticeClass {
    LatticeClass::diagonal(p, e)
}

pub fn ball_complex(d: usize, p: u64, r: u32) -> ConvexComplex {
    ConvexComplex::from_vertices(ball(&LatticeClass::standard(d, p), r, DEFAULT_BUDGET).unwrap()).unwrap()
}

pub fn hull(v: &[LatticeClass]) -> ConvexComplex {
    convex_hull(v, 10_000).unwrap()
}

pub fn system(c: &ConvexComplex, space: BaseSpace, ring: CoefficientRing) -> CoefficientSystem {
    to_coefficient_system(&build_orbit_system(c, space, ring, None, DEFAULT_POINT_BUDGET).unwrap())
}

pub fn h_ranks(cs: &CoefficientSystem, ring: CoefficientRing) -> Vec<usize> {
    homology(&chain_complex(cs).unwrap(), ring).iter().map(|h| h.rank).collect()
}

pub fn idx(c: &ConvexComplex, v: &LatticeClass) -> usize {
    c.vertex_index(v).unwrap()
}

pub fn sub_simplices(c: &ConvexComplex, sub: &ConvexComplex) -> Vec<Vec<usize>> {
    sub.simplices
        .iter()
        .map(|s| {
            let mut v: Vec<usize> = s.iter().map(|&i| idx(c, &sub.vertices[i])).collect();
            v.sort();
            v
        })
        .collect()
}

pub fn kernel_sum_rank<F: Field>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> usize {
    // dim(ker a + ker b) = 2n − rank a − rank b − dim(ker a ∩ ker b)
    let n = a.cols;
    let mut stacked = Matrix::filled(a.rows + b.rows, n, f.zero());
    for r in 0..a.rows {
        for col in 0..n {
            stacked.set(r, col, a.get(r, col).clone());
        }
    }
    for r in 0..b.rows {
        for col in 0..n {
            stacked.set(a.rows + r, col, b.get(r, col).clone());
        }
    }
    let inter = n - rank(f, &stacked);
    2 * n - rank(f, a) - rank(f, b) - inter
}

pub fn check_projector_calculus(c: &ConvexComplex, space: BaseSpace, plus: &[LatticeClass], minus: &[LatticeClass]) {
    let cs = system(c, space, CoefficientRing::Rationals);
    let cc = chain_complex(&cs).unwrap();
    let f = PrimeField::new(ELL);
    let fam = projectors(&f, &cs, &cc).unwrap();
    assert!(fam.well_defined && fam.sections);
    let n = c.vertices.len();
    let id = identity(&f, fam.h0_dim);
    let e: Vec<_> = (0..n).map(|x| fam.e_vertex(&f, x)).collect();
    for x in 0..n {
        assert_eq!(mat_mul(&f, &e[x], &e[x]), e[x]);
    }
    for s in c.simplices_of_dim(1) {
        let (x, y) = (c.simplices[s][0], c.simplices[s][1]);
        assert_eq!(mat_mul(&f, &e[x], &e[y]), mat_mul(&f, &e[y], &e[x]));
    }
    for x in 0..n {
        for y in 0..n {
            for z in enclos(&c.vertices[x], &c.vertices[y]).unwrap() {
                let z = idx(c, &z);
                if adjacent(&c.vertices[x], &c.vertices[z]).unwrap() {
                    let lhs = mat_mul(&f, &mat_mul(&f, &e[x], &e[z]), &e[y]);
                    assert_eq!(lhs, mat_mul(&f, &e[x], &e[y]));
                }
            }
        }
    }
    // the images of the e_x span H_0
    let mut all = Matrix::filled(fam.h0_dim, 0, f.zero());
    for m in &e {
        all = all.hcat(m);
    }
    assert_eq!(rank(&f, &all), fam.h0_dim);

    let u_all = fam.u(&f, &c.simplices);
    assert_eq!(u_all, id);

    let sp = c.subcomplex(plus).unwrap();
    let sm = c.subcomplex(minus).unwrap();
    let mut zero_v: Vec<LatticeClass> = plus.iter().filter(|v| minus.contains(v)).cloned().collect();
    zero_v.sort();
    let s0 = c.subcomplex(&zero_v).unwrap();
    let up = fam.u(&f, &sub_simplices(c, &sp));
    let um = fam.u(&f, &sub_simplices(c, &sm));
    let u0 = fam.u(&f, &sub_simplices(c, &s0));
    for (u, sub) in [(&up, &sp), (&um, &sm), (&u0, &s0)] {
        assert_eq!(mat_mul(&f, u, u), *u);
        // the image is the sum of the vertex images, of rank H_0 of the piece
        let mut imgs = Matrix::filled(fam.h0_dim, 0, f.zero());
        for v in &sub.vertices {
            imgs = imgs.hcat(&e[idx(c, v)]);
        }
        assert_eq!(rank(&f, &u.hcat(&imgs)), rank(&f, u));
        assert_eq!(rank(&f, &imgs), rank(&f, u));
        let sub_cs = system(sub, space, CoefficientRing::Rationals);
        assert_eq!(h_ranks(&sub_cs, CoefficientRing::Rationals)[0], rank(&f, u));
    }
    assert_eq!(mat_sub(&f, &mat_add(&f, &up, &um), &u0), u_all);
    assert_eq!(mat_mul(&f, &up, &um), u0);
    assert_eq!(mat_mul(&f, &um, &up), u0);
    assert_eq!(image_intersection_rank(&f, &up, &um), rank(&f, &u0));
    assert_eq!(kernel_sum_rank(&f, &up, &um), fam.h0_dim - rank(&f, &u0));

    let rep = verify_level0_reconstruction(&f, &cs, &fam).unwrap();
    assert!(rep.pass, "{rep:?}");
    assert!(is_zero_matrix(&f, &mat_sub(&f, &id, &u_all)));
}

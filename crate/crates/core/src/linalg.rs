//! Exact dense linear algebra over the rationals and prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Field: Send + Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Panics on zero.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// Panics if the denominator is not invertible.
    fn from_ratio(&self, r: &BigRational) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E {
        self.from_ratio(&BigRational::from_integer(BigInt::from(v)))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_ratio(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    pub l: u64,
}

impl PrimeField {
    pub fn new(l: u64) -> Self {
        assert!((2..(1 << 31)).contains(&l), "modulus out of range");
        PrimeField { l }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.l;
        a %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.l;
            }
            a = a * a % self.l;
            e >>= 1;
        }
        r
    }

    fn reduce(&self, v: &BigInt) -> u64 {
        let l = BigInt::from(self.l);
        v.mod_floor(&l).to_u64().unwrap()
    }
}

impl Field for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.l
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.l - b) % self.l
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.l
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.l - a) % self.l
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.l - 2)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_ratio(&self, r: &BigRational) -> u64 {
        let d = self.reduce(r.denom());
        assert!(d != 0, "denominator not invertible mod {}", self.l);
        self.mul(&self.reduce(r.numer()), &self.inv(&d))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn from_columns(rows: usize, cols: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows, cols.len(), zero);
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.extend_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        Matrix { rows: self.rows, cols, data }
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::E> {
    let mut m = Matrix::filled(n, n, f.zero());
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> Matrix<F::E> {
    assert_eq!(a.cols, b.rows, "shape mismatch in product");
    let mut out = Matrix::filled(a.rows, b.cols, f.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if f.is_zero(y) {
                    continue;
                }
                let idx = i * out.cols + j;
                out.data[idx] = f.add(&out.data[idx], &f.mul(x, y));
            }
        }
    }
    out
}

pub fn mat_add<F: Field>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> Matrix<F::E> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect() }
}

pub fn mat_scale<F: Field>(f: &F, s: &F::E, a: &Matrix<F::E>) -> Matrix<F::E> {
    a.map(|x| f.mul(s, x))
}

pub fn mat_sub<F: Field>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> Matrix<F::E> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect() }
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::E>, v: &[F::E]) -> Vec<F::E> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut s = f.zero();
            for (k, x) in v.iter().enumerate() {
                if !f.is_zero(x) {
                    let y = a.get(i, k);
                    if !f.is_zero(y) {
                        s = f.add(&s, &f.mul(y, x));
                    }
                }
            }
            s
        })
        .collect()
}

pub fn is_zero_matrix<F: Field>(f: &F, a: &Matrix<F::E>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

/// Row echelon form of a list of row vectors: returns the reduced rows
/// (each normalized to a leading one, zero in every other pivot column)
/// and the pivot columns, in increasing order.
pub fn rref_rows<F: Field>(f: &F, rows: Vec<Vec<F::E>>, width: usize) -> (Vec<Vec<F::E>>, Vec<usize>) {
    let mut rows = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let k = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::E>) -> usize {
    let rows: Vec<Vec<F::E>> = (0..a.rows).map(|r| a.data[r * a.cols..(r + 1) * a.cols].to_vec()).collect();
    rref_rows(f, rows, a.cols).1.len()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(a: &Matrix<BigInt>) -> usize {
    let mut m: Vec<Vec<BigInt>> = (0..a.rows).map(|r| a.data[r * a.cols..(r + 1) * a.cols].to_vec()).collect();
    let (nr, nc) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        // smallest nonzero pivot keeps intermediate entries short
        let Some(p) =
            (r..nr).filter(|&i| !m[i][c].is_zero()).min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()).then(i.cmp(&j)))
        else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c..nc {
                let v = &piv * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Reduction modulo the column space of a matrix; the complement of the
/// pivot positions indexes a basis of the cokernel.
#[derive(Debug, Clone)]
pub struct ImageReducer<E> {
    pub dim: usize,
    pub basis: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
}

impl<E: Clone + PartialEq + Debug + Send + Sync> ImageReducer<E> {
    pub fn new<F: Field<E = E>>(f: &F, a: &Matrix<E>) -> Self {
        let gens: Vec<Vec<E>> = (0..a.cols).map(|c| a.column(c)).collect();
        let (basis, pivots) = rref_rows(f, gens, a.rows);
        let free = (0..a.rows).filter(|i| pivots.binary_search(i).is_err()).collect();
        ImageReducer { dim: a.rows, basis, pivots, free }
    }

    pub fn reduce<F: Field<E = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let k = v[p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        v
    }

    /// Coordinates of the class of `v` in the cokernel basis.
    pub fn coordinates<F: Field<E = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let r = self.reduce(f, v);
        self.free.iter().map(|&i| r[i].clone()).collect()
    }
}

/// dim(im a ∩ im b) for matrices with the same row count.
pub fn image_intersection_rank<F: Field>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> usize {
    rank(f, a) + rank(f, b) - rank(f, &a.hcat(b))
}

//! Exact computations around level-zero representations of GL_d over a
//! p-adic field: coefficient systems on the building, the Coxeter
//! Deligne–Lusztig variety, Hecke algebra combinatorics and elliptic
//! parameter bookkeeping.

pub mod arith;
pub mod building;
pub mod coeff;
pub mod cyclotomic;
pub mod dl;
pub mod error;
pub mod ffield;
pub mod langlands;
pub mod linalg;
pub mod rep;
pub mod unionfind;

pub use error::{Error, Result};

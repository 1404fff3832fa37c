//! The Coxeter Deligne–Lusztig variety det((X_i^{q^j}))^{q−1} = (−1)^{d−1}:
//! point counts, twisted fixed points and the spectral side of the
//! Lefschetz formula.

mod character;
mod count;
mod spectral;

pub use character::{character_orbits, CharacterData, CharacterOrbit};
pub use count::{count_points, fixed_points, FixedPointData, DEFAULT_ENUMERATION_BUDGET};
pub use spectral::{
    cohomology_summary, dimension, frobenius_eigenvalue, lefschetz_reconcile, spectral_side, CohomologyRow,
    LefschetzReport, Perturbation, WeilScalar,
};

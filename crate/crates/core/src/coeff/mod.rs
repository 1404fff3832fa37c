//! Level-zero coefficient systems on finite convex pieces of the building,
//! their chain complexes, exact homology and the H_0 projector calculus.

mod chain;
mod local;
mod orbit;
mod projector;
mod ring;
pub mod space;
mod system;

pub use chain::{chain_complex, chain_complex_unchecked, homology, ChainComplex, HomologyRank, SignCorruption};
pub use local::LocalMaps;
pub use orbit::{
    build_orbit_system, central_vertex, min_level, OrbitSystem, SimplexOrbits, VertexClasses, DEFAULT_POINT_BUDGET,
};
pub use projector::{projectors, verify_level0_reconstruction, ProjectorFamily, ReconstructionReport};
pub use ring::CoefficientRing;
pub use space::BaseSpace;
pub use system::CoefficientSystem;

/// Alias matching the orbit-system vocabulary.
pub fn to_coefficient_system(os: &OrbitSystem) -> CoefficientSystem {
    CoefficientSystem::from_orbits(os)
}

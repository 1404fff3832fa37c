//! Symmetric-group combinatorics: the Iwahori–Hecke algebra, Young
//! subgroups, Kostka numbers and their inverse, Specht dimensions and
//! descent counting.

mod descent;
mod hecke;
mod partition;
mod perm;
mod poly;

pub use descent::{ascent_set, descent_count, descent_table, is_hook_set, DescentProfile};
pub use hecke::{ideal_rank, poincare_polynomial, x_mu, young_subgroup, HeckeElement};
pub use partition::{elliptic_coefficients, kostka, kostka_matrix, partitions, specht_dim, Partition};
pub use perm::{all_perms, Perm};
pub use poly::Poly;

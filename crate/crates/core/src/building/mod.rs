//! The building of PGL_d over Q_p: lattice classes, apartments, enclos,
//! tight paths and finite convex subcomplexes.

mod ball;
mod complex;
mod frame;
mod lattice;
pub mod padic;

pub use ball::{ball, ball_candidates, DEFAULT_BUDGET};
pub use complex::{convex_hull, ConvexComplex, Simplex, Subspace};
pub use frame::{
    adapted_frame, adjacent, distance, enclos, enclos_coordinates, is_tight_path, relative_position, tight_path,
    AdaptedFrame, RelativePosition,
};
pub use lattice::{canonicalize, canonicalize_integer, from_int_columns, inverse_upper, rebase, LatticeClass};

use crate::error::Result;

/// Neighbours of x (distance exactly one), sorted.
pub fn neighbours(x: &LatticeClass) -> Result<Vec<LatticeClass>> {
    Ok(ball(x, 1, DEFAULT_BUDGET)?.into_iter().filter(|y| y != x).collect())
}

/// Every tight path from y to x, by exhaustive search.
pub fn all_tight_paths(y: &LatticeClass, x: &LatticeClass, max_paths: usize) -> Result<Vec<Vec<LatticeClass>>> {
    let mut out = Vec::new();
    let mut cur = vec![y.clone()];
    fn rec(
        x: &LatticeClass,
        cur: &mut Vec<LatticeClass>,
        out: &mut Vec<Vec<LatticeClass>>,
        max_paths: usize,
    ) -> Result<()> {
        let z = cur.last().unwrap().clone();
        if &z == x {
            out.push(cur.clone());
            return Ok(());
        }
        if out.len() >= max_paths {
            return Ok(());
        }
        let hull = enclos(x, &z)?;
        for w in neighbours(&z)? {
            if hull.binary_search(&w).is_ok() && !cur.contains(&w) {
                cur.push(w);
                rec(x, cur, out, max_paths)?;
                cur.pop();
            }
        }
        Ok(())
    }
    rec(x, &mut cur, &mut out, max_paths)?;
    out.truncate(max_paths);
    Ok(out)
}

/// For adjacent y, z both at distance at least two from x, a neighbour w
/// of x lying in enclos(x, y) ∩ enclos(x, z).
pub fn common_enclos_neighbour(x: &LatticeClass, y: &LatticeClass, z: &LatticeClass) -> Result<Option<LatticeClass>> {
    let hy = enclos(x, y)?;
    let hz = enclos(x, z)?;
    for w in neighbours(x)? {
        if hy.binary_search(&w).is_ok() && hz.binary_search(&w).is_ok() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

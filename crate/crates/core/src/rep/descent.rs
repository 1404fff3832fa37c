use rayon::prelude::*;
use serde::Serialize;

use super::perm::all_perms;
use crate::error::{Error, Result};

/// {i ∈ 1..e−1 : w(i−1) < w(i)}.
pub fn ascent_set(w: &[u8]) -> Vec<u32> {
    (1..w.len()).filter(|&i| w[i - 1] < w[i]).map(|i| i as u32).collect()
}

fn mask(set: &[u32]) -> usize {
    set.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentProfile {
    pub e: u32,
    pub set: Vec<u32>,
    pub count: u64,
}

fn check(e: u32) -> Result<()> {
    if e == 0 || e > 10 {
        return Err(Error::Unsupported(format!("e={e} outside 1..=10")));
    }
    Ok(())
}

/// Number of w ∈ S_e whose ascent set is exactly I.
pub fn descent_count(e: u32, set: &[u32]) -> Result<u64> {
    check(e)?;
    if set.iter().any(|&i| i == 0 || i >= e) {
        return Err(Error::Invalid(format!("{set:?} is not a subset of 1..{}", e - 1)));
    }
    let target = mask(set);
    Ok(all_perms(e as usize).par_iter().filter(|w| mask(&ascent_set(&w.0)) == target).count() as u64)
}

/// Counts for every I ⊆ {1,…,e−1}, ordered by bitmask.
pub fn descent_table(e: u32) -> Result<Vec<DescentProfile>> {
    check(e)?;
    let mut counts = vec![0u64; 1 << (e - 1)];
    for w in all_perms(e as usize) {
        counts[mask(&ascent_set(&w.0))] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(m, count)| DescentProfile { e, set: (1..e).filter(|&i| m >> (i - 1) & 1 == 1).collect(), count })
        .collect())
}

/// Whether I = {1,…,i} or I = {e−i,…,e−1}.
pub fn is_hook_set(e: u32, set: &[u32]) -> bool {
    let i = set.len() as u32;
    let initial: Vec<u32> = (1..=i).collect();
    let terminal: Vec<u32> = (e - i..e).collect();
    let mut s = set.to_vec();
    s.sort_unstable();
    s == initial || s == terminal
}

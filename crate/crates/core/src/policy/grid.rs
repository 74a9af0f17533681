//! Adaptive grid archiving.
//!
//! Objective space between the current extremes is cut into `div` slices per
//! axis. On overflow a member of the most crowded cell is evicted uniformly
//! at random.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use super::ReplacementPolicy;
use crate::archive::ArchiveEntry;
use crate::error::{Error, Result};

/// `capacity - 2 * objectives > div^objectives - (div - 1)^objectives`
fn grid_condition(capacity: usize, num_objectives: usize, div: usize) -> bool {
    let lhs = capacity as i128 - 2 * num_objectives as i128;
    let exp = num_objectives as u32;
    let hi = (div as i128).checked_pow(exp);
    let lo = (div as i128 - 1).checked_pow(exp);
    match (hi, lo) {
        (Some(hi), Some(lo)) => lhs > hi - lo,
        _ => false,
    }
}

/// Largest `div` satisfying the grid condition for this capacity, found by
/// testing `div = 1, 2, ...` until it fails.
pub fn max_feasible_div(capacity: usize, num_objectives: usize) -> Result<usize> {
    if num_objectives == 0 {
        return Err(Error::Config("grid needs at least one objective".into()));
    }
    if !grid_condition(capacity, num_objectives, 1) {
        return Err(Error::Config(format!(
            "no grid division satisfies capacity {capacity} with {num_objectives} objectives"
        )));
    }
    let mut div = 1;
    while grid_condition(capacity, num_objectives, div + 1) {
        div += 1;
    }
    Ok(div)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridConfig {
    pub div: usize,
    pub num_objectives: usize,
}

impl GridConfig {
    pub fn new(div: usize, num_objectives: usize, capacity: usize) -> Result<Self> {
        if div == 0 {
            return Err(Error::Config("div must be at least 1".into()));
        }
        if !grid_condition(capacity, num_objectives, div) {
            return Err(Error::Config(format!(
                "div {div} violates the grid condition for capacity {capacity} and {num_objectives} objectives"
            )));
        }
        Ok(GridConfig { div, num_objectives })
    }

    pub fn for_capacity(capacity: usize, num_objectives: usize) -> Result<Self> {
        Ok(GridConfig {
            div: max_feasible_div(capacity, num_objectives)?,
            num_objectives,
        })
    }
}

/// Cell coordinates, each in `0..div`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridIndex(pub Vec<usize>);

pub fn grid_index(v: &[f64], lower: &[f64], upper: &[f64], div: usize) -> GridIndex {
    let coords = v
        .iter()
        .zip(lower.iter().zip(upper))
        .map(|(&x, (&lo, &hi))| {
            let range = hi - lo;
            if range <= 0.0 {
                return 0;
            }
            let cell = (div as f64 * (x - lo) / range).floor();
            if cell <= 0.0 {
                0
            } else {
                (cell as usize).min(div - 1)
            }
        })
        .collect();
    GridIndex(coords)
}

/// Occupants of every cell, keyed by cell.
pub(crate) fn bin_pool<S>(pool: &[ArchiveEntry<S>], div: usize) -> BTreeMap<GridIndex, Vec<usize>> {
    let m = pool[0].objectives.len();
    let mut lower = vec![f64::INFINITY; m];
    let mut upper = vec![f64::NEG_INFINITY; m];
    for e in pool {
        for (i, &v) in e.objectives.values().iter().enumerate() {
            lower[i] = lower[i].min(v);
            upper[i] = upper[i].max(v);
        }
    }
    let mut cells: BTreeMap<GridIndex, Vec<usize>> = BTreeMap::new();
    for (i, e) in pool.iter().enumerate() {
        cells
            .entry(grid_index(e.objectives.values(), &lower, &upper, div))
            .or_default()
            .push(i);
    }
    cells
}

/// Evicts uniformly from a most-populated cell. Several maximal cells: one
/// is chosen uniformly first. The grid bounds are the extremes of `pool`.
pub fn select_victim_aga<S, R: Rng>(
    pool: &[ArchiveEntry<S>],
    _candidate: usize,
    config: &GridConfig,
    rng: &mut R,
) -> usize {
    let cells = bin_pool(pool, config.div);
    let most = cells.values().map(Vec::len).max().unwrap_or(0);
    let crowded: Vec<&Vec<usize>> = cells.values().filter(|c| c.len() == most).collect();
    let cell = crowded[rng.random_range(0..crowded.len())];
    cell[rng.random_range(0..cell.len())]
}

pub struct AgaPolicy {
    config: GridConfig,
    rng: Xoshiro256PlusPlus,
}

impl AgaPolicy {
    pub fn new(config: GridConfig, seed: u64) -> Self {
        AgaPolicy {
            config,
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    pub fn config(&self) -> &GridConfig {
        &self.config
    }
}

impl<S> ReplacementPolicy<S> for AgaPolicy {
    fn name(&self) -> &'static str {
        "aga"
    }

    fn select_victim(&mut self, pool: &[ArchiveEntry<S>], candidate: usize) -> usize {
        select_victim_aga(pool, candidate, &self.config, &mut self.rng)
    }
}

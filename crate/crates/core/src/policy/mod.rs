//! Replacement policies for a full [`BoundedArchive`](crate::archive::BoundedArchive).
//!
//! A policy is consulted only when a non-dominated candidate arrives at a
//! full archive. It receives the provisional set (archive members in storage
//! order, candidate last) and names the index to evict.

mod distance;
mod grid;
mod hv;

use std::fmt;
use std::str::FromStr;

pub use distance::{
    contribution_sum, hamming_distance, jaccard_distance, select_victim_dist, select_victim_random, tour_hamming_distance,
    tour_jaccard_distance, BinaryVector,
    DistancePolicy, EdgeSet, HammingMetric, JaccardMetric, RandomPolicy, SolutionMetric, SolutionSpace,
};
pub use grid::{grid_index, max_feasible_div, select_victim_aga, AgaPolicy, GridConfig, GridIndex};
pub use hv::{select_victim_ha, HvPolicy, REFERENCE_MARGIN};

use crate::archive::ArchiveEntry;
use crate::error::{Error, Result};

pub trait ReplacementPolicy<S>: Send {
    fn name(&self) -> &'static str;

    /// Index in `pool` of the entry to evict. `pool[candidate]` is the
    /// newcomer; returning `candidate` rejects it.
    fn select_victim(&mut self, pool: &[ArchiveEntry<S>], candidate: usize) -> usize;

    /// Called after an entry is pushed to the end of the archive.
    fn entry_appended(&mut self, _entries: &[ArchiveEntry<S>]) {}

    /// Called after the entry at `index` is removed, later entries shifting down.
    fn entry_removed(&mut self, _index: usize) {}
}

/// The five policies compared by the experiment harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolicyKind {
    Random,
    Aga,
    Ha,
    Hdaa,
    Jdaa,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 5] = [
        PolicyKind::Random,
        PolicyKind::Aga,
        PolicyKind::Ha,
        PolicyKind::Hdaa,
        PolicyKind::Jdaa,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PolicyKind::Random => "random",
            PolicyKind::Aga => "aga",
            PolicyKind::Ha => "ha",
            PolicyKind::Hdaa => "hdaa",
            PolicyKind::Jdaa => "jdaa",
        }
    }

    /// Builds the policy for an archive of `capacity` over `num_objectives`
    /// objectives. `seed` feeds the randomized policies.
    pub fn build<S>(self, capacity: usize, num_objectives: usize, seed: u64) -> Result<Box<dyn ReplacementPolicy<S>>>
    where
        S: SolutionSpace + Send + 'static,
    {
        Ok(match self {
            PolicyKind::Random => Box::new(RandomPolicy::new(seed)),
            PolicyKind::Aga => Box::new(AgaPolicy::new(
                GridConfig::for_capacity(capacity, num_objectives)?,
                seed,
            )),
            PolicyKind::Ha => Box::new(HvPolicy::new()),
            PolicyKind::Hdaa => Box::new(DistancePolicy::new(HammingMetric)),
            PolicyKind::Jdaa => Box::new(DistancePolicy::new(JaccardMetric)),
        })
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "random" => Ok(PolicyKind::Random),
            "aga" => Ok(PolicyKind::Aga),
            "ha" => Ok(PolicyKind::Ha),
            "hdaa" | "hd" => Ok(PolicyKind::Hdaa),
            "jdaa" | "jd" => Ok(PolicyKind::Jdaa),
            other => Err(Error::Config(format!("unknown policy {other:?}"))),
        }
    }
}

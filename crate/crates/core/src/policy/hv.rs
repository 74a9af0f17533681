//! Hypervolume archiving: evict the member whose exclusive hypervolume
//! contribution is smallest.

use super::ReplacementPolicy;
use crate::archive::ArchiveEntry;
use crate::hypervolume::{contribution_run, ReferencePoint};

/// Fraction of each objective's range added beyond the nadir when placing
/// the reference point.
pub const REFERENCE_MARGIN: f64 = 0.1;

/// Index of the minimum-contribution entry; ties go to the lowest index.
pub fn select_victim_ha<S>(pool: &[ArchiveEntry<S>], _candidate: usize, reference: &ReferencePoint) -> usize {
    let points: Vec<&[f64]> = pool.iter().map(|e| e.objectives.values()).collect();
    let mut victim = 0;
    let mut smallest = f64::INFINITY;
    for i in 0..points.len() {
        let c = contribution_run(i, &points, reference)
            .expect("reference point must bound the pool")
            .volume;
        if c < smallest {
            smallest = c;
            victim = i;
        }
    }
    victim
}

/// Recomputes the reference point from the pool on every eviction.
#[derive(Debug, Default)]
pub struct HvPolicy;

impl HvPolicy {
    pub fn new() -> Self {
        HvPolicy
    }

    pub fn reference_for<S>(pool: &[ArchiveEntry<S>]) -> ReferencePoint {
        let points: Vec<&[f64]> = pool.iter().map(|e| e.objectives.values()).collect();
        ReferencePoint::offset_nadir(&points, REFERENCE_MARGIN)
    }
}

impl<S> ReplacementPolicy<S> for HvPolicy {
    fn name(&self) -> &'static str {
        "ha"
    }

    fn select_victim(&mut self, pool: &[ArchiveEntry<S>], candidate: usize) -> usize {
        let reference = Self::reference_for(pool);
        select_victim_ha(pool, candidate, &reference)
    }
}

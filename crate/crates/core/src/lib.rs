//! Bounded Pareto archives with pluggable replacement policies.
//!
//! A [`BoundedArchive`] keeps mutually non-dominated solutions up to a fixed
//! capacity. When a new non-dominated solution arrives at a full archive, a
//! [`ReplacementPolicy`] picks the entry to drop: uniformly at random, by
//! adaptive grid crowding (AGA), by least hypervolume contribution (HA), or by
//! least summed Hamming or Jaccard distance in solution space (HDAA, JDAA).
//!
//! Around the archive sit a bi-objective TSP testbed ([`tsp`]), a
//! dominance-based local search ([`dmols`]), quality indicators
//! ([`metrics`]), rank statistics ([`ranking`]) and a campaign runner
//! ([`campaign`]).

pub mod archive;
pub mod campaign;
pub mod dmols;
pub mod error;
pub mod hypervolume;
pub mod metrics;
pub mod objective;
pub mod policy;
pub mod ranking;
pub mod tsp;

pub use archive::{ArchiveEntry, BoundedArchive, InsertOutcome, SolutionTokens};
pub use error::{Error, Result};
pub use objective::{dominates, nondominated_indices, pareto_filter, Dominance, ObjectiveVector};
pub use policy::{PolicyKind, ReplacementPolicy, SolutionSpace};

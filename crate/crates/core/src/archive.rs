//! Bounded archive of mutually non-dominated solutions.
//!
//! A candidate is accepted when it dominates archive members (they are
//! dropped), when it is non-dominated and there is room, or, with the
//! archive full, when the replacement policy picks some other member as the
//! victim. The policy always sees the provisional set (members followed by
//! the candidate) and may pick the candidate itself.

use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::objective::{compare_slices, Dominance, ObjectiveVector};
use crate::policy::ReplacementPolicy;

/// A solution together with its objective vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ArchiveEntry<S> {
    pub solution: S,
    pub objectives: ObjectiveVector,
    /// Set once the local search has explored this entry's neighbourhood.
    pub explored: bool,
}

impl<S> ArchiveEntry<S> {
    pub fn new(solution: S, objectives: ObjectiveVector) -> Self {
        ArchiveEntry {
            solution,
            objectives,
            explored: false,
        }
    }
}

/// What happened to a candidate offered to [`BoundedArchive::try_insert`].
#[derive(Clone, Debug, PartialEq)]
pub enum InsertOutcome<S> {
    AcceptedWithRemovals(Vec<ArchiveEntry<S>>),
    AcceptedIntoSpace,
    AcceptedReplacing(ArchiveEntry<S>),
    RejectedDominated,
    RejectedByPolicy,
}

impl<S> InsertOutcome<S> {
    pub fn is_accepted(&self) -> bool {
        matches!(
            self,
            InsertOutcome::AcceptedWithRemovals(_)
                | InsertOutcome::AcceptedIntoSpace
                | InsertOutcome::AcceptedReplacing(_)
        )
    }
}

pub struct BoundedArchive<S> {
    capacity: usize,
    entries: Vec<ArchiveEntry<S>>,
    policy: Box<dyn ReplacementPolicy<S>>,
}

impl<S> fmt::Debug for BoundedArchive<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundedArchive")
            .field("capacity", &self.capacity)
            .field("len", &self.entries.len())
            .field("policy", &self.policy.name())
            .finish()
    }
}

impl<S: Clone + PartialEq> BoundedArchive<S> {
    pub fn new(capacity: usize, policy: Box<dyn ReplacementPolicy<S>>) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::Config("archive capacity must be positive".into()));
        }
        Ok(BoundedArchive {
            capacity,
            entries: Vec::with_capacity(capacity + 1),
            policy,
        })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.entries.len() >= self.capacity
    }

    pub fn policy_name(&self) -> &str {
        self.policy.name()
    }

    pub fn entries(&self) -> &[ArchiveEntry<S>] {
        &self.entries
    }

    /// Owned copy of the current entries.
    pub fn snapshot(&self) -> Vec<ArchiveEntry<S>> {
        self.entries.clone()
    }

    pub fn objectives(&self) -> Vec<ObjectiveVector> {
        self.entries.iter().map(|e| e.objectives.clone()).collect()
    }

    pub fn set_explored(&mut self, index: usize, explored: bool) {
        self.entries[index].explored = explored;
    }

    pub fn reset_explored(&mut self) {
        for e in &mut self.entries {
            e.explored = false;
        }
    }

    pub fn try_insert(&mut self, candidate: ArchiveEntry<S>) -> Result<InsertOutcome<S>> {
        if let Some(first) = self.entries.first() {
            if first.objectives.len() != candidate.objectives.len() {
                return Err(Error::Dimension {
                    expected: first.objectives.len(),
                    found: candidate.objectives.len(),
                });
            }
        }

        let cand = candidate.objectives.values();
        let mut dominated_members = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            match compare_slices(e.objectives.values(), cand) {
                Dominance::Dominates => return Ok(InsertOutcome::RejectedDominated),
                Dominance::Equal if e.solution == candidate.solution => {
                    return Ok(InsertOutcome::RejectedDominated)
                }
                Dominance::DominatedBy => dominated_members.push(i),
                _ => {}
            }
        }

        let mut removed = Vec::with_capacity(dominated_members.len());
        for &i in dominated_members.iter().rev() {
            removed.push(self.entries.remove(i));
            self.policy.entry_removed(i);
        }
        removed.reverse();

        let full = self.entries.len() >= self.capacity;
        self.entries.push(candidate);
        self.policy.entry_appended(&self.entries);

        if !full {
            return Ok(if removed.is_empty() {
                InsertOutcome::AcceptedIntoSpace
            } else {
                InsertOutcome::AcceptedWithRemovals(removed)
            });
        }

        let candidate_index = self.entries.len() - 1;
        let victim = self.policy.select_victim(&self.entries, candidate_index);
        assert!(victim < self.entries.len(), "policy returned index out of range");
        let evicted = self.entries.remove(victim);
        self.policy.entry_removed(victim);
        if victim == candidate_index {
            Ok(InsertOutcome::RejectedByPolicy)
        } else {
            Ok(InsertOutcome::AcceptedReplacing(evicted))
        }
    }
}

/// Text form of a solution used in archive dumps.
pub trait SolutionTokens: Sized {
    fn to_tokens(&self) -> String;
    fn from_tokens(s: &str) -> Result<Self>;
}

/// Writes one `obj1<TAB>...<TAB>objm<TAB>solution-tokens` line per entry.
pub fn write_dump<S: SolutionTokens, W: Write>(entries: &[ArchiveEntry<S>], mut out: W) -> std::io::Result<()> {
    for e in entries {
        for v in e.objectives.values() {
            write!(out, "{v}\t")?;
        }
        writeln!(out, "{}", e.solution.to_tokens())?;
    }
    Ok(())
}

pub fn parse_dump_line<S: SolutionTokens>(line: &str, line_no: usize) -> Result<ArchiveEntry<S>> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() < 3 {
        return Err(Error::parse(line_no, "expected at least two objectives and a solution"));
    }
    let (objs, sol) = fields.split_at(fields.len() - 1);
    let values = objs
        .iter()
        .map(|f| {
            f.trim()
                .parse::<f64>()
                .map_err(|e| Error::parse(line_no, format!("bad objective {f:?}: {e}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::parse(line_no, "non-finite objective"));
    }
    let solution = S::from_tokens(sol[0])?;
    Ok(ArchiveEntry::new(solution, ObjectiveVector::new(values)))
}

pub fn read_dump<S: SolutionTokens, R: BufRead>(input: R) -> Result<Vec<ArchiveEntry<S>>> {
    let mut entries = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<dump>", e))?;
        if line.trim().is_empty() {
            continue;
        }
        entries.push(parse_dump_line(&line, i + 1)?);
    }
    Ok(entries)
}

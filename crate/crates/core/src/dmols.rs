//! Dominance-based multi-objective local search over the bi-objective TSP.
//!
//! The archive is seeded with greedy tours. Each iteration picks unexplored
//! members uniformly at random (the current set), evaluates their whole 2-opt
//! neighbourhood, keeps the non-dominated neighbours as candidates and offers
//! every candidate to the archive. The loop stops at the time or iteration
//! limit, or once every member is explored. When everything is explored
//! early the flags are cleared once, provided at least a tenth of the budget
//! remains.

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::archive::{parse_dump_line, write_dump, ArchiveEntry, BoundedArchive};
use crate::error::{Error, Result};
use crate::objective::{nondominated_indices, ObjectiveVector};
use crate::tsp::{evaluate, greedy_init, two_opt_moves, BiObjInstance, Tour, TwoOptMove};

/// Share of the budget that must remain for the one-off restart.
pub const RESTART_BUDGET_FRACTION: f64 = 0.1;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub time_limit: Option<Duration>,
    pub max_iterations: Option<u64>,
    pub current_set_size: usize,
    pub init_count: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            time_limit: Some(Duration::from_secs(10)),
            max_iterations: None,
            current_set_size: 1,
            init_count: 2,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.time_limit.is_none() && self.max_iterations.is_none() {
            return Err(Error::Config("set a time limit or an iteration limit".into()));
        }
        if self.time_limit == Some(Duration::ZERO) {
            return Err(Error::Config("time limit must be positive".into()));
        }
        if self.current_set_size == 0 || self.init_count == 0 {
            return Err(Error::Config("current set size and init count must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    TimeLimit,
    IterationLimit,
    /// Every archive member explored; no restart budget left or already used.
    Converged,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::TimeLimit => "time",
            Termination::IterationLimit => "iterations",
            Termination::Converged => "converged",
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Termination {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "time" => Ok(Termination::TimeLimit),
            "iterations" => Ok(Termination::IterationLimit),
            "converged" => Ok(Termination::Converged),
            other => Err(Error::Config(format!("unknown termination {other:?}"))),
        }
    }
}

/// Outcome of one seeded search run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub instance: String,
    pub policy: String,
    pub capacity: usize,
    pub seed: u64,
    pub elapsed_s: f64,
    pub iterations: u64,
    pub evaluations: u64,
    pub restarts: u32,
    pub termination: Termination,
    pub archive: Vec<ArchiveEntry<Tour>>,
}

impl RunRecord {
    pub fn front(&self) -> Vec<ObjectiveVector> {
        self.archive.iter().map(|e| e.objectives.clone()).collect()
    }

    /// `key: value` header, a blank line, then the archive dump.
    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "instance: {}", self.instance)?;
        writeln!(out, "policy: {}", self.policy)?;
        writeln!(out, "capacity: {}", self.capacity)?;
        writeln!(out, "seed: {}", self.seed)?;
        writeln!(out, "elapsed_s: {:.6}", self.elapsed_s)?;
        writeln!(out, "iterations: {}", self.iterations)?;
        writeln!(out, "evaluations: {}", self.evaluations)?;
        writeln!(out, "restarts: {}", self.restarts)?;
        writeln!(out, "termination: {}", self.termination)?;
        if self.policy == "ha" {
            writeln!(
                out,
                "reference_point: nadir + {} * range",
                crate::policy::REFERENCE_MARGIN
            )?;
        }
        writeln!(out, "entries: {}", self.archive.len())?;
        writeln!(out)?;
        write_dump(&self.archive, out)
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let mut header = std::collections::HashMap::new();
        for (i, line) in lines.by_ref() {
            let line = line.map_err(|e| Error::io("<run record>", e))?;
            if line.trim().is_empty() {
                break;
            }
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(i + 1, format!("expected `key: value`, got {line:?}")))?;
            header.insert(k.trim().to_string(), v.trim().to_string());
        }
        let field = |key: &str| {
            header
                .get(key)
                .cloned()
                .ok_or_else(|| Error::parse(0, format!("missing `{key}`")))
        };
        fn num<T: FromStr>(key: &str, v: String) -> Result<T> {
            v.parse().map_err(|_| Error::parse(0, format!("bad `{key}`: {v:?}")))
        }
        let mut archive = Vec::new();
        for (i, line) in lines {
            let line = line.map_err(|e| Error::io("<run record>", e))?;
            if !line.trim().is_empty() {
                archive.push(parse_dump_line(&line, i + 1)?);
            }
        }
        let expected: usize = num("entries", field("entries")?)?;
        if expected != archive.len() {
            return Err(Error::parse(0, format!("header says {expected} entries, found {}", archive.len())));
        }
        Ok(RunRecord {
            instance: field("instance")?,
            policy: field("policy")?,
            capacity: num("capacity", field("capacity")?)?,
            seed: num("seed", field("seed")?)?,
            elapsed_s: num("elapsed_s", field("elapsed_s")?)?,
            iterations: num("iterations", field("iterations")?)?,
            evaluations: num("evaluations", field("evaluations")?)?,
            restarts: num("restarts", field("restarts")?)?,
            termination: field("termination")?.parse()?,
            archive,
        })
    }
}

struct Budget {
    start: Instant,
    time_limit: Option<Duration>,
    max_iterations: Option<u64>,
}

impl Budget {
    fn exhausted(&self, iterations: u64) -> Option<Termination> {
        if let Some(max) = self.max_iterations {
            if iterations >= max {
                return Some(Termination::IterationLimit);
            }
        }
        if let Some(limit) = self.time_limit {
            if self.start.elapsed() >= limit {
                return Some(Termination::TimeLimit);
            }
        }
        None
    }

    fn restart_affordable(&self, iterations: u64) -> bool {
        let time_ok = self.time_limit.is_none_or(|limit| {
            limit.saturating_sub(self.start.elapsed()).as_secs_f64() >= RESTART_BUDGET_FRACTION * limit.as_secs_f64()
        });
        let iter_ok = self
            .max_iterations
            .is_none_or(|max| (max - iterations.min(max)) as f64 >= RESTART_BUDGET_FRACTION * max as f64);
        time_ok && iter_ok
    }
}

/// One explored neighbour: which current solution, which move, its image.
struct Neighbor {
    source: usize,
    mv: TwoOptMove,
    objectives: [f64; 2],
}

fn explore(current: &[(Tour, ObjectiveVector)], inst: &BiObjInstance) -> Vec<Neighbor> {
    let n = inst.n();
    let mut out = Vec::new();
    for (source, (tour, obj)) in current.iter().enumerate() {
        let order = tour.order();
        for mv in two_opt_moves(n) {
            out.push(Neighbor {
                source,
                mv,
                objectives: [
                    obj[0] + mv.delta(order, &inst.g1) as f64,
                    obj[1] + mv.delta(order, &inst.g2) as f64,
                ],
            });
        }
    }
    out
}

/// Runs the search on `archive`, which is seeded first with greedy tours.
pub fn run_dmols(inst: &BiObjInstance, archive: &mut BoundedArchive<Tour>, cfg: &SearchConfig) -> Result<RunRecord> {
    cfg.validate()?;
    if archive.capacity() < 2 {
        return Err(Error::Config("local search needs an archive capacity of at least 2".into()));
    }
    let budget = Budget {
        start: Instant::now(),
        time_limit: cfg.time_limit,
        max_iterations: cfg.max_iterations,
    };
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(cfg.seed);
    let mut evaluations = 0u64;

    for tour in greedy_init(inst, cfg.init_count, &mut rng) {
        let objectives = evaluate(&tour, inst)?;
        evaluations += 1;
        archive.try_insert(ArchiveEntry::new(tour, objectives))?;
    }

    let mut iterations = 0u64;
    let mut restarts = 0u32;
    let termination = loop {
        if let Some(reason) = budget.exhausted(iterations) {
            break reason;
        }
        let unexplored: Vec<usize> = (0..archive.len()).filter(|&i| !archive.entries()[i].explored).collect();
        if unexplored.is_empty() {
            if restarts == 0 && budget.restart_affordable(iterations) {
                archive.reset_explored();
                restarts += 1;
                continue;
            }
            break Termination::Converged;
        }

        let picks = sample(&mut rng, unexplored.len(), cfg.current_set_size.min(unexplored.len()));
        let mut chosen: Vec<usize> = picks.iter().map(|k| unexplored[k]).collect();
        chosen.sort_unstable();
        let current: Vec<(Tour, ObjectiveVector)> = chosen
            .iter()
            .map(|&i| {
                let e = &archive.entries()[i];
                (e.solution.clone(), e.objectives.clone())
            })
            .collect();
        for &i in &chosen {
            archive.set_explored(i, true);
        }

        let neighbors = explore(&current, inst);
        evaluations += neighbors.len() as u64;
        let images: Vec<&[f64]> = neighbors.iter().map(|nb| &nb.objectives[..]).collect();
        let mut seen = HashSet::new();
        for k in nondominated_indices(&images) {
            let nb = &neighbors[k];
            let tour = current[nb.source].0.apply_two_opt(nb.mv);
            if !seen.insert(tour.clone()) {
                continue;
            }
            let objectives = ObjectiveVector::new(nb.objectives.to_vec());
            archive.try_insert(ArchiveEntry::new(tour, objectives))?;
        }
        iterations += 1;
    };

    Ok(RunRecord {
        instance: inst.name.clone(),
        policy: archive.policy_name().to_string(),
        capacity: archive.capacity(),
        seed: cfg.seed,
        elapsed_s: budget.start.elapsed().as_secs_f64(),
        iterations,
        evaluations,
        restarts,
        termination,
        archive: archive.snapshot(),
    })
}

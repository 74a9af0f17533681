//! Bi-objective TSP instances: weight matrices, the three generators and the
//! on-disk text format.
//!
//! Generation is bit-reproducible. All draws come from SplitMix64 (one 64-bit
//! state word, identified as [`RNG_ID`] in instance headers), integer ranges
//! use rejection sampling on the raw 64-bit output, and every coordinate is
//! an integer, so the only floating-point operation is one correctly rounded
//! square root per Euclidean edge.

use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};

/// Generator identifier written to instance headers.
pub const RNG_ID: &str = "splitmix64-v1";

/// Random weights are drawn from `0..=MAX_RANDOM_WEIGHT`.
pub const MAX_RANDOM_WEIGHT: u32 = 1_000_000;
/// Euclidean and cluster-center coordinates lie in `1..=PLANE_SIZE`.
pub const PLANE_SIZE: i64 = 1_000_000;
/// Cluster members lie within this distance of their center.
pub const CLUSTER_RADIUS: i64 = 10_000;

/// Seeded integer source used by the generators.
pub struct InstanceRng(SplitMix64);

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        InstanceRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..bound`: draws are rejected while they fall in
    /// the incomplete top block `[2^64 - 2^64 mod bound, 2^64)`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let reject_from = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= reject_from {
                return x % bound;
            }
        }
    }

    /// Uniform integer in `lo..=hi`.
    pub fn inclusive(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo) as u64 + 1) as i64
    }
}

/// Symmetric non-negative integer weights with a zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    n: usize,
    w: Vec<u32>,
}

impl WeightMatrix {
    pub fn zeros(n: usize) -> Self {
        WeightMatrix { n, w: vec![0; n * n] }
    }

    /// Builds a matrix from its upper triangle listed row by row:
    /// `(0,1), (0,2), ..., (0,n-1), (1,2), ...`.
    pub fn from_upper_triangle(n: usize, upper: &[u32]) -> Result<Self> {
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::Config(format!(
                "{} weights do not fill the upper triangle of {n} nodes",
                upper.len()
            )));
        }
        let mut m = WeightMatrix::zeros(n);
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                m.set(i, j, upper[k]);
                k += 1;
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.w[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: u32) {
        self.w[i * self.n + j] = w;
        self.w[j * self.n + i] = w;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 0 && (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InstanceKind {
    Random,
    Euclidean,
    Cluster,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 3] = [InstanceKind::Random, InstanceKind::Euclidean, InstanceKind::Cluster];

    pub fn as_str(self) -> &'static str {
        match self {
            InstanceKind::Random => "random",
            InstanceKind::Euclidean => "euclidean",
            InstanceKind::Cluster => "cluster",
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "random" => Ok(InstanceKind::Random),
            "euclidean" => Ok(InstanceKind::Euclidean),
            "cluster" | "clustered" => Ok(InstanceKind::Cluster),
            other => Err(Error::Config(format!("unknown instance kind {other:?}"))),
        }
    }
}

/// Number of cluster centers used for an `n`-node cluster graph.
pub fn cluster_count(n: usize) -> usize {
    (n / 100).max(2)
}

/// A generated graph with the coordinates it came from, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    pub weights: WeightMatrix,
    pub coords: Option<Vec<(i64, i64)>>,
}

fn euclidean_weights(coords: &[(i64, i64)]) -> WeightMatrix {
    let n = coords.len();
    let mut m = WeightMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = (coords[i].0 - coords[j].0) as f64;
            let dy = (coords[i].1 - coords[j].1) as f64;
            m.set(i, j, (dx * dx + dy * dy).sqrt().round() as u32);
        }
    }
    m
}

/// Generates one graph.
///
/// * Random: every upper-triangle weight uniform in `0..=10^6`, row by row.
/// * Euclidean: integer coordinates uniform in `[1, 10^6]^2`, weights are
///   Euclidean distances rounded to the nearest integer.
/// * Cluster: the first [`cluster_count`] nodes are centers placed as in
///   Euclidean; node `k` after them joins center `(k - c) mod c` at an integer
///   offset drawn uniformly from the disk of radius `10^4` (square draws
///   rejected outside the disk).
pub fn generate_graph_with_coords(kind: InstanceKind, n: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Config(format!("instances need at least 3 nodes, got {n}")));
    }
    let mut rng = InstanceRng::new(seed);
    match kind {
        InstanceKind::Random => {
            let mut m = WeightMatrix::zeros(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    m.set(i, j, rng.below(MAX_RANDOM_WEIGHT as u64 + 1) as u32);
                }
            }
            Ok(Graph {
                weights: m,
                coords: None,
            })
        }
        InstanceKind::Euclidean => {
            let coords: Vec<(i64, i64)> = (0..n)
                .map(|_| {
                    let x = rng.inclusive(1, PLANE_SIZE);
                    let y = rng.inclusive(1, PLANE_SIZE);
                    (x, y)
                })
                .collect();
            Ok(Graph {
                weights: euclidean_weights(&coords),
                coords: Some(coords),
            })
        }
        InstanceKind::Cluster => {
            let c = cluster_count(n).min(n);
            let mut coords: Vec<(i64, i64)> = (0..c)
                .map(|_| {
                    let x = rng.inclusive(1, PLANE_SIZE);
                    let y = rng.inclusive(1, PLANE_SIZE);
                    (x, y)
                })
                .collect();
            for k in c..n {
                let center = coords[(k - c) % c];
                let (dx, dy) = loop {
                    let dx = rng.inclusive(-CLUSTER_RADIUS, CLUSTER_RADIUS);
                    let dy = rng.inclusive(-CLUSTER_RADIUS, CLUSTER_RADIUS);
                    if dx * dx + dy * dy <= CLUSTER_RADIUS * CLUSTER_RADIUS {
                        break (dx, dy);
                    }
                };
                coords.push((center.0 + dx, center.1 + dy));
            }
            Ok(Graph {
                weights: euclidean_weights(&coords),
                coords: Some(coords),
            })
        }
    }
}

pub fn generate_graph(kind: InstanceKind, n: usize, seed: u64) -> Result<WeightMatrix> {
    Ok(generate_graph_with_coords(kind, n, seed)?.weights)
}

/// Two graphs of the same kind over the same nodes; objective `i` is the tour
/// length in graph `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiObjInstance {
    pub name: String,
    pub kind: InstanceKind,
    pub g1: WeightMatrix,
    pub g2: WeightMatrix,
    pub coords: [Option<Vec<(i64, i64)>>; 2],
    pub seeds: Option<(u64, u64)>,
}

impl BiObjInstance {
    pub fn from_matrices(name: impl Into<String>, kind: InstanceKind, g1: WeightMatrix, g2: WeightMatrix) -> Result<Self> {
        if g1.n() != g2.n() {
            return Err(Error::NodeSetMismatch(g1.n(), g2.n()));
        }
        if !g1.is_symmetric() || !g2.is_symmetric() {
            return Err(Error::Config("weight matrices must be symmetric with zero diagonal".into()));
        }
        Ok(BiObjInstance {
            name: name.into(),
            kind,
            g1,
            g2,
            coords: [None, None],
            seeds: None,
        })
    }

    pub fn n(&self) -> usize {
        self.g1.n()
    }

    /// Canonical name of a generated instance, e.g. `euclidean-n100-1-2`.
    pub fn generated_name(kind: InstanceKind, n: usize, seed_a: u64, seed_b: u64) -> String {
        format!("{kind}-n{n}-{seed_a}-{seed_b}")
    }

    /// Reads the file format written by [`BiObjInstance::write_to`].
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_from(BufReader::new(file))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out = std::io::BufWriter::new(fs::File::create(path).map_err(|e| Error::io(path, e))?);
        self.write_to(&mut out).map_err(|e| Error::io(path, e))?;
        out.flush().map_err(|e| Error::io(path, e))
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let n = self.n();
        writeln!(out, "name: {}", self.name)?;
        writeln!(out, "kind: {}", self.kind)?;
        writeln!(out, "n: {n}")?;
        writeln!(out, "rng: {RNG_ID}")?;
        if let Some((a, b)) = self.seeds {
            writeln!(out, "seed_a: {a}")?;
            writeln!(out, "seed_b: {b}")?;
        }
        if self.kind == InstanceKind::Cluster {
            writeln!(out, "clusters: {}", cluster_count(n))?;
            writeln!(out, "cluster_radius: {CLUSTER_RADIUS}")?;
        }
        for (k, g) in [&self.g1, &self.g2].into_iter().enumerate() {
            writeln!(out, "GRAPH {}", k + 1)?;
            for i in 0..n {
                for j in (i + 1)..n {
                    writeln!(out, "{i} {j} {}", g.get(i, j))?;
                }
            }
        }
        for (k, coords) in self.coords.iter().enumerate() {
            if let Some(coords) = coords {
                writeln!(out, "COORDS {}", k + 1)?;
                for (i, (x, y)) in coords.iter().enumerate() {
                    writeln!(out, "{i} {x} {y}")?;
                }
            }
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        enum Section {
            Header,
            Graph(usize),
            Coords(usize),
        }

        let mut name = None;
        let mut kind = None;
        let mut n: Option<usize> = None;
        let mut seed_a = None;
        let mut seed_b = None;
        let mut graphs: [Option<Vec<Option<u32>>>; 2] = [None, None];
        let mut coords: [Option<Vec<Option<(i64, i64)>>>; 2] = [None, None];
        let mut section = Section::Header;

        for (idx, line) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::io("<instance>", e))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("GRAPH ").or_else(|| line.strip_prefix("COORDS ")) {
                let k: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad section {line:?}")))?;
                if !(1..=2).contains(&k) {
                    return Err(Error::parse(line_no, format!("section index {k} out of range")));
                }
                let n = n.ok_or_else(|| Error::parse(line_no, "section before `n:` header"))?;
                if line.starts_with("GRAPH") {
                    if graphs[k - 1].is_some() {
                        return Err(Error::parse(line_no, format!("duplicate GRAPH {k}")));
                    }
                    graphs[k - 1] = Some(vec![None; n * n]);
                    section = Section::Graph(k - 1);
                } else {
                    coords[k - 1] = Some(vec![None; n]);
                    section = Section::Coords(k - 1);
                }
                continue;
            }
            match section {
                Section::Header => {
                    let (key, value) = line
                        .split_once(':')
                        .ok_or_else(|| Error::parse(line_no, format!("expected `key: value`, got {line:?}")))?;
                    let value = value.trim();
                    let num = |v: &str| v.parse::<u64>().map_err(|e| Error::parse(line_no, format!("{key}: {e}")));
                    match key.trim() {
                        "name" => name = Some(value.to_string()),
                        "kind" => kind = Some(value.parse::<InstanceKind>()?),
                        "n" => n = Some(num(value)? as usize),
                        "seed_a" => seed_a = Some(num(value)?),
                        "seed_b" => seed_b = Some(num(value)?),
                        "rng" if value != RNG_ID => {
                            return Err(Error::parse(line_no, format!("unsupported generator {value:?}")))
                        }
                        _ => {}
                    }
                }
                Section::Graph(k) => {
                    let n = n.unwrap();
                    let fields: Vec<&str> = line.split_whitespace().collect();
                    if fields.len() != 3 {
                        return Err(Error::parse(line_no, "expected `i j w`"));
                    }
                    let parse = |s: &str| s.parse::<u64>().map_err(|e| Error::parse(line_no, format!("{s:?}: {e}")));
                    let (i, j, w) = (parse(fields[0])? as usize, parse(fields[1])? as usize, parse(fields[2])?);
                    if i >= n || j >= n || i == j {
                        return Err(Error::parse(line_no, format!("invalid edge ({i}, {j})")));
                    }
                    let w = u32::try_from(w).map_err(|_| Error::parse(line_no, "weight out of range"))?;
                    let cells = graphs[k].as_mut().unwrap();
                    for (a, b) in [(i, j), (j, i)] {
                        match cells[a * n + b] {
                            Some(prev) if prev != w => {
                                return Err(Error::parse(
                                    line_no,
                                    format!("asymmetric weights for edge ({i}, {j}): {prev} vs {w}"),
                                ))
                            }
                            _ => cells[a * n + b] = Some(w),
                        }
                    }
                }
                Section::Coords(k) => {
                    let n = n.unwrap();
                    let fields: Vec<&str> = line.split_whitespace().collect();
                    if fields.len() != 3 {
                        return Err(Error::parse(line_no, "expected `i x y`"));
                    }
                    let i: usize = fields[0].parse().map_err(|_| Error::parse(line_no, "bad node index"))?;
                    let x: i64 = fields[1].parse().map_err(|_| Error::parse(line_no, "bad x"))?;
                    let y: i64 = fields[2].parse().map_err(|_| Error::parse(line_no, "bad y"))?;
                    if i >= n {
                        return Err(Error::parse(line_no, format!("node {i} out of range")));
                    }
                    coords[k].as_mut().unwrap()[i] = Some((x, y));
                }
            }
        }

        let name = name.ok_or_else(|| Error::parse(0, "missing `name:` header"))?;
        let kind = kind.ok_or_else(|| Error::parse(0, "missing `kind:` header"))?;
        let n = n.ok_or_else(|| Error::parse(0, "missing `n:` header"))?;
        let mut matrices = Vec::with_capacity(2);
        for (k, cells) in graphs.into_iter().enumerate() {
            let cells = cells.ok_or_else(|| Error::parse(0, format!("missing GRAPH {}", k + 1)))?;
            let mut m = WeightMatrix::zeros(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    let w = cells[i * n + j]
                        .ok_or_else(|| Error::parse(0, format!("GRAPH {}: missing edge ({i}, {j})", k + 1)))?;
                    m.set(i, j, w);
                }
            }
            matrices.push(m);
        }
        let g2 = matrices.pop().unwrap();
        let g1 = matrices.pop().unwrap();
        let coords = coords.map(|c| c.and_then(|c| c.into_iter().collect::<Option<Vec<_>>>()));
        let seeds = seed_a.zip(seed_b);
        Ok(BiObjInstance {
            name,
            kind,
            g1,
            g2,
            coords,
            seeds,
        })
    }
}

/// Pairs two independently generated graphs of the same kind and size.
pub fn make_instance(kind: InstanceKind, n: usize, seed_a: u64, seed_b: u64) -> Result<BiObjInstance> {
    if seed_a == seed_b {
        return Err(Error::Config("the two graphs need distinct seeds".into()));
    }
    let a = generate_graph_with_coords(kind, n, seed_a)?;
    let b = generate_graph_with_coords(kind, n, seed_b)?;
    Ok(BiObjInstance {
        name: BiObjInstance::generated_name(kind, n, seed_a, seed_b),
        kind,
        g1: a.weights,
        g2: b.weights,
        coords: [a.coords, b.coords],
        seeds: Some((seed_a, seed_b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn splitmix_reference_values() {
        // published test vector: seed 1234567
        let mut r = InstanceRng::new(1234567);
        assert_eq!(r.next_u64(), 6457827717110365317);
        assert_eq!(r.next_u64(), 3203168211198807973);
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = InstanceRng::new(5);
        for bound in [1u64, 2, 3, 7, 1_000_001, u64::MAX] {
            for _ in 0..200 {
                assert!(r.below(bound) < bound);
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        for kind in InstanceKind::ALL {
            assert_eq!(generate_graph(kind, 30, 9).unwrap(), generate_graph(kind, 30, 9).unwrap());
            assert!(generate_graph(kind, 30, 9).unwrap().is_symmetric());
        }
        assert!(generate_graph(InstanceKind::Random, 2, 1).is_err());
    }

    #[test]
    fn random_weights_in_range() {
        let g = generate_graph(InstanceKind::Random, 40, 3).unwrap();
        for i in 0..40 {
            for j in 0..40 {
                assert!(g.get(i, j) <= MAX_RANDOM_WEIGHT);
            }
        }
    }

    #[test]
    fn cluster_members_stay_near_center() {
        let n = 250;
        let g = generate_graph_with_coords(InstanceKind::Cluster, n, 17).unwrap();
        let coords = g.coords.unwrap();
        let c = cluster_count(n);
        assert_eq!(c, 2);
        for k in c..n {
            let center = coords[(k - c) % c];
            let (dx, dy) = (coords[k].0 - center.0, coords[k].1 - center.1);
            assert!(dx * dx + dy * dy <= CLUSTER_RADIUS * CLUSTER_RADIUS);
        }
        assert_eq!(cluster_count(1000), 10);
    }

    #[test]
    fn make_instance_rules() {
        assert!(make_instance(InstanceKind::Random, 10, 4, 4).is_err());
        let a = make_instance(InstanceKind::Euclidean, 20, 1, 2).unwrap();
        assert_eq!(a, make_instance(InstanceKind::Euclidean, 20, 1, 2).unwrap());
        assert_eq!(a.kind, InstanceKind::Euclidean);
        assert_eq!(a.n(), 20);
        assert_ne!(a.g1, a.g2);
        assert_eq!(a.name, "euclidean-n20-1-2");
    }

    #[test]
    fn file_roundtrip() {
        for kind in InstanceKind::ALL {
            let inst = make_instance(kind, 12, 5, 6).unwrap();
            let mut buf = Vec::new();
            inst.write_to(&mut buf).unwrap();
            let back = BiObjInstance::read_from(&buf[..]).unwrap();
            assert_eq!(back, inst);
        }
    }

    const SMALL: &str = "name: t\nkind: random\nn: 3\nGRAPH 1\n0 1 4\n0 2 5\n1 2 6\nGRAPH 2\n0 1 1\n0 2 2\n1 2 3\n";

    #[test]
    fn parser_accepts_minimal_file() {
        let inst = BiObjInstance::read_from(SMALL.as_bytes()).unwrap();
        assert_eq!(inst.g1.get(2, 1), 6);
        assert_eq!(inst.seeds, None);
    }

    #[test]
    fn parser_rejects_asymmetry_and_gaps() {
        let asym = SMALL.replace("1 2 3\n", "1 2 3\n2 1 9\n");
        assert!(matches!(BiObjInstance::read_from(asym.as_bytes()), Err(Error::Parse { .. })));
        let missing = SMALL.replace("0 2 2\n", "");
        assert!(matches!(BiObjInstance::read_from(missing.as_bytes()), Err(Error::Parse { .. })));
        let loop_edge = SMALL.replace("0 2 2\n", "2 2 2\n");
        assert!(BiObjInstance::read_from(loop_edge.as_bytes()).is_err());
        let bad_rng = SMALL.replace("n: 3\n", "n: 3\nrng: mt19937\n");
        assert!(BiObjInstance::read_from(bad_rng.as_bytes()).is_err());
        // a repeated, consistent listing is fine
        let repeated = SMALL.replace("1 2 3\n", "1 2 3\n2 1 3\n");
        assert!(BiObjInstance::read_from(repeated.as_bytes()).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn euclidean_triangle_inequality(seed in any::<u64>()) {
            let g = generate_graph(InstanceKind::Euclidean, 15, seed).unwrap();
            for i in 0..15 {
                for j in 0..15 {
                    for k in 0..15 {
                        // each rounded edge is off by at most 0.5
                        prop_assert!(g.get(i, k) as i64 <= g.get(i, j) as i64 + g.get(j, k) as i64 + 1);
                    }
                }
            }
        }
    }
}

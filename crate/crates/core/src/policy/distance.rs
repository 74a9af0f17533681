//! Solution-space policies.
//!
//! Each member of the provisional set is scored by the sum of its distances
//! to every other member; the member with the smallest sum is evicted (the
//! first one on ties). With Hamming distance this is HDAA, with Jaccard
//! distance JDAA. Tours are compared through their undirected edge sets, so
//! rotations and reflections of a tour are the same solution.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use super::ReplacementPolicy;
use crate::archive::ArchiveEntry;
use crate::error::{Error, Result};

/// Fixed-length bit string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryVector(pub Vec<bool>);

impl BinaryVector {
    /// Parses a string of `0` and `1` characters.
    pub fn parse(bits: &str) -> Result<Self> {
        bits.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(1, format!("not a bit: {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(BinaryVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }
}

/// Number of positions at which the two vectors differ.
pub fn hamming_distance(a: &BinaryVector, b: &BinaryVector) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(a.0.iter().zip(&b.0).filter(|(x, y)| x != y).count())
}

/// `1 - |a ∩ b| / |a ∪ b|`; two empty sets are at distance 0.
pub fn jaccard_distance<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    let shared = a.intersection(b).count();
    jaccard_from_counts(a.len(), b.len(), shared)
}

fn jaccard_from_counts(a: usize, b: usize, shared: usize) -> f64 {
    let union = a + b - shared;
    if union == 0 {
        0.0
    } else {
        1.0 - shared as f64 / union as f64
    }
}

/// Undirected edges over nodes `0..n`, stored as sorted `(low, high)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl EdgeSet {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut out = Vec::new();
        for (u, v) in edges {
            if u == v || u as usize >= n || v as usize >= n {
                return Err(Error::Config(format!("invalid edge ({u}, {v}) on {n} nodes")));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(EdgeSet { n, edges: out })
    }

    /// Edges of the Hamiltonian cycle visiting `order` and returning home.
    pub fn from_cycle(order: &[u32]) -> Self {
        let n = order.len();
        let edges = (0..n).map(|i| {
            let (u, v) = (order[i], order[(i + 1) % n]);
            (u.min(v), u.max(v))
        });
        let mut edges: Vec<(u32, u32)> = edges.collect();
        edges.sort_unstable();
        edges.dedup();
        EdgeSet { n, edges }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn shared_edges(&self, other: &EdgeSet) -> usize {
        let (mut i, mut j, mut shared) = (0, 0, 0);
        while i < self.edges.len() && j < other.edges.len() {
            match self.edges[i].cmp(&other.edges[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        shared
    }
}

/// Size of the symmetric difference of two edge sets over the same nodes.
pub fn tour_hamming_distance(a: &EdgeSet, b: &EdgeSet) -> Result<usize> {
    if a.n != b.n {
        return Err(Error::NodeSetMismatch(a.n, b.n));
    }
    Ok(a.len() + b.len() - 2 * a.shared_edges(b))
}

pub fn tour_jaccard_distance(a: &EdgeSet, b: &EdgeSet) -> Result<f64> {
    if a.n != b.n {
        return Err(Error::NodeSetMismatch(a.n, b.n));
    }
    Ok(jaccard_from_counts(a.len(), b.len(), a.shared_edges(b)))
}

/// Solutions on which the Hamming and Jaccard distances are defined.
///
/// Both must satisfy the metric axioms and return bit-identical values for
/// `a.f(b)` and `b.f(a)`.
pub trait SolutionSpace: Clone + PartialEq {
    fn hamming(&self, other: &Self) -> f64;
    fn jaccard(&self, other: &Self) -> f64;
}

impl SolutionSpace for BinaryVector {
    fn hamming(&self, other: &Self) -> f64 {
        hamming_distance(self, other).expect("bit vectors of equal length") as f64
    }

    fn jaccard(&self, other: &Self) -> f64 {
        let a: BTreeSet<usize> = self.ones().collect();
        let b: BTreeSet<usize> = other.ones().collect();
        jaccard_distance(&a, &b)
    }
}

impl SolutionSpace for EdgeSet {
    fn hamming(&self, other: &Self) -> f64 {
        tour_hamming_distance(self, other).expect("edge sets over the same nodes") as f64
    }

    fn jaccard(&self, other: &Self) -> f64 {
        tour_jaccard_distance(self, other).expect("edge sets over the same nodes")
    }
}

pub trait SolutionMetric<S>: Send {
    fn name(&self) -> &'static str;
    fn distance(&self, a: &S, b: &S) -> f64;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct HammingMetric;

#[derive(Clone, Copy, Debug, Default)]
pub struct JaccardMetric;

impl<S: SolutionSpace> SolutionMetric<S> for HammingMetric {
    fn name(&self) -> &'static str {
        "hdaa"
    }

    fn distance(&self, a: &S, b: &S) -> f64 {
        a.hamming(b)
    }
}

impl<S: SolutionSpace> SolutionMetric<S> for JaccardMetric {
    fn name(&self) -> &'static str {
        "jdaa"
    }

    fn distance(&self, a: &S, b: &S) -> f64 {
        a.jaccard(b)
    }
}

/// Sum of distances from `entries[index]` to every other entry.
pub fn contribution_sum<S, M: SolutionMetric<S> + ?Sized>(
    index: usize,
    entries: &[ArchiveEntry<S>],
    metric: &M,
) -> Result<f64> {
    if entries.len() < 2 {
        return Err(Error::UndefinedContribution(entries.len()));
    }
    let me = &entries[index].solution;
    Ok(entries
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .map(|(_, e)| metric.distance(me, &e.solution))
        .sum())
}

fn first_minimum(sums: impl Iterator<Item = f64>) -> usize {
    let mut victim = 0;
    let mut smallest = f64::INFINITY;
    for (i, s) in sums.enumerate() {
        if s < smallest {
            smallest = s;
            victim = i;
        }
    }
    victim
}

/// Recomputes every contribution from scratch and returns the first minimum.
pub fn select_victim_dist<S, M: SolutionMetric<S> + ?Sized>(
    pool: &[ArchiveEntry<S>],
    _candidate: usize,
    metric: &M,
) -> usize {
    first_minimum((0..pool.len()).map(|i| contribution_sum(i, pool, metric).expect("pool of at least two")))
}

/// Distance-sum policy with a distance matrix kept in step with the archive.
pub struct DistancePolicy<M> {
    metric: M,
    matrix: Vec<Vec<f64>>,
}

impl<M> DistancePolicy<M> {
    pub fn new(metric: M) -> Self {
        DistancePolicy {
            metric,
            matrix: Vec::new(),
        }
    }

    /// Row sums of the cached matrix, in storage order.
    pub fn cached_row_sums(&self) -> Vec<f64> {
        (0..self.matrix.len())
            .map(|i| {
                self.matrix[i]
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, d)| d)
                    .sum()
            })
            .collect()
    }

    fn rebuild<S>(&mut self, entries: &[ArchiveEntry<S>])
    where
        M: SolutionMetric<S>,
    {
        let n = entries.len();
        self.matrix = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.metric.distance(&entries[i].solution, &entries[j].solution);
                self.matrix[i][j] = d;
                self.matrix[j][i] = d;
            }
        }
    }
}

impl<S, M: SolutionMetric<S>> ReplacementPolicy<S> for DistancePolicy<M> {
    fn name(&self) -> &'static str {
        self.metric.name()
    }

    fn select_victim(&mut self, pool: &[ArchiveEntry<S>], _candidate: usize) -> usize {
        if self.matrix.len() != pool.len() {
            self.rebuild(pool);
        }
        first_minimum(self.cached_row_sums().into_iter())
    }

    fn entry_appended(&mut self, entries: &[ArchiveEntry<S>]) {
        let n = entries.len();
        if self.matrix.len() + 1 != n {
            self.rebuild(entries);
            return;
        }
        let newest = &entries[n - 1].solution;
        let mut row: Vec<f64> = entries[..n - 1]
            .iter()
            .map(|e| self.metric.distance(newest, &e.solution))
            .collect();
        for (existing, &d) in self.matrix.iter_mut().zip(&row) {
            existing.push(d);
        }
        row.push(0.0);
        self.matrix.push(row);
    }

    fn entry_removed(&mut self, index: usize) {
        if index >= self.matrix.len() {
            self.matrix.clear();
            return;
        }
        self.matrix.remove(index);
        for row in &mut self.matrix {
            row.remove(index);
        }
    }
}

pub fn select_victim_random<S, R: Rng>(pool: &[ArchiveEntry<S>], rng: &mut R) -> usize {
    rng.random_range(0..pool.len())
}

/// Uniform eviction over the provisional set.
pub struct RandomPolicy {
    rng: Xoshiro256PlusPlus,
}

impl RandomPolicy {
    pub fn new(seed: u64) -> Self {
        RandomPolicy {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }
}

impl<S> ReplacementPolicy<S> for RandomPolicy {
    fn name(&self) -> &'static str {
        "random"
    }

    fn select_victim(&mut self, pool: &[ArchiveEntry<S>], _candidate: usize) -> usize {
        select_victim_random(pool, &mut self.rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::ObjectiveVector;
    use proptest::prelude::*;

    #[test]
    fn hamming_examples() {
        let a = BinaryVector::parse("111100110101").unwrap();
        let b = BinaryVector::parse("000000110100").unwrap();
        assert_eq!(hamming_distance(&a, &a).unwrap(), 0);
        assert_eq!(hamming_distance(&a, &b).unwrap(), 5);
        let z = BinaryVector::parse("0000").unwrap();
        let o = BinaryVector::parse("1111").unwrap();
        assert_eq!(hamming_distance(&z, &o).unwrap(), 4);
        assert!(hamming_distance(&z, &a).is_err());
        assert!(BinaryVector::parse("0102").is_err());
    }

    #[test]
    fn tour_hamming_examples() {
        let t = EdgeSet::from_cycle(&[0, 1, 2, 3]);
        assert_eq!(tour_hamming_distance(&t, &t).unwrap(), 0);
        let u = EdgeSet::from_cycle(&[0, 2, 1, 3]);
        assert_eq!(tour_hamming_distance(&t, &u).unwrap(), 4);
        // edge-disjoint cycles on 5 nodes
        let a = EdgeSet::from_cycle(&[0, 1, 2, 3, 4]);
        let b = EdgeSet::from_cycle(&[0, 2, 4, 1, 3]);
        assert_eq!(tour_hamming_distance(&a, &b).unwrap(), 10);
        let c = EdgeSet::from_cycle(&[0, 1, 2]);
        assert!(matches!(tour_hamming_distance(&a, &c), Err(Error::NodeSetMismatch(5, 3))));
    }

    #[test]
    fn rotation_and_reflection_are_the_same_tour() {
        let a = EdgeSet::from_cycle(&[0, 1, 2, 3, 4]);
        assert_eq!(a, EdgeSet::from_cycle(&[2, 3, 4, 0, 1]));
        assert_eq!(a, EdgeSet::from_cycle(&[4, 3, 2, 1, 0]));
    }

    #[test]
    fn jaccard_examples() {
        let s = |v: &[u32]| v.iter().copied().collect::<BTreeSet<u32>>();
        assert_eq!(jaccard_distance(&s(&[1, 2]), &s(&[1, 2])), 0.0);
        assert_eq!(jaccard_distance(&s(&[1, 2]), &s(&[3])), 1.0);
        assert_eq!(jaccard_distance(&s(&[1, 2, 3]), &s(&[2, 3, 4])), 0.5);
        assert_eq!(jaccard_distance(&s(&[]), &s(&[])), 0.0);
    }

    struct Table(Vec<Vec<f64>>);
    impl SolutionMetric<usize> for Table {
        fn name(&self) -> &'static str {
            "table"
        }
        fn distance(&self, a: &usize, b: &usize) -> f64 {
            self.0[*a][*b]
        }
    }

    fn ids(n: usize) -> Vec<ArchiveEntry<usize>> {
        (0..n)
            .map(|i| ArchiveEntry::new(i, ObjectiveVector::from([i as f64, -(i as f64)])))
            .collect()
    }

    #[test]
    fn contribution_sum_examples() {
        let pair = Table(vec![vec![0., 4.], vec![4., 0.]]);
        assert_eq!(contribution_sum(0, &ids(2), &pair).unwrap(), 4.0);
        assert_eq!(contribution_sum(1, &ids(2), &pair).unwrap(), 4.0);

        let three = Table(vec![vec![0., 2., 4.], vec![2., 0., 6.], vec![4., 6., 0.]]);
        let sums: Vec<f64> = (0..3).map(|i| contribution_sum(i, &ids(3), &three).unwrap()).collect();
        assert_eq!(sums, vec![6., 8., 10.]);
        assert_eq!(select_victim_dist(&ids(3), 2, &three), 0);

        let zero = Table(vec![vec![0.; 3]; 3]);
        assert_eq!(contribution_sum(1, &ids(3), &zero).unwrap(), 0.0);
        assert!(matches!(contribution_sum(0, &ids(1), &zero), Err(Error::UndefinedContribution(1))));
    }

    #[test]
    fn equal_distances_pick_first() {
        let flat = Table(vec![vec![1.; 4]; 4]);
        assert_eq!(select_victim_dist(&ids(4), 3, &flat), 0);
    }

    #[test]
    fn duplicate_candidate_ties_with_its_twin() {
        let e = |bits: &str| ArchiveEntry::new(BinaryVector::parse(bits).unwrap(), ObjectiveVector::from([0., 0.]));
        let pool = vec![e("1100"), e("0011"), e("1010"), e("1100")];
        // rows: 0 -> 4+2+0, 1 -> 4+2+4, 2 -> 2+2+2, 3 -> 0+4+2
        assert_eq!(select_victim_dist(&pool, 3, &HammingMetric), 0);
    }

    #[test]
    fn random_policy_replays_and_handles_singletons() {
        let pool = ids(5);
        let draw = |seed| {
            let mut p = RandomPolicy::new(seed);
            (0..32)
                .map(|_| ReplacementPolicy::<usize>::select_victim(&mut p, &pool, 4))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(9), draw(9));
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(0);
        assert_eq!(select_victim_random(&ids(1), &mut rng), 0);
    }

    #[test]
    fn random_policy_is_uniform() {
        // each count ~ Binomial(1e5, 1/5): sigma = sqrt(1e5 * 0.2 * 0.8) ≈ 126.5
        let pool = ids(5);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(2024);
        let mut counts = [0usize; 5];
        let draws = 100_000;
        for _ in 0..draws {
            counts[select_victim_random(&pool, &mut rng)] += 1;
        }
        let sigma = (draws as f64 * 0.2 * 0.8).sqrt();
        for c in counts {
            assert!((c as f64 - draws as f64 / 5.0).abs() < 5.0 * sigma, "{counts:?}");
        }
    }

    fn cycle(perm: Vec<u32>) -> EdgeSet {
        EdgeSet::from_cycle(&perm)
    }

    fn perm(n: usize) -> impl Strategy<Value = Vec<u32>> {
        Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn edge_metrics_are_metrics(a in perm(9), b in perm(9), c in perm(9)) {
            let (a, b, c) = (cycle(a), cycle(b), cycle(c));
            for d in [SolutionSpace::hamming, SolutionSpace::jaccard] as [fn(&EdgeSet, &EdgeSet) -> f64; 2] {
                prop_assert!(d(&a, &b) >= 0.0);
                prop_assert_eq!(d(&a, &b), d(&b, &a));
                prop_assert_eq!(d(&a, &a), 0.0);
                prop_assert_eq!(d(&a, &b) == 0.0, a == b);
                prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
            }
        }

        #[test]
        fn cached_sums_match_scratch(ops in prop::collection::vec((0u8..3, prop::collection::vec(any::<bool>(), 12)), 1..60)) {
            let mut policy = DistancePolicy::new(JaccardMetric);
            let mut entries: Vec<ArchiveEntry<BinaryVector>> = Vec::new();
            for (op, bits) in ops {
                if op == 0 && !entries.is_empty() {
                    let i = bits.iter().filter(|b| **b).count() % entries.len();
                    entries.remove(i);
                    ReplacementPolicy::<BinaryVector>::entry_removed(&mut policy, i);
                } else {
                    entries.push(ArchiveEntry::new(BinaryVector(bits), ObjectiveVector::from([0., 0.])));
                    policy.entry_appended(&entries);
                }
                if entries.len() >= 2 {
                    let scratch: Vec<f64> = (0..entries.len())
                        .map(|i| contribution_sum(i, &entries, &JaccardMetric).unwrap())
                        .collect();
                    prop_assert_eq!(policy.cached_row_sums(), scratch);
                    let last = entries.len() - 1;
                    prop_assert_eq!(
                        policy.select_victim(&entries, last),
                        select_victim_dist(&entries, last, &JaccardMetric)
                    );
                }
            }
        }
    }
}

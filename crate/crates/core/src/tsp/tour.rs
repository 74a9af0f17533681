use std::fmt;

use crate::archive::SolutionTokens;
use crate::error::{Error, Result};
use crate::policy::{EdgeSet, SolutionSpace};

use super::WeightMatrix;

/// A Hamiltonian cycle, stored in canonical form: node 0 first and the
/// second node smaller than the last. Every undirected cycle has exactly one
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tour {
    order: Vec<u32>,
}

fn canonicalize(order: &mut [u32]) {
    if let Some(start) = order.iter().position(|&v| v == 0) {
        order.rotate_left(start);
    }
    let n = order.len();
    if n > 2 && order[1] > order[n - 1] {
        order[1..].reverse();
    }
}

impl Tour {
    pub fn new(mut order: Vec<u32>) -> Result<Self> {
        let n = order.len();
        if n < 3 {
            return Err(Error::Config(format!("a tour needs at least 3 nodes, got {n}")));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            let v = v as usize;
            if v >= n || seen[v] {
                return Err(Error::Config(format!("not a permutation of 0..{n}: {order:?}")));
            }
            seen[v] = true;
        }
        canonicalize(&mut order);
        Ok(Tour { order })
    }

    /// Identity order `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Result<Self> {
        Tour::new((0..n as u32).collect())
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet::from_cycle(&self.order)
    }

    /// The two neighbours of every node in the cycle.
    fn adjacency(&self) -> Vec<[u32; 2]> {
        let n = self.order.len();
        let mut adj = vec![[0u32; 2]; n];
        for i in 0..n {
            let v = self.order[i] as usize;
            adj[v] = [self.order[(i + n - 1) % n], self.order[(i + 1) % n]];
        }
        adj
    }

    /// Number of undirected edges the two tours have in common.
    pub fn shared_edges(&self, other: &Tour) -> usize {
        assert_eq!(self.len(), other.len(), "tours over different node sets");
        let adj = self.adjacency();
        let n = other.order.len();
        (0..n)
            .filter(|&i| {
                let (u, v) = (other.order[i], other.order[(i + 1) % n]);
                adj[u as usize].contains(&v)
            })
            .count()
    }

    /// Result of the 2-opt move reversing positions `i..=j`, canonicalized.
    pub fn apply_two_opt(&self, mv: TwoOptMove) -> Tour {
        let mut order = self.order.clone();
        order[mv.i..=mv.j].reverse();
        canonicalize(&mut order);
        Tour { order }
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tokens())
    }
}

impl SolutionSpace for Tour {
    fn hamming(&self, other: &Self) -> f64 {
        (2 * (self.len() - self.shared_edges(other))) as f64
    }

    fn jaccard(&self, other: &Self) -> f64 {
        let shared = self.shared_edges(other);
        let union = 2 * self.len() - shared;
        1.0 - shared as f64 / union as f64
    }
}

impl SolutionTokens for Tour {
    fn to_tokens(&self) -> String {
        let mut s = String::with_capacity(self.order.len() * 4);
        for (i, v) in self.order.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&v.to_string());
        }
        s
    }

    fn from_tokens(s: &str) -> Result<Self> {
        let order = s
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|e| Error::parse(0, format!("bad node {t:?}: {e}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Tour::new(order)
    }
}

pub fn tour_cost(tour: &Tour, graph: &WeightMatrix) -> Result<u64> {
    if tour.len() != graph.n() {
        return Err(Error::NodeSetMismatch(tour.len(), graph.n()));
    }
    let o = tour.order();
    let n = o.len();
    Ok((0..n).map(|i| graph.get(o[i] as usize, o[(i + 1) % n] as usize) as u64).sum())
}

/// Reversal of the segment at positions `i..=j` of a canonical order, with
/// `1 <= i < j <= n - 1` and not both ends at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoOptMove {
    pub i: usize,
    pub j: usize,
}

impl TwoOptMove {
    /// Cost change of the move on `graph`: the edges `(a, b)` and `(c, d)`
    /// around the segment become `(a, c)` and `(b, d)`.
    pub fn delta(self, order: &[u32], graph: &WeightMatrix) -> i64 {
        let n = order.len();
        let a = order[self.i - 1] as usize;
        let b = order[self.i] as usize;
        let c = order[self.j] as usize;
        let d = order[(self.j + 1) % n] as usize;
        graph.get(a, c) as i64 + graph.get(b, d) as i64 - graph.get(a, b) as i64 - graph.get(c, d) as i64
    }
}

/// Every distinct 2-opt move on a tour of `n` nodes; there are `n(n-3)/2`.
pub fn two_opt_moves(n: usize) -> impl Iterator<Item = TwoOptMove> {
    (1..n.saturating_sub(1)).flat_map(move |i| {
        ((i + 1)..n)
            .filter(move |&j| !(i == 1 && j == n - 1))
            .map(move |j| TwoOptMove { i, j })
    })
}

/// All tours one 2-opt move away, canonical and distinct. Empty below 4 nodes.
pub fn two_opt_neighbors(tour: &Tour) -> Vec<Tour> {
    if tour.len() < 4 {
        return Vec::new();
    }
    two_opt_moves(tour.len()).map(|mv| tour.apply_two_opt(mv)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::four_node::four_node_instance;
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn canonical_form() {
        let t = Tour::new(vec![2, 3, 0, 1]).unwrap();
        assert_eq!(t.order(), &[0, 1, 2, 3]);
        let r = Tour::new(vec![0, 3, 2, 1]).unwrap();
        assert_eq!(r, t);
        assert!(Tour::new(vec![0, 1]).is_err());
        assert!(Tour::new(vec![0, 1, 1]).is_err());
        assert!(Tour::new(vec![0, 1, 3]).is_err());
    }

    #[test]
    fn four_node_costs() {
        let inst = four_node_instance();
        let t = |o: Vec<u32>| Tour::new(o).unwrap();
        assert_eq!(tour_cost(&t(vec![0, 1, 2, 3]), &inst.g1).unwrap(), 20);
        assert_eq!(tour_cost(&t(vec![0, 3, 1, 2]), &inst.g2).unwrap(), 17);
        assert_eq!(tour_cost(&t(vec![0, 2, 1, 3]), &inst.g1).unwrap(), 26);
        assert!(tour_cost(&Tour::identity(5).unwrap(), &inst.g1).is_err());
    }

    #[test]
    fn neighbor_counts() {
        assert_eq!(two_opt_neighbors(&Tour::identity(4).unwrap()).len(), 2);
        assert_eq!(two_opt_neighbors(&Tour::identity(5).unwrap()).len(), 5);
        assert!(two_opt_neighbors(&Tour::identity(3).unwrap()).is_empty());
        for n in 4..12 {
            let t = Tour::identity(n).unwrap();
            let nb = two_opt_neighbors(&t);
            assert_eq!(nb.len(), n * (n - 3) / 2);
            let distinct: HashSet<&Tour> = nb.iter().collect();
            assert_eq!(distinct.len(), nb.len());
            assert!(!distinct.contains(&t));
        }
    }

    #[test]
    fn k4_has_three_tours() {
        let t = Tour::identity(4).unwrap();
        let mut all: HashSet<Tour> = two_opt_neighbors(&t).into_iter().collect();
        all.insert(t);
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn tokens_roundtrip() {
        let t = Tour::new(vec![0, 4, 2, 1, 3]).unwrap();
        assert_eq!(Tour::from_tokens(&t.to_tokens()).unwrap(), t);
        assert!(Tour::from_tokens("0 1 x").is_err());
    }

    fn perm(n: usize) -> impl Strategy<Value = Vec<u32>> {
        Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn neighbors_differ_by_two_edges(order in perm(10)) {
            let t = Tour::new(order).unwrap();
            for nb in two_opt_neighbors(&t) {
                prop_assert_eq!(t.hamming(&nb), 4.0);
                prop_assert_eq!(t.edge_set().hamming(&nb.edge_set()), 4.0);
            }
        }

        #[test]
        fn neighborhood_is_symmetric(order in perm(8)) {
            let t = Tour::new(order).unwrap();
            for nb in two_opt_neighbors(&t) {
                prop_assert!(two_opt_neighbors(&nb).contains(&t));
            }
        }

        #[test]
        fn adjacency_distance_matches_edge_sets(a in perm(12), b in perm(12)) {
            let (a, b) = (Tour::new(a).unwrap(), Tour::new(b).unwrap());
            prop_assert_eq!(a.hamming(&b), a.edge_set().hamming(&b.edge_set()));
            prop_assert_eq!(a.jaccard(&b), a.edge_set().jaccard(&b.edge_set()));
        }

        #[test]
        fn rotation_and_reversal_invariance(order in perm(9), shift in 0usize..9) {
            let t = Tour::new(order.clone()).unwrap();
            let mut rotated = order.clone();
            rotated.rotate_left(shift);
            let mut reversed = rotated.clone();
            reversed.reverse();
            prop_assert_eq!(Tour::new(rotated).unwrap(), t.clone());
            prop_assert_eq!(Tour::new(reversed).unwrap(), t);
        }
    }
}

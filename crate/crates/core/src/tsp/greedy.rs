use rand::Rng;

use super::{BiObjInstance, Tour};

/// Weights `λ` of the first objective used by [`greedy_init`]: evenly spaced
/// over `[0, 1]`, or `0.5` for a single tour.
pub fn greedy_weights(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.5],
        _ => (0..count).map(|k| k as f64 / (count - 1) as f64).collect(),
    }
}

/// Nearest-neighbour tour under `λ·w1 + (1-λ)·w2` from `start`. Ties go to
/// the lowest node index.
pub fn nearest_neighbor_tour(inst: &BiObjInstance, lambda: f64, start: usize) -> Tour {
    let n = inst.n();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut current = start;
    visited[current] = true;
    order.push(current as u32);
    for _ in 1..n {
        let mut best = usize::MAX;
        let mut best_cost = f64::INFINITY;
        for next in 0..n {
            if visited[next] {
                continue;
            }
            let cost = lambda * inst.g1.get(current, next) as f64 + (1.0 - lambda) * inst.g2.get(current, next) as f64;
            if cost < best_cost {
                best_cost = cost;
                best = next;
            }
        }
        visited[best] = true;
        order.push(best as u32);
        current = best;
    }
    Tour::new(order).expect("nearest neighbour visits every node once")
}

/// `count` scalarized nearest-neighbour tours, each from a random start node.
pub fn greedy_init<R: Rng>(inst: &BiObjInstance, count: usize, rng: &mut R) -> Vec<Tour> {
    greedy_weights(count)
        .into_iter()
        .map(|lambda| {
            let start = rng.random_range(0..inst.n());
            nearest_neighbor_tour(inst, lambda, start)
        })
        .collect()
}

//! Bi-objective symmetric TSP: tours, evaluation, the 2-opt neighbourhood,
//! greedy initialization and instance generation.

mod four_node;
mod greedy;
mod instance;
mod tour;

pub use four_node::four_node_instance;
pub use greedy::{greedy_init, greedy_weights, nearest_neighbor_tour};
pub use instance::{
    cluster_count, generate_graph, generate_graph_with_coords, make_instance, BiObjInstance, Graph, InstanceKind,
    InstanceRng, WeightMatrix, CLUSTER_RADIUS, MAX_RANDOM_WEIGHT, PLANE_SIZE, RNG_ID,
};
pub use tour::{tour_cost, two_opt_moves, two_opt_neighbors, Tour, TwoOptMove};

use crate::error::Result;
use crate::objective::ObjectiveVector;

/// `(length in graph 1, length in graph 2)`.
pub fn evaluate(tour: &Tour, inst: &BiObjInstance) -> Result<ObjectiveVector> {
    Ok(ObjectiveVector::new(vec![
        tour_cost(tour, &inst.g1)? as f64,
        tour_cost(tour, &inst.g2)? as f64,
    ]))
}

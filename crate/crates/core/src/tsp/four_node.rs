//! The four-node bi-objective instance used as a worked example throughout
//! the tests and examples.
//!
//! Tour 0-1-2-3 costs 4+2+5+9 = 20 in the first graph and tour 0-3-1-2 costs
//! 2+4+6+5 = 17 in the second. K4 has three tours, with images (20, 24),
//! (24, 25) and (26, 17); the Pareto front is {(20, 24), (26, 17)}.

use super::{BiObjInstance, InstanceKind, WeightMatrix};

/// Upper-triangle weights `(0,1) (0,2) (0,3) (1,2) (1,3) (2,3)`.
const FIRST: [u32; 6] = [4, 7, 9, 2, 8, 5];
const SECOND: [u32; 6] = [7, 5, 2, 6, 4, 9];

pub fn four_node_instance() -> BiObjInstance {
    let g1 = WeightMatrix::from_upper_triangle(4, &FIRST).expect("4-node triangle");
    let g2 = WeightMatrix::from_upper_triangle(4, &SECOND).expect("4-node triangle");
    BiObjInstance::from_matrices("four-node", InstanceKind::Random, g1, g2).expect("valid matrices")
}

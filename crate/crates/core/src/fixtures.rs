//! Reference systems used by the tests, the runnable examples and the docs.

use crate::linalg::{int, Mat};
use crate::system::{load_system, NetworkSystem};

/// Eight-node network with a single sensor on `v1` and no drivers.
pub const EIGHT_NODE_JSON: &str = include_str!("../examples/data/eight_node.json");

/// Three-node star `v1 -> v2` (weight 2), `v1 -> v3` (weight 3), driven and sensed at `v1`.
pub const CHAIN3_JSON: &str = include_str!("../examples/data/chain3.json");

pub fn eight_node() -> NetworkSystem {
    load_system(EIGHT_NODE_JSON).expect("bundled fixture")
}

pub fn chain3() -> NetworkSystem {
    load_system(CHAIN3_JSON).expect("bundled fixture")
}

/// The 8x8 observability matrix of [`eight_node`], row by row.
pub fn eight_node_observability() -> Mat {
    Mat::from_i64(&[
        [1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 3, 0, 0, 7],
        [0, 0, 3, 3, 0, 35, 28, 7],
        [0, 24, 6, 0, 0, 35, 28, 7],
        [0, 0, 12, 0, 0, 35, 28, 7],
        [0, 0, 24, 0, 0, 35, 28, 7],
        [0, 0, 48, 0, 0, 35, 28, 7],
        [0, 0, 96, 0, 0, 35, 28, 7],
    ])
}

/// [`chain3`] with arbitrary weights on the two edges.
pub fn chain3_weighted(a: i64, b: i64) -> NetworkSystem {
    let m = Mat::from_i64(&[[0, 0, 0], [a, 0, 0], [b, 0, 0]]);
    NetworkSystem::from_parts(m, &[(0, int(1))], &[0], None).expect("valid chain")
}

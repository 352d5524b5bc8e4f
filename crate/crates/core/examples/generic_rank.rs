//! Structural rank by bipartite matching, next to the numeric rank.

use netdecomp::controllability::build_k;
use netdecomp::fixtures;
use netdecomp::linalg::{rank, Mat};
use netdecomp::observability::build_o;
use netdecomp::structure::{generic_rank, pattern_of, power_pattern};

fn main() {
    let sys = fixtures::eight_node();
    let o = build_o(&sys);
    for (name, m) in [("A", sys.a().clone()), ("O", o)] {
        println!(
            "{name}: generic rank {}, rank {}",
            generic_rank(&pattern_of(&m)),
            rank(&m)
        );
    }

    // cancellation: both entries free, but the numeric values make the rank drop
    let m = Mat::from_i64(&[[1, 1], [1, 1]]);
    println!(
        "[[1,1],[1,1]]: generic rank {}, rank {}",
        generic_rank(&pattern_of(&m)),
        rank(&m)
    );

    let chain = fixtures::chain3();
    let k = build_k(&chain);
    println!(
        "chain K: generic rank {}, rank {}",
        generic_rank(&pattern_of(&k)),
        rank(&k)
    );

    let p = pattern_of(sys.a());
    for step in 1..=3 {
        println!(
            "free entries of pattern(A)^{step}: {}",
            power_pattern(&p, step).free_count()
        );
    }
}

//! Loads a system from JSON and checks that (c A^k)_i equals the summed
//! weights of length-k walks from the sensor node in the transposed graph.

use netdecomp::system::{load_system_file, paths_of_length, verify_path_identity, Direction};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/eight_node.json").into()
    });
    let sys = load_system_file(&path).expect("readable system");
    println!("{path}: N={} M={} P={}", sys.n(), sys.m(), sys.p());
    let fp = sys.fingerprint();
    println!("sha256 {}", fp.sha256);

    if sys.p() == 0 {
        println!("no sensors");
        return;
    }
    let s = sys.sensor_node(0);
    for k in 1..=3 {
        for i in 0..sys.n() {
            let walks = paths_of_length(&sys, s, i, k, Direction::Transposed).unwrap();
            if walks.is_empty() {
                continue;
            }
            let id = verify_path_identity(&sys, 0, i, k).unwrap();
            println!(
                "k={k} {} -> {}: {} walk(s), weight {} (matrix entry {})",
                sys.label(s),
                sys.label(i),
                walks.len(),
                id.rhs,
                id.lhs
            );
        }
    }
}

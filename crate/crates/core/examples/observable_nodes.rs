//! Observable nodes of the eight-node network, with the reduction trace and
//! the coordinate change that exposes them.

use netdecomp::fixtures;
use netdecomp::observability::{analyze_checked, observable_oracle};

fn main() {
    let sys = fixtures::eight_node();
    let res = analyze_checked(&sys).expect("analysis");
    println!("O =\n{}", res.o);
    println!("rank(O) = {}", res.q);
    for it in &res.trace {
        println!("iteration {}: q_k = {}, f_k = {}", it.k, it.q_k, it.f_k);
        for op in it.row_ops.describe() {
            println!("    {op}");
        }
    }
    println!("observable: {:?}", sys.labels_of(&res.observable_set));
    println!("definition: {:?}", sys.labels_of(&observable_oracle(&sys)));
    println!("T =\n{}", res.t);
}

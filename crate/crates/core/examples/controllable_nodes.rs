//! Controllable node sets of a driven star: the unique core C1, every
//! completion C2, the perturbed nodes and the forced-value map W.

use netdecomp::controllability::{analyze, build_k, controllable_oracle, DEFAULT_ORACLE_CAP};
use netdecomp::fixtures;
use netdecomp::linalg::int;

fn main() {
    let sys = fixtures::chain3();
    let res = analyze(&sys, None).expect("analysis");
    println!("K =\n{}", res.k);
    println!("rank(K) = {}, C1 = {:?}", res.q, sys.labels_of(&res.c1));
    for ch in &res.choices {
        println!(
            "C2 = {:?}: C = {:?}, P = {:?}",
            sys.labels_of(&ch.c2),
            sys.labels_of(&ch.c),
            sys.labels_of(&ch.p)
        );
        println!("  W =\n{}", ch.w);
        println!("  T =\n{}  T^-1 =\n{}", ch.t, ch.t_inv);
        let x = ch.reachable_point(res.q, &[int(5), int(-2)]);
        let shown: Vec<String> = x.iter().map(ToString::to_string).collect();
        println!("  reachable point with C values (5, -2): {shown:?}");
    }
    let sets = controllable_oracle(&build_k(&sys), DEFAULT_ORACLE_CAP).unwrap();
    let named: Vec<Vec<String>> = sets.iter().map(|s| sys.labels_of(s)).collect();
    println!("by exhaustive search: {named:?}");
}

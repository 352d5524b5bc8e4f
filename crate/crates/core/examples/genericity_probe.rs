//! Redraws every nonzero weight and counts how often the observable set
//! stays the same.

use netdecomp::fixtures;
use netdecomp::structure::genericity_probe;

fn main() {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let sys = fixtures::eight_node();
    let rep = genericity_probe(&sys, samples, seed).expect("probe");
    println!("baseline {:?}", rep.baseline_set);
    println!(
        "agreement {} over {} samples (seed {})",
        rep.agreement_fraction, rep.samples, rep.seed
    );
    for d in &rep.disagreeing_samples {
        println!("  sample {} gave {:?}", d.sample, d.set);
    }
}

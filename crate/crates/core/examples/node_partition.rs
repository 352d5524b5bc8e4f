//! Six-cell decomposition for each controllable-set choice, as a table and
//! as the JSON report the command-line tool prints.

use netdecomp::cli::build_report;
use netdecomp::partition::partition;
use netdecomp::report::partition_table;
use netdecomp::system::load_system_file;
use netdecomp::{controllability, observability};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/chain3.json").into()
    });
    let sys = load_system_file(&path).expect("readable system");
    let obs = observability::analyze(&sys).unwrap();
    let ctrl = controllability::analyze(&sys, Some(8)).unwrap();
    let parts: Vec<_> = ctrl
        .choices
        .iter()
        .enumerate()
        .map(|(i, ch)| (i, partition(&obs, &ctrl, ch).unwrap()))
        .collect();
    print!("{}", partition_table(&sys, &parts));

    let report = build_report(&sys, None, Some(8)).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}

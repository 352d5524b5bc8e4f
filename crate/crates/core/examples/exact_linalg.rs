//! Exact rank, echelon form with its operation log, inverse and completion.

use netdecomp::linalg::{complete_to_full_rank, invert, rank, rref, Axis, Mat};

fn main() {
    let m = Mat::from_i64(&[[2, 4, 0], [1, 2, 3], [3, 6, 3]]);
    println!("M =\n{m}");
    println!("rank(M) = {}", rank(&m));

    let r = rref(&m, Axis::Rows);
    println!("rref =\n{}", r.reduced);
    for op in r.log.describe() {
        println!("  {op}");
    }

    let extra = complete_to_full_rank(&r.reduced.select_rows(&[0, 1]), Axis::Rows).unwrap();
    println!("completion rows =\n{extra}");

    let a = Mat::from_i64(&[[2, 1], [7, 4]]);
    println!("inverse of\n{a}is\n{}", invert(&a).unwrap());
    match invert(&m) {
        Ok(_) => unreachable!(),
        Err(e) => println!("M: {e}"),
    }
}

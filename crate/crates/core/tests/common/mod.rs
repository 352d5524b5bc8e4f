#![allow(dead_code)]

use netdecomp::linalg::{frac, int, Mat, Scalar};
use netdecomp::system::NetworkSystem;
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DENSITIES: [f64; 3] = [0.2, 0.5, 0.8];

/// Shape limits for [`random_system`].
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_n: usize,
    pub max_m: usize,
    pub max_p: usize,
}

fn weight(rng: &mut impl Rng) -> Scalar {
    let num = loop {
        let v = rng.gen_range(-5i64..=5);
        if v != 0 {
            break v;
        }
    };
    if rng.gen_bool(0.25) {
        frac(num, rng.gen_range(2..=4))
    } else {
        int(num)
    }
}

/// Seeded random system: each entry of `A` nonzero with probability
/// `density`, drivers and sensors on distinct random nodes.
pub fn random_system(seed: u64, density: f64, lim: Limits) -> NetworkSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=lim.max_n);
    let mut a = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                a[(i, j)] = weight(&mut rng);
            }
        }
    }
    let nodes: Vec<usize> = (0..n).collect();
    let m = rng.gen_range(0..=lim.max_m.min(n));
    let p = rng.gen_range(0..=lim.max_p.min(n));
    let mut drivers: Vec<usize> = nodes.choose_multiple(&mut rng, m).copied().collect();
    drivers.sort_unstable();
    let drivers: Vec<(usize, Scalar)> =
        drivers.into_iter().map(|d| (d, weight(&mut rng))).collect();
    let mut sensors: Vec<usize> = nodes.choose_multiple(&mut rng, p).copied().collect();
    sensors.sort_unstable();
    NetworkSystem::from_parts(a, &drivers, &sensors, None).expect("generator builds valid systems")
}

/// Random rational matrix with the given fraction of nonzero entries.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> Mat {
    let mut m = Mat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m[(i, j)] = weight(rng);
            }
        }
    }
    m
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => Just(int(0)),
        3 => (-6i64..=6).prop_map(int),
        1 => (-6i64..=6, 1i64..=5).prop_map(|(n, d)| frac(n, d)),
    ]
}

pub fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Mat> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(scalar(), r * c)
            .prop_map(move |d| Mat::from_vec(r, c, d).expect("sized"))
    })
}

pub fn square(max_n: usize) -> impl Strategy<Value = Mat> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(scalar(), n * n)
            .prop_map(move |d| Mat::from_vec(n, n, d).expect("sized"))
    })
}

pub fn system(max_n: usize, max_m: usize, max_p: usize) -> impl Strategy<Value = NetworkSystem> {
    (1..=max_n).prop_flat_map(move |n| {
        let nodes: Vec<usize> = (0..n).collect();
        (
            proptest::collection::vec(scalar(), n * n),
            subsequence(nodes.clone(), 0..=max_m.min(n)),
            proptest::collection::vec((1i64..=4, prop::bool::ANY), max_m),
            subsequence(nodes, 0..=max_p.min(n)),
        )
            .prop_map(move |(a, drivers, gains, sensors)| {
                let a = Mat::from_vec(n, n, a).expect("sized");
                let drivers: Vec<(usize, Scalar)> = drivers
                    .into_iter()
                    .zip(gains)
                    .map(|(d, (g, neg))| (d, int(if neg { -g } else { g })))
                    .collect();
                NetworkSystem::from_parts(a, &drivers, &sensors, None).expect("valid")
            })
    })
}

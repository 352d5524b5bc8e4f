//! Structured (free/fixed) matrix analysis.
//!
//! The generic rank of a pattern is the size of a maximum set of free entries
//! with no two in the same row or column, i.e. a maximum bipartite matching
//! between rows and columns.

use num::{BigInt, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::linalg::{Mat, Scalar};
use crate::observability;
use crate::ser;
use crate::system::NetworkSystem;

/// Largest magnitude drawn when a free entry is resampled.
pub const SAMPLE_MAX: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructurePattern {
    rows: usize,
    cols: usize,
    free: Vec<bool>,
}

impl StructurePattern {
    pub fn new(rows: usize, cols: usize, free: Vec<bool>) -> Self {
        assert_eq!(free.len(), rows * cols, "pattern mask size");
        StructurePattern { rows, cols, free }
    }

    pub fn fixed(rows: usize, cols: usize) -> Self {
        StructurePattern::new(rows, cols, vec![false; rows * cols])
    }

    pub fn diagonal(n: usize) -> Self {
        let mut p = StructurePattern::fixed(n, n);
        for i in 0..n {
            p.set(i, i, true);
        }
        p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_free(&self, i: usize, j: usize) -> bool {
        self.free[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, free: bool) {
        self.free[i * self.cols + j] = free;
    }

    pub fn free_count(&self) -> usize {
        self.free.iter().filter(|&&f| f).count()
    }

    /// Every free entry of `self` is free in `other`.
    pub fn is_subset_of(&self, other: &StructurePattern) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.free.iter().zip(&other.free).all(|(a, b)| !a || *b)
    }

    fn free_columns(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cols).filter(move |&j| self.is_free(i, j))
    }
}

/// Free exactly where `m` is nonzero.
pub fn pattern_of(m: &Mat) -> StructurePattern {
    let free = m.entries().iter().map(|v| !v.is_zero()).collect();
    StructurePattern::new(m.nrows(), m.ncols(), free)
}

/// Maximum matching size between rows and columns over the free entries.
pub fn generic_rank(p: &StructurePattern) -> usize {
    let mut col_owner: Vec<Option<usize>> = vec![None; p.ncols()];
    let mut matched = 0;
    for row in 0..p.nrows() {
        let mut visited = vec![false; p.ncols()];
        if augment(p, row, &mut visited, &mut col_owner) {
            matched += 1;
        }
    }
    matched
}

fn augment(
    p: &StructurePattern,
    row: usize,
    visited: &mut [bool],
    col_owner: &mut [Option<usize>],
) -> bool {
    for col in p.free_columns(row) {
        if visited[col] {
            continue;
        }
        visited[col] = true;
        let free_slot = match col_owner[col] {
            None => true,
            Some(other) => augment(p, other, visited, col_owner),
        };
        if free_slot {
            col_owner[col] = Some(row);
            return true;
        }
    }
    false
}

/// Boolean `k`-th power: entry `(i, j)` is free iff a walk of exactly `k`
/// edges leads from `v_j` to `v_i`. Cancellations are ignored by design.
pub fn power_pattern(p: &StructurePattern, k: usize) -> StructurePattern {
    assert_eq!(p.nrows(), p.ncols(), "power of a non-square pattern");
    assert!(k >= 1, "pattern power needs k >= 1");
    let n = p.nrows();
    let mut acc = p.clone();
    for _ in 1..k {
        let mut next = StructurePattern::fixed(n, n);
        for i in 0..n {
            for l in (0..n).filter(|&l| acc.is_free(i, l)) {
                for j in p.free_columns(l) {
                    next.set(i, j, true);
                }
            }
        }
        acc = next;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisagreeingSample {
    pub sample: usize,
    pub set: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    pub samples: usize,
    pub seed: u64,
    #[serde(serialize_with = "ser::scalar")]
    pub agreement_fraction: Scalar,
    pub baseline_set: Vec<String>,
    pub disagreeing_samples: Vec<DisagreeingSample>,
}

/// Same zero pattern and signs, magnitudes redrawn from `1..=SAMPLE_MAX`.
pub fn resample(sys: &NetworkSystem, rng: &mut impl Rng) -> Result<NetworkSystem> {
    let redraw = |m: &Mat, rng: &mut dyn rand::RngCore| -> Mat {
        let mut out = m.clone();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let v = &m[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let mag = rng.gen_range(1..=SAMPLE_MAX);
                let val = if v.is_negative() { -mag } else { mag };
                out[(i, j)] = Scalar::from_integer(BigInt::from(val));
            }
        }
        out
    };
    let a = redraw(sys.a(), rng);
    let b = redraw(sys.b(), rng);
    sys.with_matrices(a, b, sys.c().clone())
}

/// Per-sample stream: ChaCha keyed by `seed`, stream number = sample index.
pub fn sample_rng(seed: u64, sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample as u64);
    rng
}

/// Resamples the nonzero entries `samples` times and reports how often the
/// observable node set matches the one of the original system.
pub fn genericity_probe(
    sys: &NetworkSystem,
    samples: usize,
    seed: u64,
) -> Result<GenericityReport> {
    assert!(samples >= 1, "probe needs at least one sample");
    let baseline = observability::analyze(sys)?.observable_set;
    let mut agree = 0usize;
    let mut disagreeing = Vec::new();
    for s in 0..samples {
        let mut rng = sample_rng(seed, s);
        let inst = resample(sys, &mut rng)?;
        let set = observability::analyze(&inst)?.observable_set;
        if set == baseline {
            agree += 1;
        } else {
            disagreeing.push(DisagreeingSample {
                sample: s,
                set: sys.labels_of(&set),
            });
        }
    }
    Ok(GenericityReport {
        samples,
        seed,
        agreement_fraction: Scalar::new(BigInt::from(agree), BigInt::from(samples)),
        baseline_set: sys.labels_of(&baseline),
        disagreeing_samples: disagreeing,
    })
}

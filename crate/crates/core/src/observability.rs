//! Node-level observability.
//!
//! A node `v_i` is observable iff `e_i` lies in the row space of the
//! observability matrix `O = [C; CA; ...; CA^(N-1)]`. The set of such nodes is
//! unique and in general smaller than `rank(O)`.
//!
//! [`algorithm1`] finds it by repeatedly splitting the first `q` independent
//! rows of `O` into a square invertible block `H` and a remainder `F`, zeroing
//! `F` in as many rows as possible and shrinking `H` until `F` vanishes.
//! [`observable_oracle`] computes the same set straight from the definition.

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{complete_to_full_rank, Axis, EchelonBasis, ElemOp, ElemOpLog, Mat, Scalar};
use crate::system::{Fingerprint, NetworkSystem};

/// One pass of the reduction loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    /// 1-based iteration index.
    pub k: usize,
    pub q_k: usize,
    pub f_k: usize,
    /// Row operations on the active rows (indices into the full `Q`).
    pub row_ops: ElemOpLog,
    /// New order of the active `H` columns: selected block first.
    pub column_permutation_k: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algorithm1Output {
    /// Sorted node indices.
    pub observable_set: Vec<usize>,
    pub trace: Vec<IterationRecord>,
    /// `Q` after all row operations, original column order.
    pub reduced: Mat,
    /// `reduced` with its columns in `column_permutation` order.
    pub qbar: Mat,
    /// Column `c` of `qbar` is node `column_permutation[c]`.
    pub column_permutation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservabilityResult {
    pub system: Fingerprint,
    pub o: Mat,
    pub q: usize,
    pub q_mat: Mat,
    pub h_columns: Vec<usize>,
    pub observable_set: Vec<usize>,
    pub trace: Vec<IterationRecord>,
    pub reduced: Mat,
    pub qbar: Mat,
    pub column_permutation: Vec<usize>,
    pub t: Mat,
}

/// `[C; CA; CA^2; ...; CA^(N-1)]`, an `NP x N` matrix.
pub fn build_o(sys: &NetworkSystem) -> Mat {
    let n = sys.n();
    let mut o = Mat::zeros(0, n);
    let mut block = sys.c().clone();
    for k in 0..n {
        o = o.vstack(&block).expect("same width");
        if k + 1 < n {
            block = &block * sys.a();
        }
    }
    o
}

/// First `q` independent rows of `O`, top to bottom, and the first `q`
/// columns (left to right) whose restriction to those rows is independent.
pub fn extract_q(o: &Mat) -> (Mat, Vec<usize>) {
    let mut rows = EchelonBasis::new(o.ncols());
    let mut picked = Vec::new();
    for (i, r) in o.rows_iter().enumerate() {
        if rows.insert(r) {
            picked.push(i);
        }
    }
    let q = o.select_rows(&picked);
    let h_columns =
        independent_columns(&q, (0..q.ncols()).collect::<Vec<_>>().as_slice(), q.nrows());
    (q, h_columns)
}

/// Greedy left-to-right scan over `candidates`, keeping columns of `m`
/// (restricted to its first `top` rows) that raise the rank, up to `top`.
fn independent_columns(m: &Mat, candidates: &[usize], top: usize) -> Vec<usize> {
    let mut basis = EchelonBasis::new(top);
    let mut out = Vec::new();
    for &c in candidates {
        if out.len() == top {
            break;
        }
        let col: Vec<Scalar> = (0..top).map(|i| m[(i, c)].clone()).collect();
        if basis.insert(&col) {
            out.push(c);
        }
    }
    out
}

fn block_is_zero(m: &Mat, rows: usize, cols: &[usize]) -> bool {
    (0..rows).all(|i| cols.iter().all(|&c| m[(i, c)].is_zero()))
}

fn block_rank(m: &Mat, rows: usize, cols: &[usize]) -> usize {
    let mut b = EchelonBasis::new(cols.len());
    for i in 0..rows {
        let r: Vec<Scalar> = cols.iter().map(|&c| m[(i, c)].clone()).collect();
        b.insert(&r);
    }
    b.rank()
}

/// Runs the reduction loop on a full-row-rank `Q` whose `h_columns` form an
/// invertible square block.
pub fn algorithm1(q: &Mat, h_columns: &[usize]) -> Result<Algorithm1Output> {
    let n = q.ncols();
    if h_columns.len() != q.nrows() {
        return Err(Error::InvalidArgument(format!(
            "{} H columns for {} rows",
            h_columns.len(),
            q.nrows()
        )));
    }
    let mut work = q.clone();
    let mut h_cols: Vec<usize> = h_columns.to_vec();
    h_cols.sort_unstable();
    // columns that have left H, most recent first once prepended
    let mut f_cols: Vec<usize> = (0..n).filter(|c| !h_cols.contains(c)).collect();
    let mut q_k = q.nrows();
    let mut trace = Vec::new();
    let mut k = 1;

    while !block_is_zero(&work, q_k, &f_cols) {
        let f_k = block_rank(&work, q_k, &f_cols);
        let mut log = ElemOpLog::new();

        // Zero F in the top rows: pivots taken bottom-up per F column.
        let mut is_pivot = vec![false; q_k];
        for &col in &f_cols {
            let Some(p) = (0..q_k)
                .rev()
                .find(|&r| !is_pivot[r] && !work[(r, col)].is_zero())
            else {
                continue;
            };
            is_pivot[p] = true;
            for r in 0..q_k {
                if is_pivot[r] || work[(r, col)].is_zero() {
                    continue;
                }
                let c = -(&work[(r, col)] / &work[(p, col)]);
                work.add_row_multiple(r, p, &c);
                log.push(ElemOp::AddMultiple {
                    axis: Axis::Rows,
                    i: r,
                    j: p,
                    c,
                });
            }
        }
        let pivots = is_pivot.iter().filter(|&&b| b).count();
        if pivots != f_k {
            return Err(Error::InvariantViolation(format!(
                "iteration {k}: {pivots} pivot rows for rank(F) = {f_k}"
            )));
        }

        // Move the pivot rows to the bottom, keeping relative order.
        let desired: Vec<usize> = (0..q_k)
            .filter(|&r| !is_pivot[r])
            .chain((0..q_k).filter(|&r| is_pivot[r]))
            .collect();
        let mut at: Vec<usize> = (0..q_k).collect(); // at[pos] = original row now at pos
        for (pos, &want) in desired.iter().enumerate() {
            let cur = at.iter().position(|&r| r == want).expect("row present");
            if cur != pos {
                work.swap_rows(pos, cur);
                at.swap(pos, cur);
                log.push(ElemOp::Swap {
                    axis: Axis::Rows,
                    i: pos,
                    j: cur,
                });
            }
        }

        let keep = q_k - f_k;
        if !block_is_zero(&work, keep, &f_cols) {
            return Err(Error::InvariantViolation(format!(
                "iteration {k}: F not cleared from the top {keep} rows"
            )));
        }

        let selected = independent_columns(&work, &h_cols, keep);
        if selected.len() != keep {
            return Err(Error::InvariantViolation(format!(
                "iteration {k}: no invertible {keep}x{keep} block among H columns"
            )));
        }
        let dropped: Vec<usize> = h_cols
            .iter()
            .copied()
            .filter(|c| !selected.contains(c))
            .collect();
        let column_permutation_k: Vec<usize> = selected.iter().chain(&dropped).copied().collect();

        trace.push(IterationRecord {
            k,
            q_k,
            f_k,
            row_ops: log,
            column_permutation_k,
        });

        f_cols = dropped.into_iter().chain(f_cols).collect();
        h_cols = selected;
        q_k = keep;
        k += 1;
    }

    let column_permutation: Vec<usize> = h_cols.iter().chain(&f_cols).copied().collect();
    let qbar = work.select_cols(&column_permutation);
    Ok(Algorithm1Output {
        observable_set: h_cols,
        trace,
        reduced: work,
        qbar,
        column_permutation,
    })
}

/// `{ v_i : e_i in rowspace(O) }`, computed directly.
pub fn observable_oracle(sys: &NetworkSystem) -> Vec<usize> {
    let o = build_o(sys);
    let basis = EchelonBasis::from_rows(&o);
    (0..sys.n())
        .filter(|&i| basis.contains(&Mat::versor(sys.n(), i)))
        .collect()
}

/// Coordinate change `z = T x` with `z_i = x_i` for every observable `v_i`.
///
/// Rows: `e_i` for the observable nodes (ascending), then the remaining rows
/// of the reduced `Q` with their observable-column entries eliminated, then
/// versors completing `T` to full rank.
pub fn build_t_observability(out: &Algorithm1Output) -> Result<Mat> {
    let reduced = &out.reduced;
    let n = reduced.ncols();
    let obs = &out.observable_set;
    let h = obs.len();
    let others: Vec<usize> = (0..n).filter(|c| !obs.contains(c)).collect();
    if !block_is_zero(reduced, h, &others) {
        return Err(Error::InvariantViolation(
            "observable rows of the reduced Q are not confined to observable columns".into(),
        ));
    }
    let mut rows: Vec<Vec<Scalar>> = obs.iter().map(|&i| Mat::versor(n, i)).collect();
    for r in h..reduced.nrows() {
        let mut row = reduced.row(r).to_vec();
        for &i in obs {
            row[i] = Scalar::zero();
        }
        rows.push(row);
    }
    let top = Mat::from_rows(rows, n)?;
    let completion = complete_to_full_rank(&top, Axis::Rows).map_err(|e| {
        Error::InvariantViolation(format!("transformation rows are dependent: {e}"))
    })?;
    top.vstack(&completion)
}

/// Full pipeline: `O`, `Q`, the reduction loop and `T`.
pub fn analyze(sys: &NetworkSystem) -> Result<ObservabilityResult> {
    let o = build_o(sys);
    let (q_mat, h_columns) = extract_q(&o);
    let out = algorithm1(&q_mat, &h_columns)?;
    let t = build_t_observability(&out)?;
    Ok(ObservabilityResult {
        system: sys.fingerprint(),
        q: q_mat.nrows(),
        o,
        q_mat,
        h_columns,
        observable_set: out.observable_set,
        trace: out.trace,
        reduced: out.reduced,
        qbar: out.qbar,
        column_permutation: out.column_permutation,
        t,
    })
}

/// [`analyze`] plus agreement with [`observable_oracle`]; disagreement is an
/// internal error.
pub fn analyze_checked(sys: &NetworkSystem) -> Result<ObservabilityResult> {
    let res = analyze(sys)?;
    let oracle = observable_oracle(sys);
    if oracle != res.observable_set {
        return Err(Error::InvariantViolation(format!(
            "reduction found {:?} but the definition gives {:?}",
            sys.labels_of(&res.observable_set),
            sys.labels_of(&oracle)
        )));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{int, invert, rank, row_space_contains};

    #[test]
    fn observability_matrix_of_eight_node() {
        let sys = fixtures::eight_node();
        let o = build_o(&sys);
        assert_eq!(o, fixtures::eight_node_observability());
        assert_eq!(
            o.row(2),
            Mat::from_i64(&[[0, 0, 3, 3, 0, 35, 28, 7]]).row(0)
        );
        assert_eq!(rank(&o), 6);
    }

    #[test]
    fn observability_matrix_degenerate_cases() {
        let sys = NetworkSystem::from_parts(Mat::zeros(3, 3), &[], &[0], None).unwrap();
        let o = build_o(&sys);
        assert_eq!(o, Mat::from_i64(&[[1, 0, 0], [0, 0, 0], [0, 0, 0]]));

        let a = fixtures::eight_node().a().clone();
        let sys = NetworkSystem::from_parts(a, &[], &(0..8).collect::<Vec<_>>(), None).unwrap();
        let o = build_o(&sys);
        assert_eq!(o.shape(), (64, 8));
        assert_eq!(o.select_rows(&(0..8).collect::<Vec<_>>()), Mat::identity(8));
        assert_eq!(rank(&o), 8);
    }

    #[test]
    fn extract_q_of_eight_node() {
        let o = fixtures::eight_node_observability();
        let (q, h) = extract_q(&o);
        assert_eq!(q, o.select_rows(&[0, 1, 2, 3, 4, 5]));
        assert_eq!(h, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn extract_q_with_identical_rows() {
        let o = Mat::from_i64(&[[1, 2, 3], [1, 2, 3], [1, 2, 3]]);
        let (q, h) = extract_q(&o);
        assert_eq!(q, Mat::from_i64(&[[1, 2, 3]]));
        assert_eq!(h, vec![0]);
    }

    #[test]
    fn reduction_from_leading_columns() {
        let o = fixtures::eight_node_observability();
        let (q, h) = extract_q(&o);
        let out = algorithm1(&q, &h).unwrap();
        assert_eq!(out.observable_set, vec![0, 1, 2, 3]);
        // columns 7 and 8 both start in F, and they are independent
        let f: Vec<usize> = out.trace.iter().map(|r| r.f_k).collect();
        assert_eq!(f, vec![2]);
    }

    #[test]
    fn reduction_trace_on_eight_node() {
        // H block {v1..v5, v8}, F = {v6, v7}
        let q = fixtures::eight_node_observability().select_rows(&[0, 1, 2, 3, 4, 5]);
        let out = algorithm1(&q, &[0, 1, 2, 3, 4, 7]).unwrap();
        assert_eq!(out.observable_set, vec![0, 1, 2, 3]);
        let f: Vec<usize> = out.trace.iter().map(|r| r.f_k).collect();
        assert_eq!(f, vec![1, 1]);
        let qk: Vec<usize> = out.trace.iter().map(|r| r.q_k).collect();
        assert_eq!(qk, vec![6, 5]);
        // first pass subtracts the last row from rows 3..5
        assert_eq!(
            out.trace[0].row_ops.describe(),
            vec!["r3 += -1 * r6", "r4 += -1 * r6", "r5 += -1 * r6"]
        );
        assert_eq!(out.column_permutation, vec![0, 1, 2, 3, 4, 7, 5, 6]);
    }

    #[test]
    fn trace_replays_onto_q() {
        let o = fixtures::eight_node_observability();
        let (q, h) = extract_q(&o);
        let out = algorithm1(&q, &h).unwrap();
        let mut m = q.clone();
        for rec in &out.trace {
            rec.row_ops.replay(&mut m);
        }
        assert_eq!(m, out.reduced);
        assert_eq!(out.qbar, out.reduced.select_cols(&out.column_permutation));
    }

    #[test]
    fn qbar_has_zero_blocks() {
        let o = fixtures::eight_node_observability();
        let (q, h) = extract_q(&o);
        let out = algorithm1(&q, &h).unwrap();
        let k = out.observable_set.len();
        for i in 0..k {
            for j in k..8 {
                assert!(out.qbar[(i, j)].is_zero());
            }
        }
        let hblock = out
            .qbar
            .submatrix(&(0..k).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>());
        assert!(invert(&hblock).is_ok());
    }

    #[test]
    fn identity_sensing_needs_no_iterations() {
        let out = algorithm1(&Mat::identity(4), &[0, 1, 2, 3]).unwrap();
        assert_eq!(out.observable_set, vec![0, 1, 2, 3]);
        assert!(out.trace.is_empty());
    }

    #[test]
    fn no_sensors_means_nothing_observable() {
        let sys = NetworkSystem::from_parts(Mat::identity(3), &[], &[], None).unwrap();
        let res = analyze_checked(&sys).unwrap();
        assert!(res.observable_set.is_empty());
        assert_eq!(res.q, 0);
        assert_eq!(res.t, Mat::identity(3));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(observable_oracle(&fixtures::eight_node()), vec![0, 1, 2, 3]);
        let sys = NetworkSystem::from_parts(Mat::zeros(3, 3), &[], &[0], None).unwrap();
        assert_eq!(observable_oracle(&sys), vec![0]);
        let sys = NetworkSystem::from_parts(Mat::from_i64(&[[1, 2], [3, 4]]), &[], &[0, 1], None)
            .unwrap();
        assert_eq!(observable_oracle(&sys), vec![0, 1]);
    }

    #[test]
    fn transformation_of_eight_node() {
        let res = analyze(&fixtures::eight_node()).unwrap();
        let t = &res.t;
        assert_eq!(t.shape(), (8, 8));
        assert!(invert(t).is_ok());
        for i in 0..4 {
            assert_eq!(t.row(i), Mat::versor(8, i).as_slice());
        }
        let top = t.select_rows(&(0..6).collect::<Vec<_>>());
        assert_eq!(rank(&top), 6);
        for r in top.rows_iter() {
            assert!(row_space_contains(&res.o, r).unwrap());
        }
    }

    #[test]
    fn transformation_small_cases() {
        let sys = NetworkSystem::from_parts(Mat::zeros(2, 2), &[], &[0], None).unwrap();
        assert_eq!(analyze(&sys).unwrap().t, Mat::identity(2));
        let sys = NetworkSystem::from_parts(Mat::zeros(2, 2), &[], &[0, 1], None).unwrap();
        assert_eq!(analyze(&sys).unwrap().t, Mat::identity(2));
    }

    #[test]
    fn transformation_preserves_observable_coordinates() {
        let res = analyze(&fixtures::eight_node()).unwrap();
        let x: Vec<Scalar> = (1..=8).map(|v| int(v * v - 3)).collect();
        let z = res.t.apply(&x);
        for &i in &res.observable_set {
            assert_eq!(z[i], x[i]);
        }
    }
}

//! Gauss-Jordan elimination over the rationals with deterministic pivoting:
//! columns are scanned left to right and the topmost unused row holding a
//! nonzero entry becomes the pivot row. No magnitude heuristics.

use num::{One, Zero};
use serde::Serialize;

use super::mat::Mat;
use super::scalar::{format_scalar, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Rows,
    Columns,
}

/// One elementary transformation. For `Columns`, indices refer to columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemOp {
    Swap {
        axis: Axis,
        i: usize,
        j: usize,
    },
    /// line `i` multiplied by the nonzero `c`
    Scale {
        axis: Axis,
        i: usize,
        c: Scalar,
    },
    /// line `i` += `c` * line `j`
    AddMultiple {
        axis: Axis,
        i: usize,
        j: usize,
        c: Scalar,
    },
}

impl ElemOp {
    pub fn apply(&self, m: &mut Mat) {
        match self {
            ElemOp::Swap {
                axis: Axis::Rows,
                i,
                j,
            } => m.swap_rows(*i, *j),
            ElemOp::Swap {
                axis: Axis::Columns,
                i,
                j,
            } => m.swap_cols(*i, *j),
            ElemOp::Scale {
                axis: Axis::Rows,
                i,
                c,
            } => m.scale_row(*i, c),
            ElemOp::Scale {
                axis: Axis::Columns,
                i,
                c,
            } => m.scale_col(*i, c),
            ElemOp::AddMultiple {
                axis: Axis::Rows,
                i,
                j,
                c,
            } => m.add_row_multiple(*i, *j, c),
            ElemOp::AddMultiple {
                axis: Axis::Columns,
                i,
                j,
                c,
            } => m.add_col_multiple(*i, *j, c),
        }
    }

    fn transposed(self) -> ElemOp {
        let flip = |a: Axis| match a {
            Axis::Rows => Axis::Columns,
            Axis::Columns => Axis::Rows,
        };
        match self {
            ElemOp::Swap { axis, i, j } => ElemOp::Swap {
                axis: flip(axis),
                i,
                j,
            },
            ElemOp::Scale { axis, i, c } => ElemOp::Scale {
                axis: flip(axis),
                i,
                c,
            },
            ElemOp::AddMultiple { axis, i, j, c } => ElemOp::AddMultiple {
                axis: flip(axis),
                i,
                j,
                c,
            },
        }
    }

    /// Short human-readable form, 1-based: `r3 += -1 * r6`.
    pub fn describe(&self) -> String {
        let p = |a: &Axis| if *a == Axis::Rows { 'r' } else { 'c' };
        match self {
            ElemOp::Swap { axis, i, j } => format!("{0}{1} <-> {0}{2}", p(axis), i + 1, j + 1),
            ElemOp::Scale { axis, i, c } => {
                format!("{0}{1} *= {2}", p(axis), i + 1, format_scalar(c))
            }
            ElemOp::AddMultiple { axis, i, j, c } => format!(
                "{0}{1} += {2} * {0}{3}",
                p(axis),
                i + 1,
                format_scalar(c),
                j + 1
            ),
        }
    }
}

/// Ordered record of elementary operations; replaying it on the input
/// reproduces the transformed matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElemOpLog {
    ops: Vec<ElemOp>,
}

impl ElemOpLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, op: ElemOp) {
        self.ops.push(op);
    }

    pub fn extend(&mut self, other: ElemOpLog) {
        self.ops.extend(other.ops);
    }

    pub fn ops(&self) -> &[ElemOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn replay(&self, m: &mut Mat) {
        for op in &self.ops {
            op.apply(m);
        }
    }

    pub fn describe(&self) -> Vec<String> {
        self.ops.iter().map(ElemOp::describe).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Mat,
    pub log: ElemOpLog,
    /// (row, col) positions in the reduced matrix, in scan order.
    pub pivots: Vec<(usize, usize)>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced echelon form along `axis`, with the operation log and pivots.
pub fn rref(m: &Mat, axis: Axis) -> Rref {
    match axis {
        Axis::Rows => rref_rows(m),
        Axis::Columns => {
            let t = rref_rows(&m.transpose());
            Rref {
                reduced: t.reduced.transpose(),
                log: ElemOpLog {
                    ops: t.log.ops.into_iter().map(ElemOp::transposed).collect(),
                },
                pivots: t.pivots.into_iter().map(|(r, c)| (c, r)).collect(),
            }
        }
    }
}

fn rref_rows(m: &Mat) -> Rref {
    let mut a = m.clone();
    let mut log = ElemOpLog::new();
    let mut pivots = Vec::new();
    let (rows, cols) = a.shape();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(src) = (pr..rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if src != pr {
            a.swap_rows(src, pr);
            log.push(ElemOp::Swap {
                axis: Axis::Rows,
                i: pr,
                j: src,
            });
        }
        let p = a[(pr, col)].clone();
        if !p.is_one() {
            let inv = p.recip();
            a.scale_row(pr, &inv);
            log.push(ElemOp::Scale {
                axis: Axis::Rows,
                i: pr,
                c: inv,
            });
        }
        for r in 0..rows {
            if r == pr || a[(r, col)].is_zero() {
                continue;
            }
            let c = -a[(r, col)].clone();
            a.add_row_multiple(r, pr, &c);
            log.push(ElemOp::AddMultiple {
                axis: Axis::Rows,
                i: r,
                j: pr,
                c,
            });
        }
        pivots.push((pr, col));
        pr += 1;
    }
    Rref {
        reduced: a,
        log,
        pivots,
    }
}

/// Incrementally built row-echelon basis of a subspace of Q^width.
///
/// Stored rows have a unit pivot and vanish at the pivots of earlier rows,
/// so reducing a candidate in insertion order is exact.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    width: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBasis {
    pub fn new(width: usize) -> Self {
        EchelonBasis {
            width,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(m: &Mat) -> Self {
        let mut b = EchelonBasis::new(m.ncols());
        for r in m.rows_iter() {
            b.insert(r);
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.width, "vector length");
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if it is independent of the current rows; reports whether it was.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, r));
        true
    }
}

pub fn rank(m: &Mat) -> usize {
    if m.nrows() <= m.ncols() {
        EchelonBasis::from_rows(m).rank()
    } else {
        EchelonBasis::from_rows(&m.transpose()).rank()
    }
}

/// Whether the row vector `v` lies in the row space of `m`.
pub fn row_space_contains(m: &Mat, v: &[Scalar]) -> Result<bool> {
    if v.len() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against {} columns",
            v.len(),
            m.ncols()
        )));
    }
    Ok(EchelonBasis::from_rows(m).contains(v))
}

/// Whether the column vector `v` lies in the column space of `m`.
pub fn col_space_contains(m: &Mat, v: &[Scalar]) -> Result<bool> {
    row_space_contains(&m.transpose(), v)
}

/// Basis of `{x : m x = 0}` as the columns of the returned `cols x (cols - rank)` matrix.
pub fn null_space(m: &Mat) -> Mat {
    let r = rref(m, Axis::Rows);
    let n = m.ncols();
    let pivot_cols: Vec<usize> = r.pivots.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Mat::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = Scalar::one();
        for &(row, pc) in &r.pivots {
            basis[(pc, k)] = -r.reduced[(row, f)].clone();
        }
    }
    basis
}

pub fn invert(m: &Mat) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "cannot invert a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = m.nrows();
    let aug = m.hstack(&Mat::identity(n))?;
    let r = rref(&aug, Axis::Rows);
    if r.pivots.iter().take_while(|&&(_, c)| c < n).count() < n {
        return Err(Error::SingularMatrix);
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    Ok(r.reduced.select_cols(&cols))
}

/// Versors `e_i`, in increasing `i`, that extend `m` to a square invertible
/// matrix along `axis`. Only the appended lines are returned.
///
/// For `Rows` the rows of `m` must be independent; for `Columns`, its columns.
pub fn complete_to_full_rank(m: &Mat, axis: Axis) -> Result<Mat> {
    let lines = match axis {
        Axis::Rows => m.clone(),
        Axis::Columns => m.transpose(),
    };
    let width = lines.ncols();
    let mut basis = EchelonBasis::from_rows(&lines);
    if basis.rank() != lines.nrows() {
        return Err(Error::InvalidArgument(format!(
            "{} lines of rank {} cannot be completed",
            lines.nrows(),
            basis.rank()
        )));
    }
    let mut appended = Vec::new();
    for i in 0..width {
        if basis.rank() == width {
            break;
        }
        let e = Mat::versor(width, i);
        if basis.insert(&e) {
            appended.push(e);
        }
    }
    let out = Mat::from_rows(appended, width)?;
    Ok(match axis {
        Axis::Rows => out,
        Axis::Columns => out.transpose(),
    })
}

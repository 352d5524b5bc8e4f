//! Node-level controllability.
//!
//! `q = rank(K)` nodes can be steered independently, but which ones is not
//! unique. Every maximal set splits into a fixed core `C1` (nodes whose versor
//! lies in `range(K)`) and a completion `C2` picked from the rows of the
//! remaining basis block `R` so that `R[C2, :]` is invertible. Once values on
//! `C = C1 ∪ C2` are fixed, the other coordinates of a reachable point are
//! forced to `W x_C2` with `W = R32 R22^-1`; nodes with a nonzero row of `W`
//! are the perturbed set `P`.

use std::collections::VecDeque;

use itertools::Itertools;
use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{complete_to_full_rank, invert, rank, Axis, EchelonBasis, Mat, Scalar};
use crate::system::{Direction, Fingerprint, NetworkSystem};

/// Default cap on reported completion choices.
pub const DEFAULT_CHOICE_LIMIT: usize = 64;

/// Default cap on subsets examined by [`controllable_oracle`].
pub const DEFAULT_ORACLE_CAP: u128 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KReduction {
    pub q: usize,
    pub h: usize,
    /// Sorted core nodes.
    pub c1: Vec<usize>,
    /// `N x q`: versors of `C1` first, then `R`: the leading independent
    /// columns of `K` with their `C1` entries eliminated.
    pub basis: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControllableChoice {
    pub c2: Vec<usize>,
    /// `C1 ∪ C2`, sorted.
    pub c: Vec<usize>,
    pub p: Vec<usize>,
    /// Nodes outside `C`, ascending; these index the rows of `w`.
    pub rest: Vec<usize>,
    /// `(N - q) x (q - h)` forced-value map; columns follow `c2`.
    pub w: Mat,
    /// Row order of `t`: `C1`, then `C2`, then `rest`.
    pub order: Vec<usize>,
    /// `[I 0 0; 0 R22 0; 0 R32 T33]` in `order` coordinates.
    pub t: Mat,
    pub t_inv: Mat,
    /// Nodes reachable from a driver in the network graph but not in `C`.
    pub downstream: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControllabilityResult {
    pub system: Fingerprint,
    pub k: Mat,
    pub q: usize,
    pub h: usize,
    pub c1: Vec<usize>,
    pub basis: Mat,
    pub choices: Vec<ControllableChoice>,
    /// Set when `choices` stopped at the requested limit.
    pub truncated: bool,
}

/// `[B, AB, A^2 B, ..., A^(N-1) B]`, an `N x NM` matrix.
pub fn build_k(sys: &NetworkSystem) -> Mat {
    let n = sys.n();
    let mut k = Mat::zeros(n, 0);
    let mut block = sys.b().clone();
    for p in 0..n {
        k = k.hstack(&block).expect("same height");
        if p + 1 < n {
            block = sys.a() * &block;
        }
    }
    k
}

pub fn reduce_k(k: &Mat) -> KReduction {
    let n = k.nrows();
    let kt = k.transpose();
    let span = EchelonBasis::from_rows(&kt);
    let q = span.rank();
    let c1: Vec<usize> = (0..n)
        .filter(|&i| span.contains(&Mat::versor(n, i)))
        .collect();
    let h = c1.len();

    // Columns of K with the C1 coordinates projected out still lie in range(K)
    // and span its part that vanishes on C1.
    let mut rest_span = EchelonBasis::new(n);
    let mut r_cols = Vec::new();
    for col in kt.rows_iter() {
        if r_cols.len() == q - h {
            break;
        }
        let mut v = col.to_vec();
        for &i in &c1 {
            v[i] = Scalar::zero();
        }
        if rest_span.insert(&v) {
            r_cols.push(v);
        }
    }
    debug_assert_eq!(r_cols.len(), q - h);
    let r = Mat::from_rows(r_cols, n).expect("width n").transpose();

    let mut basis = Mat::zeros(n, q);
    for (c, &i) in c1.iter().enumerate() {
        basis[(i, c)] = Scalar::from_integer(1.into());
    }
    for i in 0..n {
        for j in 0..q - h {
            basis[(i, h + j)] = r[(i, j)].clone();
        }
    }
    KReduction { q, h, c1, basis }
}

fn r_block(red: &KReduction) -> Mat {
    red.basis.select_cols(&(red.h..red.q).collect::<Vec<_>>())
}

/// Valid completions `C2` in lexicographic order, at most `limit` of them.
pub fn enumerate_c2(red: &KReduction, limit: Option<usize>) -> Vec<Vec<usize>> {
    let n = red.basis.nrows();
    let size = red.q - red.h;
    let r = r_block(red);
    let candidates: Vec<usize> = (0..n).filter(|i| !red.c1.contains(i)).collect();
    let mut out = Vec::new();
    for s in candidates.into_iter().combinations(size) {
        if limit.is_some_and(|l| out.len() >= l) {
            break;
        }
        if rank(&r.select_rows(&s)) == size {
            out.push(s);
        }
    }
    out
}

fn check_choice(red: &KReduction, c2: &[usize]) -> Result<()> {
    let n = red.basis.nrows();
    if c2.len() != red.q - red.h {
        return Err(Error::InvalidChoice(format!(
            "C2 needs {} nodes, got {}",
            red.q - red.h,
            c2.len()
        )));
    }
    if c2.iter().any(|&i| i >= n || red.c1.contains(&i)) || !c2.iter().all_unique() {
        return Err(Error::InvalidChoice(
            "C2 must be distinct nodes outside C1".into(),
        ));
    }
    Ok(())
}

fn rest_of(n: usize, c1: &[usize], c2: &[usize]) -> Vec<usize> {
    (0..n)
        .filter(|i| !c1.contains(i) && !c2.contains(i))
        .collect()
}

/// Forced-value map `W = R32 R22^-1` and the perturbed nodes (nonzero rows).
pub fn perturbed_map(red: &KReduction, c2: &[usize]) -> Result<(Vec<usize>, Mat)> {
    check_choice(red, c2)?;
    let n = red.basis.nrows();
    let r = r_block(red);
    let rest = rest_of(n, &red.c1, c2);
    let r22 = r.select_rows(c2);
    let r32 = r.select_rows(&rest);
    let r22_inv = invert(&r22)
        .map_err(|_| Error::InvalidChoice(format!("R22 on rows {c2:?} is singular")))?;
    let w = &r32 * &r22_inv;
    let p = rest
        .iter()
        .enumerate()
        .filter(|(row, _)| w.row(*row).iter().any(|v| !v.is_zero()))
        .map(|(_, &node)| node)
        .collect();
    Ok((p, w))
}

/// `T` and `T^-1` in `(C1 | C2 | rest)` row order, returned with that order.
pub fn build_t_controllability(red: &KReduction, c2: &[usize]) -> Result<(Mat, Mat, Vec<usize>)> {
    check_choice(red, c2)?;
    let n = red.basis.nrows();
    let rest = rest_of(n, &red.c1, c2);
    let order: Vec<usize> = red.c1.iter().chain(c2).chain(&rest).copied().collect();
    let q = red.q;
    // The rest block is completed on its own coordinates so T stays block lower-triangular.
    let t33 = complete_to_full_rank(&Mat::zeros(0, n - q), Axis::Rows)?;
    let mut t = Mat::zeros(n, n);
    let permuted = red.basis.select_rows(&order);
    for i in 0..n {
        for j in 0..q {
            t[(i, j)] = permuted[(i, j)].clone();
        }
    }
    for i in 0..n - q {
        for j in 0..n - q {
            t[(q + i, q + j)] = t33[(i, j)].clone();
        }
    }
    let t_inv = invert(&t)
        .map_err(|_| Error::InvalidChoice(format!("transformation for C2 = {c2:?} is singular")))?;
    Ok((t, t_inv, order))
}

/// Nodes reachable from any driver (drivers included) in the network graph.
pub fn driver_downstream(sys: &NetworkSystem) -> Vec<usize> {
    let g = sys.graph(Direction::Forward);
    let mut seen = vec![false; sys.n()];
    let mut queue: VecDeque<usize> = (0..sys.m()).map(|j| sys.driver(j).0).collect();
    for &d in &queue {
        seen[d] = true;
    }
    while let Some(v) = queue.pop_front() {
        for (next, _) in g.successors(v) {
            if !seen[*next] {
                seen[*next] = true;
                queue.push_back(*next);
            }
        }
    }
    (0..sys.n()).filter(|&i| seen[i]).collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Every node set `S` with `|S| = rank(K)` and `rank(K[S, :]) = |S|`, in
/// lexicographic order. Exhaustive; refuses when there are more than `cap`
/// candidate subsets.
pub fn controllable_oracle(k: &Mat, cap: u128) -> Result<Vec<Vec<usize>>> {
    let n = k.nrows();
    let q = rank(k);
    let count = binomial(n, q);
    if count > cap {
        return Err(Error::BudgetExceeded { count, cap });
    }
    Ok((0..n)
        .combinations(q)
        .filter(|s| rank(&k.select_rows(s)) == q)
        .collect())
}

pub fn analyze(sys: &NetworkSystem, limit: Option<usize>) -> Result<ControllabilityResult> {
    let k = build_k(sys);
    let red = reduce_k(&k);
    let n = sys.n();
    // one extra to detect truncation
    let mut sets = enumerate_c2(&red, limit.map(|l| l + 1));
    let truncated = limit.is_some_and(|l| sets.len() > l);
    if let Some(l) = limit {
        sets.truncate(l);
    }
    let downstream_all = driver_downstream(sys);
    let mut choices = Vec::with_capacity(sets.len());
    for c2 in sets {
        let (p, w) = perturbed_map(&red, &c2)?;
        let (t, t_inv, order) = build_t_controllability(&red, &c2)?;
        let mut c: Vec<usize> = red.c1.iter().chain(&c2).copied().collect();
        c.sort_unstable();
        let rest = rest_of(n, &red.c1, &c2);
        let downstream = downstream_all
            .iter()
            .copied()
            .filter(|i| !c.contains(i))
            .collect();
        choices.push(ControllableChoice {
            c2,
            c,
            p,
            rest,
            w,
            order,
            t,
            t_inv,
            downstream,
        });
    }
    if choices.is_empty() && limit != Some(0) {
        return Err(Error::InvariantViolation(
            "R has full column rank but no invertible row block was found".into(),
        ));
    }
    Ok(ControllabilityResult {
        system: sys.fingerprint(),
        k,
        q: red.q,
        h: red.h,
        c1: red.c1,
        basis: red.basis,
        choices,
        truncated,
    })
}

impl ControllableChoice {
    /// The reachable point agreeing with `values` on `C` (given in the order
    /// of `c`), rebuilt through `T`: `x = T [z_q; 0]` with `z_q` read off
    /// `T^-1` applied to the prescribed values.
    pub fn reachable_point(&self, q: usize, values: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(
            values.len(),
            self.c.len(),
            "one value per controllable node"
        );
        let n = self.order.len();
        let mut x_ordered = vec![Scalar::zero(); n];
        for (pos, node) in self.order.iter().enumerate().take(q) {
            let idx = self.c.iter().position(|c| c == node).expect("node in C");
            x_ordered[pos] = values[idx].clone();
        }
        let mut z = self.t_inv.apply(&x_ordered);
        for v in z.iter_mut().skip(q) {
            *v = Scalar::zero();
        }
        let x_perm = self.t.apply(&z);
        let mut x = vec![Scalar::zero(); n];
        for (pos, &node) in self.order.iter().enumerate() {
            x[node] = x_perm[pos].clone();
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{col_space_contains, frac, int};

    #[test]
    fn controllability_matrix_of_chain() {
        let sys = fixtures::chain3();
        let k = build_k(&sys);
        assert_eq!(k, Mat::from_i64(&[[1, 0, 0], [0, 2, 0], [0, 3, 0]]));
        assert_eq!(rank(&k), 2);
    }

    #[test]
    fn controllability_matrix_degenerate_cases() {
        let sys = NetworkSystem::from_parts(Mat::zeros(3, 3), &[(0, int(1))], &[], None).unwrap();
        assert_eq!(rank(&build_k(&sys)), 1);
        let drivers: Vec<(usize, Scalar)> = (0..3).map(|i| (i, int(1))).collect();
        let a = Mat::from_i64(&[[1, 2, 0], [0, 0, 5], [7, 0, 1]]);
        let sys = NetworkSystem::from_parts(a, &drivers, &[], None).unwrap();
        assert_eq!(rank(&build_k(&sys)), 3);
        let sys = NetworkSystem::from_parts(Mat::zeros(2, 2), &[], &[], None).unwrap();
        assert_eq!(build_k(&sys).shape(), (2, 0));
    }

    #[test]
    fn reduction_of_chain() {
        let red = reduce_k(&build_k(&fixtures::chain3()));
        assert_eq!((red.q, red.h), (2, 1));
        assert_eq!(red.c1, vec![0]);
        assert_eq!(r_block(&red), Mat::from_i64(&[[0], [2], [3]]));
    }

    #[test]
    fn reduction_with_full_input() {
        let drivers: Vec<(usize, Scalar)> = (0..3).map(|i| (i, int(2))).collect();
        let sys = NetworkSystem::from_parts(Mat::zeros(3, 3), &drivers, &[], None).unwrap();
        let red = reduce_k(&build_k(&sys));
        assert_eq!((red.q, red.h), (3, 3));
        assert_eq!(red.basis, Mat::identity(3));
        assert_eq!(enumerate_c2(&red, None), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn reduction_with_static_driver() {
        let sys = NetworkSystem::from_parts(Mat::zeros(3, 3), &[(0, int(1))], &[], None).unwrap();
        let red = reduce_k(&build_k(&sys));
        assert_eq!((red.q, red.h, red.c1.clone()), (1, 1, vec![0]));
    }

    #[test]
    fn r_columns_have_two_or_more_nonzeros() {
        let a = Mat::from_i64(&[[0, 0, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0]]);
        let sys = NetworkSystem::from_parts(a, &[(0, int(1))], &[], None).unwrap();
        let red = reduce_k(&build_k(&sys));
        let r = r_block(&red);
        for j in 0..r.ncols() {
            assert!(r.column(j).iter().filter(|v| !v.is_zero()).count() >= 2);
        }
    }

    #[test]
    fn completions_of_chain() {
        let red = reduce_k(&build_k(&fixtures::chain3()));
        assert_eq!(enumerate_c2(&red, None), vec![vec![1], vec![2]]);
        assert_eq!(enumerate_c2(&red, Some(1)), vec![vec![1]]);
    }

    #[test]
    fn zero_row_is_never_a_completion() {
        let red = KReduction {
            q: 2,
            h: 1,
            c1: vec![0],
            basis: Mat::from_i64(&[[1, 0], [0, 1], [0, 0]]),
        };
        assert_eq!(enumerate_c2(&red, None), vec![vec![1]]);
        assert!(matches!(
            perturbed_map(&red, &[2]),
            Err(Error::InvalidChoice(_))
        ));
    }

    #[test]
    fn forced_values_of_chain() {
        let red = reduce_k(&build_k(&fixtures::chain3()));
        let (p, w) = perturbed_map(&red, &[1]).unwrap();
        assert_eq!(p, vec![2]);
        assert_eq!(w, Mat::from_rows(vec![vec![frac(3, 2)]], 1).unwrap());
        let (p, w) = perturbed_map(&red, &[2]).unwrap();
        assert_eq!(p, vec![1]);
        assert_eq!(w, Mat::from_rows(vec![vec![frac(2, 3)]], 1).unwrap());
        assert!(perturbed_map(&red, &[0]).is_err());
        assert!(perturbed_map(&red, &[1, 2]).is_err());
    }

    #[test]
    fn transformations_of_chain() {
        let red = reduce_k(&build_k(&fixtures::chain3()));
        let (t, t_inv, order) = build_t_controllability(&red, &[1]).unwrap();
        assert_eq!(order, vec![0, 1, 2]);
        assert_eq!(t, Mat::from_i64(&[[1, 0, 0], [0, 2, 0], [0, 3, 1]]));
        let t_inv_expect = Mat::from_rows(
            vec![
                vec![int(1), int(0), int(0)],
                vec![int(0), frac(1, 2), int(0)],
                vec![int(0), frac(-3, 2), int(1)],
            ],
            3,
        )
        .unwrap();
        assert_eq!(t_inv, t_inv_expect);

        let (t, t_inv, order) = build_t_controllability(&red, &[2]).unwrap();
        assert_eq!(order, vec![0, 2, 1]);
        assert_eq!(t, Mat::from_i64(&[[1, 0, 0], [0, 3, 0], [0, 2, 1]]));
        assert_eq!(&t * &t_inv, Mat::identity(3));
    }

    #[test]
    fn fully_controllable_has_no_perturbed_nodes() {
        let drivers: Vec<(usize, Scalar)> = (0..3).map(|i| (i, int(1))).collect();
        let sys = NetworkSystem::from_parts(Mat::zeros(3, 3), &drivers, &[], None).unwrap();
        let res = analyze(&sys, None).unwrap();
        assert_eq!(res.choices.len(), 1);
        let ch = &res.choices[0];
        assert!(ch.p.is_empty());
        assert_eq!(ch.w.shape(), (0, 0));
        assert_eq!(ch.t, Mat::identity(3));
        assert_eq!(ch.t_inv, Mat::identity(3));
    }

    #[test]
    fn no_drivers_gives_empty_sets() {
        let res = analyze(&fixtures::eight_node(), None).unwrap();
        assert_eq!((res.q, res.h), (0, 0));
        assert_eq!(res.choices.len(), 1);
        assert!(res.choices[0].c.is_empty() && res.choices[0].p.is_empty());
        assert_eq!(res.choices[0].rest.len(), 8);
    }

    #[test]
    fn oracle_examples() {
        let k = build_k(&fixtures::chain3());
        assert_eq!(
            controllable_oracle(&k, DEFAULT_ORACLE_CAP).unwrap(),
            vec![vec![0, 1], vec![0, 2]]
        );
        let sys = NetworkSystem::from_parts(Mat::zeros(2, 2), &[(0, int(1))], &[], None).unwrap();
        assert_eq!(
            controllable_oracle(&build_k(&sys), DEFAULT_ORACLE_CAP).unwrap(),
            vec![vec![0]]
        );
        let k = Mat::identity(3);
        assert_eq!(controllable_oracle(&k, 10).unwrap(), vec![vec![0, 1, 2]]);
        let k = Mat::from_i64(&[[1], [1], [1], [1]]);
        assert_eq!(
            controllable_oracle(&k, 3),
            Err(Error::BudgetExceeded { count: 4, cap: 3 })
        );
    }

    #[test]
    fn reachable_points_follow_forced_values() {
        let res = analyze(&fixtures::chain3(), None).unwrap();
        for ch in &res.choices {
            let x = ch.reachable_point(res.q, &[int(5), int(-4)]);
            assert!(col_space_contains(&res.k, &x).unwrap());
            let x_c2: Vec<Scalar> = ch.c2.iter().map(|&i| x[i].clone()).collect();
            let forced = ch.w.apply(&x_c2);
            for (row, &node) in ch.rest.iter().enumerate() {
                assert_eq!(x[node], forced[row]);
            }
        }
    }

    #[test]
    fn downstream_of_drivers() {
        let sys = fixtures::chain3();
        assert_eq!(driver_downstream(&sys), vec![0, 1, 2]);
        assert!(driver_downstream(&fixtures::eight_node()).is_empty());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }
}

mod common;

use netdecomp::linalg::{
    complete_to_full_rank, invert, is_canonical, null_space, rank, row_space_contains, rref, Axis,
    EchelonBasis, Mat, Scalar,
};
use netdecomp::Error;
use num::Zero;
use proptest::prelude::*;

proptest! {
    #[test]
    fn rank_is_transpose_invariant(m in common::matrix(6, 6)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        prop_assert_eq!(rank(&m), rref(&m, Axis::Columns).rank());
    }

    #[test]
    fn rref_log_replays_and_is_idempotent(m in common::matrix(5, 6)) {
        let r = rref(&m, Axis::Rows);
        let mut replayed = m.clone();
        r.log.replay(&mut replayed);
        prop_assert_eq!(&replayed, &r.reduced);
        let again = rref(&r.reduced, Axis::Rows);
        prop_assert_eq!(&again.reduced, &r.reduced);
        prop_assert!(r.reduced.entries().iter().all(is_canonical));

        let c = rref(&m, Axis::Columns);
        let mut replayed = m.clone();
        c.log.replay(&mut replayed);
        prop_assert_eq!(replayed, c.reduced);
    }

    #[test]
    fn membership_matches_rank(m in common::matrix(5, 5), coeffs in prop::collection::vec(common::scalar(), 5)) {
        // a combination of rows is always inside; membership iff rank is unchanged
        let mut v = vec![Scalar::zero(); m.ncols()];
        for (i, row) in m.rows_iter().enumerate() {
            for (x, e) in v.iter_mut().zip(row) {
                *x += &coeffs[i] * e;
            }
        }
        prop_assert!(row_space_contains(&m, &v).unwrap());
        let basis = EchelonBasis::from_rows(&m);
        prop_assert_eq!(basis.rank(), rank(&m));
        for j in 0..m.ncols() {
            let e = Mat::versor(m.ncols(), j);
            let grown = m.vstack(&Mat::row_vector(e.clone())).unwrap();
            prop_assert_eq!(basis.contains(&e), rank(&grown) == rank(&m));
        }
    }

    #[test]
    fn inverse_is_exact(m in common::square(5)) {
        let n = m.nrows();
        match invert(&m) {
            Ok(inv) => {
                prop_assert_eq!(&m * &inv, Mat::identity(n));
                prop_assert_eq!(&inv * &m, Mat::identity(n));
            }
            Err(e) => {
                prop_assert_eq!(e, Error::SingularMatrix);
                prop_assert!(rank(&m) < n);
            }
        }
    }

    #[test]
    fn null_space_complements_rank(m in common::matrix(5, 6)) {
        let ns = null_space(&m);
        prop_assert_eq!(ns.ncols(), m.ncols() - rank(&m));
        if ns.ncols() > 0 {
            prop_assert!((&m * &ns).is_zero());
            prop_assert_eq!(rank(&ns), ns.ncols());
        }
    }

    #[test]
    fn completion_reaches_full_rank(m in common::matrix(4, 6)) {
        let r = rref(&m, Axis::Rows);
        let top = r.reduced.select_rows(&(0..r.rank()).collect::<Vec<_>>());
        let extra = complete_to_full_rank(&top, Axis::Rows).unwrap();
        prop_assert_eq!(extra.nrows(), m.ncols() - r.rank());
        for row in extra.rows_iter() {
            prop_assert_eq!(row.iter().filter(|v| !v.is_zero()).count(), 1);
        }
        prop_assert_eq!(rank(&top.vstack(&extra).unwrap()), m.ncols());
    }
}

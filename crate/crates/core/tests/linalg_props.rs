use fihom_core::linalg::Subquotient;
use fihom_core::{Field, Matrix, PrimeField, Rationals};
use proptest::prelude::*;

fn entries(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn matrix<F: Field>(f: &F, rows: &[Vec<i64>]) -> Matrix<F> {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64(f, &refs)
}

fn shapes() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| entries(r, c))
}

fn check_rank_nullity<F: Field>(m: &Matrix<F>) {
    let k = m.kernel_basis();
    assert_eq!(m.rank() + k.cols(), m.cols());
    assert!(m.mul(&k).unwrap().is_zero());
    assert_eq!(k.rank(), k.cols());
}

proptest! {
    #[test]
    fn rank_nullity(rows in shapes()) {
        check_rank_nullity(&matrix(&Rationals, &rows));
        check_rank_nullity(&matrix(&PrimeField::new(5).unwrap(), &rows));
        check_rank_nullity(&matrix(&PrimeField::new(2).unwrap(), &rows));
    }

    #[test]
    fn rref_is_idempotent(rows in shapes()) {
        let m = matrix(&Rationals, &rows);
        let once = m.rref();
        let twice = once.reduced.rref();
        prop_assert_eq!(&twice.reduced, &once.reduced);
        prop_assert_eq!(twice.pivots, once.pivots);
        prop_assert_eq!(once.rank, m.transpose().rank());
    }

    #[test]
    fn canonical_span_detects_equal_spans(rows in shapes(), mix in entries(5, 5)) {
        let f = PrimeField::new(7).unwrap();
        let m = matrix(&f, &rows);
        let c = m.cols();
        let square: Vec<Vec<i64>> = mix.iter().take(c).map(|r| r.iter().take(c).copied().collect()).collect();
        let g = matrix(&f, &square);
        let mixed = m.mul(&g).unwrap();
        if g.rank() == c {
            prop_assert_eq!(mixed.canonical_span(), m.canonical_span());
        } else {
            prop_assert!(mixed.rank() <= m.rank());
        }
    }

    /// The action on a subquotient respects composition.
    #[test]
    fn subquotient_is_functorial(a in entries(4, 4), b in entries(4, 4), v in entries(4, 1)) {
        let f = PrimeField::new(5).unwrap();
        let x = matrix(&f, &a);
        let y = matrix(&f, &b);
        // Build a chain killed ⊂ sub stable under both operators: sub is
        // everything, killed the span generated by v under x and y.
        let mut killed = matrix(&f, &v).column_space_basis();
        loop {
            let grown = killed.hstack(&x.mul(&killed).unwrap()).unwrap().hstack(&y.mul(&killed).unwrap()).unwrap().column_space_basis();
            if grown.cols() == killed.cols() {
                break;
            }
            killed = grown;
        }
        let sq = Subquotient::new(&Matrix::identity(&f, 4), &killed).unwrap();
        let xy = sq.induced(&x.mul(&y).unwrap()).unwrap();
        let composed = sq.induced(&x).unwrap().mul(&sq.induced(&y).unwrap()).unwrap();
        prop_assert_eq!(xy, composed);
        prop_assert_eq!(sq.dim() + killed.cols(), 4);
        let id = sq.induced(&Matrix::identity(&f, 4)).unwrap();
        prop_assert!(id.is_identity());
    }
}

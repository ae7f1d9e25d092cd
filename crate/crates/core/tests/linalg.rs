use proptest::prelude::*;

use zerohecke::{Field, Matrix, PrimeField, Rationals};

fn matrix<F: Field>(f: &F, rows: usize, cols: usize, data: &[i64]) -> Matrix<F> {
    Matrix::from_rows(f, rows, cols, data.iter().take(rows * cols).map(|&x| f.from_i64(x)).collect()).unwrap()
}

fn laws<F: Field>(f: &F, rows: usize, cols: usize, data: &[i64]) {
    let m = matrix(f, rows, cols, data);
    let rank = m.rank();
    assert_eq!(rank + m.kernel().len(), cols);
    assert_eq!(m.transpose().rank(), rank);
    for v in m.kernel() {
        assert!(m.mul_vec(&v).iter().all(|x| f.is_zero(x)));
    }
    assert_eq!(m.image().dim(), rank);
}

fn square_laws<F: Field>(f: &F, n: usize, data: &[i64]) {
    let m = matrix(f, n, n, data);
    let id = Matrix::identity(f, n);
    match m.inverse() {
        Some(inv) => {
            assert!(m.mul(&inv) == id && inv.mul(&m) == id);
            assert!(!f.is_zero(&m.det()));
        }
        None => {
            assert!(m.rank() < n);
            assert!(f.is_zero(&m.det()));
        }
    }
    let (a, b) = m.fitting_split();
    assert_eq!(a.dim() + b.dim(), n);
    assert!(a.is_invariant(std::slice::from_ref(&m)) && b.is_invariant(std::slice::from_ref(&m)));
}

proptest! {
    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, data in prop::collection::vec(-3i64..4, 36)) {
        laws(&Rationals, rows, cols, &data);
        laws(&PrimeField::new(5).unwrap(), rows, cols, &data);
    }

    #[test]
    fn inverses_and_fitting(n in 1usize..6, data in prop::collection::vec(-3i64..4, 36)) {
        square_laws(&Rationals, n, &data);
        square_laws(&PrimeField::new(101).unwrap(), n, &data);
        square_laws(&PrimeField::new(2).unwrap(), n, &data);
    }

    #[test]
    fn prime_field_inverses(p in prop::sample::select(vec![2u64, 3, 5, 101, 65521]), a in 1i64..100_000) {
        let f = PrimeField::new(p).unwrap();
        let x = f.from_i64(a);
        match f.inv(&x) {
            Some(y) => prop_assert!(f.is_one(&f.mul(&x, &y))),
            None => prop_assert!(f.is_zero(&x)),
        }
    }
}

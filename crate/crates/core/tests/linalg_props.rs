mod common;

use ncomplex::linalg::Subspace;
use ncomplex::random::{random_invertible, random_matrix};
use ncomplex::{FieldSpec, Matrix};
use proptest::prelude::*;

fn field(i: usize) -> FieldSpec {
    common::fields()[i % 3]
}

/// A random matrix whose rank is pushed down by multiplying two factors.
fn matrix(seed: u64, f: FieldSpec, rows: usize, cols: usize, inner: usize) -> Matrix {
    let mut rng = common::rng(seed);
    random_matrix(&mut rng, f, rows, inner).mul(&random_matrix(&mut rng, f, inner, cols))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rref_is_idempotent(seed: u64, fi in 0usize..3, r in 0usize..6, c in 0usize..6, k in 0usize..6) {
        let m = matrix(seed, field(fi), r, c, k);
        let once = m.rref();
        let twice = once.reduced.rref();
        prop_assert_eq!(&twice.reduced, &once.reduced);
        prop_assert_eq!(twice.rank, once.rank);
        prop_assert!(once.pivot_cols.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rank_nullity(seed: u64, fi in 0usize..3, r in 0usize..6, c in 0usize..6, k in 0usize..6) {
        let m = matrix(seed, field(fi), r, c, k);
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.dim() + m.rank(), c);
        prop_assert!(m.mul(ker.basis()).is_zero());
        prop_assert_eq!(m.image_basis().dim(), m.rank());
    }

    #[test]
    fn solutions_are_exact(seed: u64, fi in 0usize..3, r in 0usize..6, c in 0usize..6, k in 0usize..6) {
        let f = field(fi);
        let m = matrix(seed, f, r, c, k);
        let mut rng = common::rng(seed ^ 1);
        let x0 = random_matrix(&mut rng, f, c, 2);
        let b = m.mul(&x0);
        let x = m.solve(&b).unwrap();
        prop_assert!(x.is_some());
        prop_assert_eq!(m.mul(&x.unwrap()), b);
        // arbitrary right-hand sides: either exact or provably inconsistent
        let b = random_matrix(&mut rng, f, r, 1);
        match m.solve(&b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul(&x), b),
            None => prop_assert!(Matrix::hstack(f, r, &[&m, &b]).rank() > m.rank()),
        }
    }

    #[test]
    fn left_inverse_iff_full_column_rank(seed: u64, fi in 0usize..3, r in 0usize..6, c in 0usize..6, k in 0usize..6) {
        let f = field(fi);
        let m = matrix(seed, f, r, c, k);
        match m.left_inverse() {
            Some(l) => {
                prop_assert_eq!(m.rank(), c);
                prop_assert_eq!(l.mul(&m), Matrix::identity(f, c));
            }
            None => prop_assert!(m.rank() < c),
        }
    }

    #[test]
    fn canonical_bases_depend_only_on_the_span(seed: u64, fi in 0usize..3, n in 0usize..6, k in 0usize..5) {
        let f = field(fi);
        let mut rng = common::rng(seed);
        let gens = random_matrix(&mut rng, f, n, k);
        // the same span presented by other generators, plus a redundant column
        let mixed = gens.mul(&random_invertible(&mut rng, f, k));
        let extra = gens.mul(&random_matrix(&mut rng, f, k, 1));
        let other = Matrix::hstack(f, n, &[&mixed, &extra]);
        let (a, b) = (Subspace::span(&gens), Subspace::span(&other));
        prop_assert_eq!(a.basis(), b.basis());
        prop_assert_eq!(a.dim(), gens.rank());
    }

    #[test]
    fn quotient_dimension(seed: u64, fi in 0usize..3, n in 0usize..6, k in 0usize..5, j in 0usize..5) {
        let f = field(fi);
        let mut rng = common::rng(seed);
        let big = Subspace::span(&random_matrix(&mut rng, f, n, k));
        let small = Subspace::span(&big.basis().mul(&random_matrix(&mut rng, f, big.dim(), j)));
        let q = Subspace::quotient(&big, &small).unwrap();
        prop_assert_eq!(q.dim, big.dim() - small.dim());
        let together = Matrix::hstack(f, n, &[small.basis(), &q.representatives]);
        prop_assert_eq!(together.rank(), big.dim());
        prop_assert!(big.contains_columns(&q.representatives));
    }
}

mod common;

use ncomplex::complex::{direct_sum, disk, ChainMap};
use ncomplex::homology::{homology, induced_homology_map};
use ncomplex::random::{random_chain_map, random_scalar};
use proptest::prelude::*;

#[test]
fn disks_are_valid() {
    for order in 2..=6 {
        for d in 1..=4 {
            for field in common::fields() {
                let x = disk(order, 3, d, field).unwrap();
                assert!(x.validate().is_empty());
                assert_eq!(x.total_dim(), order * d);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn defining_invariant(seed: u64, i in 0usize..12) {
        let (order, field) = common::params(i);
        let x = common::mixed(&mut common::rng(seed), order, field);
        let (lo, hi) = x.support().unwrap_or((0, 0));
        for n in lo - 2..=hi + 2 {
            prop_assert!(x.composite_differential(n, order).is_zero());
        }
    }

    #[test]
    fn direct_sums_are_valid(seed: u64, i in 0usize..12) {
        let (order, field) = common::params(i);
        let mut rng = common::rng(seed);
        let a = common::complex(&mut rng, order, field, 4, 3);
        let b = common::mixed(&mut rng, order, field);
        let s = direct_sum(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(s.sum.validate().is_empty());
        for n in -6..=6 {
            prop_assert_eq!(s.sum.dim(n), a.dim(n) + b.dim(n));
        }
        for (inj, proj) in s.injections.iter().zip(&s.projections) {
            prop_assert!(ChainMap::compose(proj, inj).unwrap().is_identity());
        }
    }

    #[test]
    fn chain_maps_are_closed_under_algebra(seed: u64, i in 0usize..12) {
        let (order, field) = common::params(i);
        let mut rng = common::rng(seed);
        let x = common::complex(&mut rng, order, field, 4, 2);
        let y = common::complex(&mut rng, order, field, 4, 2);
        let z = common::complex(&mut rng, order, field, 4, 2);
        let f = random_chain_map(&mut rng, &x, &y).unwrap();
        let f2 = random_chain_map(&mut rng, &x, &y).unwrap();
        let g = random_chain_map(&mut rng, &y, &z).unwrap();
        for h in [
            ChainMap::compose(&g, &f).unwrap(),
            f.add(&f2).unwrap(),
            f.scale(&random_scalar(&mut rng, field)),
        ] {
            prop_assert!(h.commutation_failures().is_empty());
        }
    }

    #[test]
    fn homology_vanishes_outside_the_padded_support(seed: u64, i in 0usize..12) {
        let (order, field) = common::params(i);
        let x = common::complex(&mut common::rng(seed), order, field, 5, 3);
        let Some((lo, hi)) = x.support() else { return Ok(()) };
        let n_pad = order as i64;
        for n in (lo - n_pad - 3..lo - n_pad).chain(hi + n_pad + 1..hi + n_pad + 4) {
            for t in 1..order {
                prop_assert_eq!(homology(&x, n, t).unwrap().dim, 0);
            }
        }
    }

    #[test]
    fn induced_maps_are_functorial(seed: u64, i in 0usize..12) {
        let (order, field) = common::params(i);
        let mut rng = common::rng(seed);
        let x = common::complex(&mut rng, order, field, 4, 2);
        let y = common::complex(&mut rng, order, field, 4, 2);
        let z = common::complex(&mut rng, order, field, 4, 2);
        let f = random_chain_map(&mut rng, &x, &y).unwrap();
        let g = random_chain_map(&mut rng, &y, &z).unwrap();
        let gf = ChainMap::compose(&g, &f).unwrap();
        for n in -1..=4 {
            for t in 1..order {
                let lhs = induced_homology_map(&gf, n, t).unwrap();
                let rhs = induced_homology_map(&g, n, t).unwrap().mul(&induced_homology_map(&f, n, t).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
        for n in -1..=4 {
            for t in 1..order {
                prop_assert!(induced_homology_map(&ChainMap::identity(&x), n, t).unwrap().is_identity());
            }
        }
    }
}
